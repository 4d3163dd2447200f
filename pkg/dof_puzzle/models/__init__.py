from .models import (
    Cell,
    ChannelSpec,
    IndexMatrix,
    Matrix,
    ReceiverCheck,
    RowScore,
    ScoreValue,
    SolveConfig,
    SolveMode,
    SolveReport,
    VerificationReport,
    format_fraction,
)

__all__ = [
    'Cell', 'ChannelSpec', 'IndexMatrix', 'Matrix', 'ReceiverCheck', 'RowScore',
    'ScoreValue', 'SolveConfig', 'SolveMode', 'SolveReport', 'VerificationReport',
    'format_fraction',
]
