from fractions import Fraction
from typing import Dict, Iterator, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from dof_puzzle.config.config import (
    BRUTE_FORCE_MAX_CELLS,
    DEFAULT_SEED,
    HEURISTIC_MAX_ITERATIONS,
    HEURISTIC_RESTARTS,
)

Matrix = Tuple[Tuple[int, ...], ...]
Cell = Tuple[int, int]
SolveMode = Literal["exact", "heuristic", "brute-force"]


def _check_square(name: str, matrix: Matrix, K: int) -> None:
    if len(matrix) != K:
        raise ValueError(f"{name} has {len(matrix)} rows, expected {K}")
    for p, row in enumerate(matrix, start=1):
        if len(row) != K:
            raise ValueError(f"{name} row {p} has {len(row)} entries, expected {K}")


def format_fraction(value: Fraction) -> str:
    """Render a rational as 'num/den' (always with a denominator)."""
    return f"{value.numerator}/{value.denominator}"


class ChannelSpec(BaseModel):
    """A K-user (M, N)-channel.

    M[p][q] = 1 means Tx q sends a message to Rx p; N[p][q] = 1 means the
    signal of Tx q reaches Rx p. Matrices are stored 0-based, but every
    accessor below takes the 1-based (p, q) used in reports.
    """
    model_config = ConfigDict(frozen=True)

    K: int = Field(ge=1)
    M: Matrix
    N: Matrix

    @model_validator(mode="after")
    def _check_matrices(self) -> "ChannelSpec":
        for name, matrix in (("M", self.M), ("N", self.N)):
            _check_square(name, matrix, self.K)
            for p, row in enumerate(matrix, start=1):
                for q, value in enumerate(row, start=1):
                    if value not in (0, 1):
                        raise ValueError(f"{name}[{p},{q}] = {value} is not binary")
        return self

    def message(self, p: int, q: int) -> bool:
        return self.M[p - 1][q - 1] == 1

    def link(self, p: int, q: int) -> bool:
        return self.N[p - 1][q - 1] == 1

    def support(self) -> List[Cell]:
        """All (p, q) with M[p,q] = 1, row-major."""
        return [(p, q) for p in range(1, self.K + 1) for q in range(1, self.K + 1) if self.message(p, q)]

    @property
    def support_size(self) -> int:
        return sum(sum(row) for row in self.M)

    def connected(self, p: int) -> List[int]:
        """Transmitters heard by receiver p."""
        return [q for q in range(1, self.K + 1) if self.link(p, q)]

    def dead_links(self) -> List[Cell]:
        """Messages sent over a link that does not exist (M=1, N=0)."""
        return [(p, q) for (p, q) in self.support() if not self.link(p, q)]


class IndexMatrix(BaseModel):
    """A K x K precoding index matrix G of nonnegative integer labels."""
    model_config = ConfigDict(frozen=True)

    K: int = Field(ge=1)
    G: Matrix

    @model_validator(mode="after")
    def _check_entries(self) -> "IndexMatrix":
        _check_square("G", self.G, self.K)
        for p, row in enumerate(self.G, start=1):
            for q, value in enumerate(row, start=1):
                if value < 0:
                    raise ValueError(f"G[{p},{q}] = {value} is negative")
        return self

    @classmethod
    def from_rows(cls, rows) -> "IndexMatrix":
        rows = tuple(tuple(int(v) for v in row) for row in rows)
        return cls(K=len(rows), G=rows)

    @classmethod
    def zeros(cls, K: int) -> "IndexMatrix":
        return cls(K=K, G=tuple((0,) * K for _ in range(K)))

    def entry(self, p: int, q: int) -> int:
        return self.G[p - 1][q - 1]

    def row_support(self, p: int) -> int:
        return sum(1 for value in self.G[p - 1] if value > 0)

    @property
    def nnz(self) -> int:
        return sum(1 for row in self.G for value in row if value > 0)

    @property
    def max_label(self) -> int:
        return max((value for row in self.G for value in row), default=0)

    def positive_cells(self) -> Iterator[Cell]:
        for p, row in enumerate(self.G, start=1):
            for q, value in enumerate(row, start=1):
                if value > 0:
                    yield p, q

    def as_lists(self) -> List[List[int]]:
        return [list(row) for row in self.G]


class RowScore(BaseModel):
    model_config = ConfigDict(frozen=True)

    row_support: int = Field(ge=0)
    interference_count: int = Field(ge=0)

    @property
    def total(self) -> int:
        return self.row_support + self.interference_count


class ScoreValue(BaseModel):
    """Puzzle score S = numerator / denominator, kept unreduced.

    numerator is ||G||_0 and denominator is max_p(||G[p,:]||_0 + g^(p)).
    The all-zero matrix scores 0/0, which is read as 0.
    """
    model_config = ConfigDict(frozen=True)

    numerator: int = Field(ge=0)
    denominator: int = Field(ge=0)
    per_row: Tuple[RowScore, ...] = ()

    @model_validator(mode="after")
    def _check_consistency(self) -> "ScoreValue":
        if (self.numerator == 0) != (self.denominator == 0):
            raise ValueError("numerator and denominator must be zero together")
        if self.per_row:
            if self.numerator != sum(r.row_support for r in self.per_row):
                raise ValueError("numerator differs from the summed row supports")
            if self.denominator != max(r.total for r in self.per_row):
                raise ValueError("denominator differs from the largest row total")
        return self

    @property
    def value(self) -> Fraction:
        if self.denominator == 0:
            return Fraction(0)
        return Fraction(self.numerator, self.denominator)

    def __str__(self) -> str:
        return format_fraction(self.value)


class SolveConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    mode: SolveMode = "exact"
    max_label: Optional[int] = Field(default=None, ge=1)  # None means ||M||_0
    time_budget: Optional[float] = Field(default=None, gt=0)
    seed: int = Field(default=DEFAULT_SEED, ge=0)
    parallelism: int = Field(default=1, ge=1)
    max_cells: int = Field(default=BRUTE_FORCE_MAX_CELLS, ge=1)
    restarts: int = Field(default=HEURISTIC_RESTARTS, ge=0)
    max_iterations: int = Field(default=HEURISTIC_MAX_ITERATIONS, ge=1)


class SolveReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    mode: SolveMode
    best_G: IndexMatrix
    best_score: ScoreValue
    optimal: bool
    nodes_explored: int = Field(ge=0)
    elapsed: float = Field(ge=0)

    def to_document(self, include_timing: bool = False) -> Dict:
        document = {
            "mode": self.mode,
            "score": str(self.best_score),
            "score_raw": f"{self.best_score.numerator}/{self.best_score.denominator}",
            "optimal": self.optimal,
            "nodes_explored": self.nodes_explored,
            "G": self.best_G.as_lists(),
        }
        if include_timing:
            document["elapsed"] = round(self.elapsed, 6)
        return document


class ReceiverCheck(BaseModel):
    """Outcome of the rank test at one receiver, aggregated over trials."""
    model_config = ConfigDict(frozen=True)

    p: int = Field(ge=1)
    desired_cols: int = Field(ge=0)
    interference_cols: int = Field(ge=0)
    total_cols: int = Field(ge=0)
    rank: int = Field(ge=0)  # smallest rank seen over all trials
    full_rank: bool
    T: int = Field(ge=0)
    limit_numerator: int = Field(ge=0)
    limit_denominator: int = Field(ge=0)

    @property
    def dof_ratio(self) -> Fraction:
        if self.T == 0:
            return Fraction(0)
        return Fraction(self.desired_cols, self.T)

    @property
    def limit_ratio(self) -> Fraction:
        if self.limit_denominator == 0:
            return Fraction(0)
        return Fraction(self.limit_numerator, self.limit_denominator)


class VerificationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    eta: int = Field(ge=1)
    Gamma: int = Field(ge=0)
    T: int = Field(ge=0)
    p_max: int = Field(ge=1)
    trials: int = Field(ge=0)
    backend: Literal["exact", "float"]
    seed: int = Field(ge=0)
    per_receiver: Tuple[ReceiverCheck, ...]
    containment_ok: bool
    exponent_injective: bool
    property_one_violations: Tuple[Cell, ...] = ()
    structural_failures: Tuple[int, ...] = ()
    failing_receiver: Optional[int] = None
    failing_trial: Optional[int] = None
    failing_spawn_key: Optional[Tuple[int, ...]] = None
    overall: Literal["pass", "fail"]
    elapsed: float = Field(default=0.0, ge=0)

    @model_validator(mode="after")
    def _check_overall(self) -> "VerificationReport":
        passed = (
            all(r.full_rank for r in self.per_receiver)
            and self.containment_ok
            and self.exponent_injective
            and not self.property_one_violations
            and not self.structural_failures
        )
        if passed != (self.overall == "pass"):
            raise ValueError(f"overall={self.overall} disagrees with the individual checks")
        return self

    @property
    def sum_dof_ratio(self) -> Fraction:
        return sum((r.dof_ratio for r in self.per_receiver), Fraction(0))

    @property
    def sum_limit_ratio(self) -> Fraction:
        return sum((r.limit_ratio for r in self.per_receiver), Fraction(0))

    def to_document(self, include_timing: bool = False) -> Dict:
        document = {
            "overall": self.overall,
            "eta": self.eta,
            "Gamma": self.Gamma,
            "T": self.T,
            "p_max": self.p_max,
            "trials": self.trials,
            "backend": self.backend,
            "seed": self.seed,
            "containment_ok": self.containment_ok,
            "exponent_injective": self.exponent_injective,
            "property_one_violations": [list(cell) for cell in self.property_one_violations],
            "structural_failures": list(self.structural_failures),
            "failing_receiver": self.failing_receiver,
            "failing_trial": self.failing_trial,
            "failing_spawn_key": list(self.failing_spawn_key) if self.failing_spawn_key is not None else None,
            "per_receiver": [
                {
                    "p": r.p,
                    "desired_cols": r.desired_cols,
                    "interference_cols": r.interference_cols,
                    "total_cols": r.total_cols,
                    "rank": r.rank,
                    "full_rank": r.full_rank,
                    "dof_ratio": format_fraction(r.dof_ratio),
                    "limit_ratio": format_fraction(r.limit_ratio),
                }
                for r in self.per_receiver
            ],
        }
        if include_timing:
            document["elapsed"] = round(self.elapsed, 6)
        return document
