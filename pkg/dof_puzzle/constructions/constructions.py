import csv
import logging
from fractions import Fraction
from typing import Callable, Iterable, List, NamedTuple, Optional, TextIO

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from dof_puzzle.errors import DomainError, InvalidArgumentError
from dof_puzzle.models import ChannelSpec, IndexMatrix, RowScore, ScoreValue
from dof_puzzle.topology import mod1, symmetric_spec

logger = logging.getLogger(__name__)

CSV_FIELDS = ['K', 'm', 'corollary_num', 'corollary_den', 'classic_num', 'classic_den']


class SymmetricFamily(BaseModel):
    """The cyclic (K, m) family: every Rx hears, and gets a message from, m transmitters."""
    model_config = ConfigDict(frozen=True)

    K: int = Field(ge=1)
    m: int = Field(ge=1)

    @model_validator(mode="after")
    def _check_m(self) -> "SymmetricFamily":
        if self.m > self.K:
            raise ValueError(f"m={self.m} exceeds K={self.K}")
        return self

    @classmethod
    def of(cls, K: int, m: int) -> "SymmetricFamily":
        try:
            return cls(K=K, m=m)
        except ValidationError as e:
            raise InvalidArgumentError(f"invalid family (K={K}, m={m}): {e.errors()[0]['msg']}")

    @property
    def spec(self) -> ChannelSpec:
        return symmetric_spec(self.K, self.m)

    @property
    def full_rows(self) -> int:
        """Rows 1..floor(K/m)*m take the plain mod1 labeling."""
        return (self.K // self.m) * self.m


def corollary_G(fam: SymmetricFamily) -> IndexMatrix:
    """Label the first floor(K/m)*m rows with mod1(p, m); fill the leftover rows with 1..m-1 and a zero diagonal."""
    K, m = fam.K, fam.m
    rows = [[0] * K for _ in range(K)]
    for p in range(1, K + 1):
        # support of row p is q = p-m+1, ..., p (mod1 K)
        window = [mod1(p - m + 1 + i, K) for i in range(m)]
        if p <= fam.full_rows:
            for q in window:
                rows[p - 1][q - 1] = mod1(p, m)
        else:
            label = 1
            for q in window:
                if q == p:
                    continue
                rows[p - 1][q - 1] = label
                label += 1
    return IndexMatrix.from_rows(rows)


def classic_labeling(spec: ChannelSpec) -> IndexMatrix:
    """One precoder per destination: G[p,q] = p wherever M[p,q] = 1."""
    return IndexMatrix.from_rows(
        [[p if spec.M[p - 1][q] else 0 for q in range(spec.K)] for p in range(1, spec.K + 1)]
    )


def classic_G(fam: SymmetricFamily) -> IndexMatrix:
    return classic_labeling(fam.spec)


def classic_interference_count(fam: SymmetricFamily) -> int:
    return min(fam.K - 1, 2 * fam.m - 2)


def corollary_score(fam: SymmetricFamily) -> ScoreValue:
    """(K*m - K mod m) / (2m - 1), with the row breakdown of corollary_G."""
    per_row = tuple(
        RowScore(row_support=fam.m, interference_count=fam.m - 1)
        if p <= fam.full_rows
        else RowScore(row_support=fam.m - 1, interference_count=fam.m)
        for p in range(1, fam.K + 1)
    )
    return ScoreValue(
        numerator=fam.K * fam.m - fam.K % fam.m,
        denominator=2 * fam.m - 1,
        per_row=per_row,
    )


def classic_score(fam: SymmetricFamily) -> ScoreValue:
    """K*m / (m + min(K-1, 2m-2))."""
    g = classic_interference_count(fam)
    per_row = tuple(RowScore(row_support=fam.m, interference_count=g) for _ in range(fam.K))
    return ScoreValue(numerator=fam.K * fam.m, denominator=fam.m + g, per_row=per_row)


def x_channel_bound(K: int) -> Fraction:
    """K^2 / (2K - 1), the m = K case."""
    if K < 1:
        raise InvalidArgumentError(f"K must be positive, got {K}")
    return Fraction(K * K, 2 * K - 1)


def partial_x_bound(K: int) -> Fraction:
    """(K(K-1) - 1) / (2K - 3), the m = K - 1 case.

    At K = 2 the family degenerates to m = 1, where every user is alone and
    the score is K, so the closed form only holds from K = 3.
    """
    if K < 3:
        raise InvalidArgumentError(f"K must be at least 3, got {K}")
    return Fraction(K * (K - 1) - 1, 2 * K - 3)


class DominanceRow(NamedTuple):
    K: int
    m: int
    corollary: Fraction
    classic: Fraction

    @property
    def delta(self) -> Fraction:
        return self.corollary - self.classic

    def as_csv_row(self) -> dict:
        return {
            'K': self.K,
            'm': self.m,
            'corollary_num': self.corollary.numerator,
            'corollary_den': self.corollary.denominator,
            'classic_num': self.classic.numerator,
            'classic_den': self.classic.denominator,
        }


def dominance_check(
    K_range: Iterable[int],
    m_rule: Optional[Callable[[int], Iterable[int]]] = None,
) -> List[DominanceRow]:
    """Compare the corollary and classic scores over a grid of (K, m).

    Args:
        K_range: user counts to sweep
        m_rule: maps K to the m values to test; all of 1..K by default

    Raises:
        DomainError: the corollary score falls below the classic one
    """
    rows = []
    for K in K_range:
        ms = m_rule(K) if m_rule else range(1, K + 1)
        for m in ms:
            fam = SymmetricFamily.of(K, m)
            row = DominanceRow(K, m, corollary_score(fam).value, classic_score(fam).value)
            if row.delta < 0:
                raise DomainError(f"corollary score {row.corollary} is below classic {row.classic} at K={K}, m={m}")
            rows.append(row)
    logger.info(f"Dominance holds on {len(rows)} (K, m) pairs")
    return rows


def write_dominance_csv(rows: Iterable[DominanceRow], stream: TextIO) -> None:
    writer = csv.DictWriter(stream, CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row.as_csv_row())
