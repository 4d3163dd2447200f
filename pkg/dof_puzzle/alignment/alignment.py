"""Finite-eta interference alignment scheme built from a precoding index matrix.

Every label g gets a precoder U_g whose columns are all power products of the
channels in its interference set H_g applied to a random seed vector Xi_g.
Receiver p succeeds when Lambda_p = [D_p, I_p] has full column rank.
"""
import itertools
import logging
import time
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Literal, Optional, Tuple

import numpy as np

from dof_puzzle.config.config import (
    COEFFICIENT_BITS,
    COEFFICIENT_SCALE_BITS,
    DEFAULT_ETA,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    VERIFY_COLUMN_CAP,
)
from dof_puzzle.errors import InvalidArgumentError, PreconditionError, RefusedError
from dof_puzzle.models import Cell, ChannelSpec, IndexMatrix, ReceiverCheck, VerificationReport
from dof_puzzle.puzzle import validate

from .linalg import exact_rank, float_rank

logger = logging.getLogger(__name__)

Backend = Literal["exact", "float"]
# ("H", p, q) is the channel from Tx q to Rx p; ("S", g, i) is the i-th synthetic padding diagonal of label g
Member = Tuple[str, int, int]
Monomial = Tuple[int, Tuple[Tuple[Member, int], ...]]


def channel(p: int, q: int) -> Member:
    return ("H", p, q)


def _interference_sets(spec: ChannelSpec, G: IndexMatrix) -> Dict[int, Tuple[Cell, ...]]:
    sets: Dict[int, Tuple[Cell, ...]] = {}
    for g in range(1, G.max_label + 1):
        sets[g] = tuple(
            (p, q)
            for p in range(1, spec.K + 1)
            for q in range(1, spec.K + 1)
            if spec.link(p, q) and any(G.entry(r, q) == g for r in range(1, spec.K + 1) if r != p)
        )
    return sets


def interference_sets(spec: ChannelSpec, G: IndexMatrix) -> Dict[int, Tuple[Cell, ...]]:
    """H_g: channels (p, q) that carry label g as interference into Rx p, for g in 1..max label.

    Raises:
        PreconditionError: G breaks a puzzle rule
    """
    violations = validate(G, spec)
    if violations:
        raise PreconditionError("interference sets need a valid precoding index matrix", violations)
    return _interference_sets(spec, G)


def pad_members(sets: Dict[int, Tuple[Cell, ...]]) -> Tuple[Dict[int, Tuple[Member, ...]], int]:
    """Extend every set with synthetic diagonals up to the common size Gamma."""
    gamma = max((len(cells) for cells in sets.values()), default=0)
    members = {}
    for g, cells in sets.items():
        real = [channel(p, q) for p, q in cells]
        synthetic = [("S", g, i) for i in range(1, gamma - len(cells) + 1)]
        members[g] = tuple(real + synthetic)
        if synthetic:
            logger.debug(f"Padded H_{g} with {len(synthetic)} synthetic diagonals")
    return members, gamma


def pad_sets(sets: Dict[int, Tuple[Cell, ...]], T: int, rng: np.random.Generator,
             backend: Backend = "exact") -> Tuple[Dict[int, Tuple[Member, ...]], int, Dict[Member, np.ndarray]]:
    """Pad the sets as pad_members does and draw an i.i.d. diagonal for every synthetic member.

    Returns:
        (padded members, Gamma, synthetic diagonals)
    """
    members, gamma = pad_members(sets)
    diagonals = {
        member: draw_coefficients(rng, T, backend)
        for g in sorted(members)
        for member in members[g]
        if member[0] == "S"
    }
    return members, gamma, diagonals


@dataclass(frozen=True)
class AlignmentPlan:
    """Symbolic layout of the scheme for (spec, G, eta): no numbers drawn."""
    spec: ChannelSpec
    G: IndexMatrix
    eta: int
    sets: Dict[int, Tuple[Cell, ...]]
    members: Dict[int, Tuple[Member, ...]]
    Gamma: int
    row_support: Tuple[int, ...]
    interference_labels: Tuple[Tuple[int, ...], ...]
    p_max: int
    T: int

    @property
    def K(self) -> int:
        return self.spec.K

    @property
    def labels(self) -> List[int]:
        return sorted(self.members)

    def g(self, p: int) -> int:
        return len(self.interference_labels[p - 1])

    def desired_cols(self, p: int) -> int:
        return self.row_support[p - 1] * self.eta ** self.Gamma

    def interference_cols(self, p: int) -> int:
        return self.g(p) * (self.eta + 1) ** self.Gamma

    def total_cols(self, p: int) -> int:
        return self.desired_cols(p) + self.interference_cols(p)

    def desired_cells(self, p: int) -> List[Tuple[int, int]]:
        """(q, label) of the messages Rx p decodes, in column order."""
        return [(q, self.G.entry(p, q)) for q in range(1, self.K + 1) if self.G.entry(p, q) > 0]

    def exponents(self, expanded: bool = False) -> List[Tuple[int, ...]]:
        """Exponent tuples in lexicographic order: [eta]^Gamma, or [eta+1]^Gamma when expanded."""
        top = self.eta + 1 if expanded else self.eta
        return list(itertools.product(range(1, top + 1), repeat=self.Gamma))

    def expanded_index(self, exponents: Tuple[int, ...]) -> int:
        """Position of an exponent tuple in the expanded [eta+1]^Gamma order."""
        index = 0
        for e in exponents:
            index = index * (self.eta + 1) + (e - 1)
        return index


def plan_alignment(spec: ChannelSpec, G: IndexMatrix, eta: int = DEFAULT_ETA) -> AlignmentPlan:
    """Compute H_g, the padding, Gamma, p_max and T.

    p_max maximizes ||G[p,:]||_0 + g^(p); ties go to the receiver with more
    columns at this eta, then to the smallest index, so that T covers it.

    Raises:
        InvalidArgumentError: eta < 1 or a size mismatch
        PreconditionError: a positive label where M is 0
    """
    if eta < 1:
        raise InvalidArgumentError(f"eta must be positive, got {eta}")
    if G.K != spec.K:
        raise InvalidArgumentError(f"G is {G.K}x{G.K} but the channel has K={spec.K}")
    misplaced = [v for v in validate(G, spec) if len(v) == 1]
    if misplaced:
        raise PreconditionError("labels placed where no message exists", misplaced)

    sets = _interference_sets(spec, G)
    members, gamma = pad_members(sets)
    row_support = tuple(G.row_support(p) for p in range(1, spec.K + 1))
    interference_labels = tuple(
        tuple(sorted({
            G.entry(r, q)
            for r in range(1, spec.K + 1) if r != p
            for q in spec.connected(p)
            if G.entry(r, q) > 0
        }))
        for p in range(1, spec.K + 1)
    )

    def columns(p: int) -> int:
        return row_support[p - 1] * eta ** gamma + len(interference_labels[p - 1]) * (eta + 1) ** gamma

    p_max = max(
        range(1, spec.K + 1),
        key=lambda p: (row_support[p - 1] + len(interference_labels[p - 1]), columns(p), -p),
    )
    T = columns(p_max)
    logger.debug(f"Alignment plan: Gamma={gamma}, p_max={p_max}, T={T}")
    return AlignmentPlan(
        spec=spec, G=G, eta=eta, sets=sets, members=members, Gamma=gamma,
        row_support=row_support, interference_labels=interference_labels, p_max=p_max, T=T,
    )


def limit_dof(spec: ChannelSpec, G: IndexMatrix) -> Tuple[Fraction, ...]:
    """Per-receiver DoF as eta grows: ||G[p,:]||_0 / (||G[p_max,:]||_0 + g^(p_max)); sums to score(G)."""
    plan = plan_alignment(spec, G, 1)
    denominator = plan.row_support[plan.p_max - 1] + plan.g(plan.p_max)
    if denominator == 0:
        return tuple(Fraction(0) for _ in range(spec.K))
    return tuple(Fraction(s, denominator) for s in plan.row_support)


def property_one_violations(spec: ChannelSpec, G: IndexMatrix) -> List[Cell]:
    """Cells (p, q) whose own channel lies in H_{G[p,q]}."""
    sets = _interference_sets(spec, G)
    return [(p, q) for p, q in G.positive_cells() if (p, q) in sets.get(G.entry(p, q), ())]


def column_monomials(plan: AlignmentPlan, p: int) -> List[Monomial]:
    """Symbolic column of Lambda_p: (seed label, sorted member exponents)."""
    monomials: List[Monomial] = []
    for q, g in plan.desired_cells(p):
        for alpha in plan.exponents():
            powers = Counter(dict(zip(plan.members[g], alpha)))
            powers[channel(p, q)] += 1
            monomials.append((g, tuple(sorted(powers.items()))))
    for g in plan.interference_labels[p - 1]:
        for beta in plan.exponents(expanded=True):
            monomials.append((g, tuple(sorted(zip(plan.members[g], beta)))))
    return monomials


def exponent_collisions(plan: AlignmentPlan, p: int) -> List[Tuple[int, int]]:
    """0-based column pairs of Lambda_p sharing one monomial."""
    first_seen: Dict[Monomial, int] = {}
    collisions = []
    for index, monomial in enumerate(column_monomials(plan, p)):
        if monomial in first_seen:
            collisions.append((first_seen[monomial], index))
        else:
            first_seen[monomial] = index
    return collisions


# Numeric instance

def draw_coefficients(rng: np.random.Generator, size: int, backend: Backend = "exact") -> np.ndarray:
    """Nonzero i.i.d. coefficients.

    exact: k * 2**-COEFFICIENT_SCALE_BITS with k uniform on +-[1 .. 2**COEFFICIENT_BITS], as Fractions.
    float: magnitude uniform on [0.5, 1.5) with a random sign.
    """
    signs = rng.choice((-1, 1), size=size)
    if backend == "float":
        return rng.uniform(0.5, 1.5, size=size) * signs
    magnitudes = rng.integers(1, 1 << COEFFICIENT_BITS, size=size, endpoint=True)
    scale = 1 << COEFFICIENT_SCALE_BITS
    return np.array([Fraction(int(s) * int(k), scale) for s, k in zip(signs, magnitudes)], dtype=object)


@dataclass(frozen=True)
class AlignmentInstance:
    """One random draw of the scheme: channel, padding and seed vectors of length T."""
    plan: AlignmentPlan
    backend: Backend
    diagonals: Dict[Member, np.ndarray]
    seeds: Dict[int, np.ndarray]

    @property
    def T(self) -> int:
        return self.plan.T

    @property
    def Gamma(self) -> int:
        return self.plan.Gamma

    def empty(self, columns: int = 0) -> np.ndarray:
        return np.zeros((self.T, columns), dtype=object if self.backend == "exact" else float)


def sample_instance(plan: AlignmentPlan, rng: np.random.Generator, backend: Backend = "exact") -> AlignmentInstance:
    """Draw channels row-major, then padding diagonals, then one seed per label."""
    diagonals: Dict[Member, np.ndarray] = {
        channel(p, q): draw_coefficients(rng, plan.T, backend)
        for p in range(1, plan.K + 1)
        for q in plan.spec.connected(p)
    }
    _, _, synthetic = pad_sets(plan.sets, plan.T, rng, backend)
    diagonals.update(synthetic)
    seeds = {g: draw_coefficients(rng, plan.T, backend) for g in plan.labels}
    return AlignmentInstance(plan=plan, backend=backend, diagonals=diagonals, seeds=seeds)


def _stack(inst: AlignmentInstance, columns: List[np.ndarray]) -> np.ndarray:
    if not columns:
        return inst.empty()
    return np.column_stack(columns)


def _power_product(inst: AlignmentInstance, g: int, exponents: Tuple[int, ...]) -> np.ndarray:
    vector = inst.seeds[g].copy()
    for member, e in zip(inst.plan.members[g], exponents):
        vector = vector * inst.diagonals[member] ** e
    return vector


def build_precoders(inst: AlignmentInstance) -> Dict[int, np.ndarray]:
    """U_g, T x eta^Gamma, one column per exponent tuple in lexicographic order."""
    return {
        g: _stack(inst, [_power_product(inst, g, alpha) for alpha in inst.plan.exponents()])
        for g in inst.plan.labels
    }


def build_expanded(inst: AlignmentInstance) -> Dict[int, np.ndarray]:
    """W_g, T x (eta+1)^Gamma, same construction with exponents up to eta + 1."""
    return {
        g: _stack(inst, [_power_product(inst, g, beta) for beta in inst.plan.exponents(expanded=True)])
        for g in inst.plan.labels
    }


def build_receiver_space(inst: AlignmentInstance, p: int, precoders: Optional[Dict[int, np.ndarray]] = None,
                         expanded: Optional[Dict[int, np.ndarray]] = None) -> np.ndarray:
    """Lambda_p = [D_p, I_p]: desired blocks H_{p,q} U_{G[p,q]}, then one W_g per interfering label."""
    if not 1 <= p <= inst.plan.K:
        raise InvalidArgumentError(f"row index {p} is outside [1..{inst.plan.K}]")
    precoders = precoders if precoders is not None else build_precoders(inst)
    expanded = expanded if expanded is not None else build_expanded(inst)
    blocks = [
        inst.diagonals[channel(p, q)][:, None] * precoders[g]
        for q, g in inst.plan.desired_cells(p)
    ]
    blocks += [expanded[g] for g in inst.plan.interference_labels[p - 1]]
    if not blocks:
        return inst.empty()
    return np.hstack(blocks)


def check_containment(inst: AlignmentInstance, precoders: Dict[int, np.ndarray],
                      expanded: Dict[int, np.ndarray]) -> bool:
    """Every column of H U_g, H in H_g, is the W_g column with H's exponent raised by one."""
    plan = inst.plan
    for g in plan.labels:
        for position, member in enumerate(plan.members[g]):
            for column, alpha in enumerate(plan.exponents()):
                shifted = list(alpha)
                shifted[position] += 1
                product = inst.diagonals[member] * precoders[g][:, column]
                target = expanded[g][:, plan.expanded_index(tuple(shifted))]
                if inst.backend == "exact":
                    same = np.array_equal(product, target)
                else:
                    same = np.allclose(product.astype(float), target.astype(float))
                if not same:
                    logger.warning(f"Containment broken for label {g}, member {member}, column {column}")
                    return False
    return True


def verify(spec: ChannelSpec, G: IndexMatrix, eta: int = DEFAULT_ETA, trials: int = DEFAULT_TRIALS,
           seed: int = DEFAULT_SEED, backend: Backend = "exact") -> VerificationReport:
    """Certify the finite-eta scheme: monomials distinct, Property 1, containment and full column rank.

    Each trial draws from its own stream spawned off SeedSequence(seed); a rank
    deficiency is reproducible from SeedSequence(seed, spawn_key=failing_spawn_key).

    Raises:
        RefusedError: T exceeds VERIFY_COLUMN_CAP
        PreconditionError: a positive label where M is 0
    """
    if trials < 1:
        raise InvalidArgumentError(f"trials must be positive, got {trials}")
    if backend not in ("exact", "float"):
        raise InvalidArgumentError(f"unknown backend '{backend}'")
    start = time.perf_counter()
    plan = plan_alignment(spec, G, eta)
    if plan.T > VERIFY_COLUMN_CAP:
        raise RefusedError("receiver matrices too large to verify", plan.T, VERIFY_COLUMN_CAP)

    receivers = range(1, spec.K + 1)
    structural = tuple(p for p in receivers if plan.total_cols(p) > plan.T)
    for p in structural:
        logger.warning(f"Rx {p} needs {plan.total_cols(p)} columns but T={plan.T}")
    violations = tuple(property_one_violations(spec, G))
    injective = all(not exponent_collisions(plan, p) for p in receivers)

    ranks = {p: plan.total_cols(p) for p in receivers if p not in structural}
    containment_ok = True
    failing_receiver: Optional[int] = None
    failing_trial: Optional[int] = None
    failing_spawn_key: Optional[Tuple[int, ...]] = None
    rank_of = exact_rank if backend == "exact" else float_rank

    for trial, child in enumerate(np.random.SeedSequence(seed).spawn(trials), start=1):
        inst = sample_instance(plan, np.random.default_rng(child), backend)
        precoders = build_precoders(inst)
        expanded = build_expanded(inst)
        containment_ok = check_containment(inst, precoders, expanded) and containment_ok
        for p in ranks:
            rank = rank_of(build_receiver_space(inst, p, precoders, expanded))
            if rank < plan.total_cols(p) and failing_receiver is None:
                failing_receiver, failing_trial = p, trial
                failing_spawn_key = tuple(child.spawn_key)
                logger.warning(f"Rx {p} rank {rank} < {plan.total_cols(p)} in trial {trial}")
            ranks[p] = min(ranks[p], rank)
        logger.info(f"Verification trial {trial}/{trials} done (T={plan.T}, Gamma={plan.Gamma})")

    denominator = plan.row_support[plan.p_max - 1] + plan.g(plan.p_max)
    per_receiver = tuple(
        ReceiverCheck(
            p=p,
            desired_cols=plan.desired_cols(p),
            interference_cols=plan.interference_cols(p),
            total_cols=plan.total_cols(p),
            rank=ranks.get(p, 0),
            full_rank=p in ranks and ranks[p] == plan.total_cols(p),
            T=plan.T,
            limit_numerator=plan.row_support[p - 1] if denominator else 0,
            limit_denominator=denominator,
        )
        for p in receivers
    )
    passed = (
        all(r.full_rank for r in per_receiver)
        and containment_ok and injective and not violations and not structural
    )
    report = VerificationReport(
        eta=eta,
        Gamma=plan.Gamma,
        T=plan.T,
        p_max=plan.p_max,
        trials=trials,
        backend=backend,
        seed=seed,
        per_receiver=per_receiver,
        containment_ok=containment_ok,
        exponent_injective=injective,
        property_one_violations=violations,
        structural_failures=structural,
        failing_receiver=failing_receiver,
        failing_trial=failing_trial,
        failing_spawn_key=failing_spawn_key,
        overall="pass" if passed else "fail",
        elapsed=time.perf_counter() - start,
    )
    logger.info(f"Verification {report.overall}: T={plan.T}, Gamma={plan.Gamma}, p_max={plan.p_max}")
    return report
