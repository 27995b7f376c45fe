"""Gadget constructions mapping the base problems to colored instances,
inverse witness-recovery maps, and end-to-end equivalence verifiers.

k-sum gadget (k >= 3, working dimension d = k-1): every input value a_i
yields d+1 points, one on each of d+1 parallel "gadget lines" running
along the first axis:

    line 0:   (-a_i / (2d-3), 0, ..., 0)
    line j:   (a_i / 2,  e_{j+1} pattern)          for j in 1..d-1
    line d:   (-a_i, 2, 2, ..., 2)

Each gadget point splits into a red copy shifted by +gamma along the
first axis and a blue copy shifted by -gamma.  A hyperplane crossing all
d+1 lines inside the tiny red/blue gaps certifies, through the linear
relation its collinear crossings satisfy, a zero sum of k selected values
taken with repetition (every value owns an independent gadget point per
line, so the same input position may be selected on several lines).
gamma must stay below 1/(4d) so the relation rounds to an exact zero sum;
it also keeps gaps of distinct values disjoint.

Affine-degeneracy gadget: each integer point splits into a red copy at
x_i + gamma e_1 and a blue copy at x_i - gamma e_1, with
gamma = 1 / (6 d^(d+2) N^(2d)) for coordinate bound N.  A halfspace of
absolute discrepancy d+1 straddles d+1 pairs, and the straddled source
points are exactly degenerate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .baseproblems import (
    DegeneracyWitness,
    KSumInstance,
    KSumWitness,
    PointSetInstance,
    degeneracy_bruteforce,
    homogeneous_det,
    ksum_bruteforce,
)
from .errors import (
    BoundaryThroughPointError,
    GammaOutOfRangeError,
    HsdiscError,
    NonzeroSumError,
    NoStraddledPairError,
    NotDegenerateError,
    TooFewPointsError,
    UnsupportedKError,
)
from .geometry import ColoredInstance, Halfspace, QueryCounter, phi, side_of
from .solvers import max_halfspace_exact
from . import exactmath


@dataclass(frozen=True)
class KSumReduction:
    source: KSumInstance
    gamma: Fraction
    instance: ColoredInstance

    @property
    def dim(self) -> int:
        return self.source.k - 1

    def pair_positions(self, i: int, j: int) -> tuple[int, int]:
        """Red and blue list positions of the gadget point for value i, line j."""
        pos = i * (self.dim + 1) + j
        return pos, pos

    def line_base(self, j: int) -> tuple[Fraction, ...]:
        """A point of gadget line j with first coordinate zero."""
        d = self.dim
        if j == 0:
            rest = [Fraction(0)] * (d - 1)
        elif j < d:
            rest = [Fraction(1) if t == j - 1 else Fraction(0) for t in range(d - 1)]
        else:
            rest = [Fraction(2)] * (d - 1)
        return (Fraction(0), *rest)

    def alpha(self, i: int, j: int) -> Fraction:
        """First coordinate of the gadget point for value i on line j."""
        a = self.source.values[i]
        d = self.dim
        if j == 0:
            return Fraction(-a, 2 * d - 3)
        if j < d:
            return Fraction(a, 2)
        return Fraction(-a)


@dataclass(frozen=True)
class DegeneracyReduction:
    source: PointSetInstance
    gamma: Fraction
    instance: ColoredInstance

    @property
    def dim(self) -> int:
        return self.source.dim


@dataclass(frozen=True)
class KSumCrossing:
    """Per-line crossing of a halfspace boundary through a red/blue gap."""

    line: int
    index: int
    beta: Fraction
    alpha: Fraction


@dataclass(frozen=True)
class DegeneracyCrossing:
    """Straddled source indices with their in-gap crossing parameters."""

    indices: tuple[int, ...]
    lambdas: tuple[Fraction, ...]


@dataclass(frozen=True)
class Verdict:
    """Outcome of one end-to-end equivalence check."""

    kind: str
    oracle: bool
    reduced: bool
    agree: bool
    threshold: int
    reduced_value: int
    oracle_witness: tuple[int, ...] | None
    witness: tuple[int, ...] | None
    recovery_error: str | None
    queries: int


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------

def reduce_ksum(src: KSumInstance, gamma: Fraction | None = None) -> KSumReduction:
    """Build the colored instance for a k-sum input (2nk points, dim k-1)."""
    k = src.k
    if k < 3:
        raise UnsupportedKError("reduction requires k >= 3")
    d = k - 1
    if gamma is None:
        gamma = Fraction(1, 8 * d)
    gamma = Fraction(gamma)
    if not 0 < gamma < Fraction(1, 4 * d):
        raise GammaOutOfRangeError(f"gamma must lie in (0, 1/{4 * d})")
    red = []
    blue = []
    for a in src.values:
        zs = [(Fraction(-a, 2 * d - 3), *([Fraction(0)] * (d - 1)))]
        for j in range(1, d):
            rest = [Fraction(1) if t == j - 1 else Fraction(0) for t in range(d - 1)]
            zs.append((Fraction(a, 2), *rest))
        zs.append((Fraction(-a), *([Fraction(2)] * (d - 1))))
        for z in zs:
            red.append((z[0] + gamma, *z[1:]))
            blue.append((z[0] - gamma, *z[1:]))
    inst = ColoredInstance(dim=d, red=tuple(red), blue=tuple(blue))
    return KSumReduction(source=src, gamma=gamma, instance=inst)


def reduce_degeneracy(src: PointSetInstance) -> DegeneracyReduction:
    """Split every source point into a +gamma/-gamma pair along axis one."""
    d = src.dim
    if src.n < d + 1:
        raise TooFewPointsError(f"need at least {d + 1} points, got {src.n}")
    n_bound = src.coord_bound
    gamma = Fraction(1, 6 * d ** (d + 2) * n_bound ** (2 * d))
    red = []
    blue = []
    for p in src.points:
        red.append((Fraction(p[0]) + gamma, *map(Fraction, p[1:])))
        blue.append((Fraction(p[0]) - gamma, *map(Fraction, p[1:])))
    inst = ColoredInstance(dim=d, red=tuple(red), blue=tuple(blue))
    return DegeneracyReduction(source=src, gamma=gamma, instance=inst)


# ---------------------------------------------------------------------------
# Witness recovery
# ---------------------------------------------------------------------------

def _strict_straddles(inst: ColoredInstance, pairs, h: Halfspace, qc: QueryCounter):
    """Indices of pairs the boundary strictly separates.

    Raises BoundaryThroughPointError as soon as any listed point lies
    exactly on the boundary; the constructions never force that case, so
    it is surfaced instead of being resolved by a convention.
    """
    out = []
    for key, (rpos, bpos) in pairs:
        sr = side_of(h, inst.red[rpos], qc)
        sb = side_of(h, inst.blue[bpos], qc)
        if sr == 0 or sb == 0:
            raise BoundaryThroughPointError(
                f"boundary contains a reduced point of pair {key}")
        if sr != sb:
            out.append(key)
    return out


def ksum_crossings(red: KSumReduction, h: Halfspace,
                   qc: QueryCounter | None = None) -> list[KSumCrossing]:
    """Match every gadget line's boundary crossing to a straddled pair.

    Ambiguity (several pairs sharing one crossing gap, possible only for
    equal values) is resolved toward the pair whose gap midpoint is
    nearest the crossing, preferring indices not used on earlier lines,
    then the smallest index.
    """
    qc = qc if qc is not None else QueryCounter()
    src = red.source
    d = red.dim
    if h.w[0] == 0:
        raise NoStraddledPairError("boundary is parallel to the gadget lines")
    crossings: list[KSumCrossing] = []
    used: set[int] = set()
    for j in range(d + 1):
        base = red.line_base(j)
        beta = (h.xi - exactmath.dot(h.w, base)) / h.w[0]
        pairs = [(i, red.pair_positions(i, j)) for i in range(src.n)]
        straddled = _strict_straddles(red.instance, pairs, h, qc)
        if not straddled:
            raise NoStraddledPairError(f"no straddled pair on gadget line {j}")
        best = None
        for i in straddled:
            key = (abs(beta - red.alpha(i, j)), i in used, i)
            if best is None or key < best[0]:
                best = (key, i)
        i = best[1]
        crossings.append(KSumCrossing(line=j, index=i, beta=beta, alpha=red.alpha(i, j)))
        used.add(i)
    return crossings


def recover_ksum_witness(red: KSumReduction, h: Halfspace,
                         qc: QueryCounter | None = None) -> KSumWitness:
    """Map a halfspace of absolute discrepancy >= k back to a zero-sum
    selection of k input positions (repetition allowed).

    The recovered values are summed exactly before returning; a nonzero
    sum would mean the construction's guarantee was violated.
    """
    qc = qc if qc is not None else QueryCounter()
    k = red.source.k
    value = phi(red.instance, h, qc)
    if abs(value) < k:
        raise NoStraddledPairError(
            f"halfspace achieves |phi| = {abs(value)} < {k}")
    crossings = ksum_crossings(red, h, qc)
    indices = tuple(sorted(c.index for c in crossings))
    total = sum(red.source.values[i] for i in indices)
    if total != 0:
        raise NonzeroSumError(f"recovered values sum to {total}, expected 0")
    return KSumWitness(indices)


def degeneracy_crossings(red: DegeneracyReduction, h: Halfspace,
                         qc: QueryCounter | None = None) -> DegeneracyCrossing:
    """All strictly straddled source indices with crossing parameters."""
    qc = qc if qc is not None else QueryCounter()
    if h.w[0] == 0:
        raise NoStraddledPairError("boundary is parallel to the shift direction")
    pairs = [(i, (i, i)) for i in range(red.source.n)]
    straddled = _strict_straddles(red.instance, pairs, h, qc)
    lambdas = []
    for i in straddled:
        x = [Fraction(c) for c in red.source.points[i]]
        lam = (h.xi - exactmath.dot(h.w, x)) / (red.gamma * h.w[0])
        assert -1 < lam < 1, "straddled pair must cross inside its gap"
        lambdas.append(lam)
    return DegeneracyCrossing(indices=tuple(straddled), lambdas=tuple(lambdas))


def recover_degeneracy_witness(red: DegeneracyReduction, h: Halfspace,
                               qc: QueryCounter | None = None) -> DegeneracyWitness:
    """Map a halfspace of absolute discrepancy >= d+1 back to d+1 source
    points lying on a common hyperplane (verified exactly)."""
    qc = qc if qc is not None else QueryCounter()
    d = red.dim
    value = phi(red.instance, h, qc)
    if abs(value) < d + 1:
        raise NoStraddledPairError(
            f"halfspace achieves |phi| = {abs(value)} < {d + 1}")
    crossing = degeneracy_crossings(red, h, qc)
    if len(crossing.indices) < d + 1:
        raise NoStraddledPairError(
            f"only {len(crossing.indices)} straddled pairs, need {d + 1}")
    indices = crossing.indices[:d + 1]
    if homogeneous_det([red.source.points[i] for i in indices]) != 0:
        raise NotDegenerateError(f"recovered tuple {indices} is not degenerate")
    return DegeneracyWitness(indices)


# ---------------------------------------------------------------------------
# End-to-end equivalence verifiers
# ---------------------------------------------------------------------------

def verify_equivalence_ksum(src: KSumInstance, gamma: Fraction | None = None, *,
                            lane: str = "auto") -> Verdict:
    """Compare the k-sum oracle against the reduced instance's optimum.

    The oracle runs with repetition allowed: the gadget gives every input
    value an independent point on each line, so the geometric optimum
    certifies a zero sum of k values taken with repetition, and only that
    convention makes the two sides equivalent.
    """
    k = src.k
    oracle_witness = ksum_bruteforce(src, allow_repeats=True)
    reduction = reduce_ksum(src, gamma)
    result = max_halfspace_exact(reduction.instance, abs_mode=True, lane=lane)
    reduced = result.value >= k
    witness = None
    recovery_error = None
    qc = QueryCounter()
    if reduced:
        try:
            witness = recover_ksum_witness(reduction, result.halfspace, qc).indices
        except HsdiscError as exc:
            recovery_error = f"{type(exc).__name__}: {exc}"
    return Verdict(
        kind="ksum",
        oracle=oracle_witness is not None,
        reduced=reduced,
        agree=(oracle_witness is not None) == reduced,
        threshold=k,
        reduced_value=result.value,
        oracle_witness=oracle_witness.indices if oracle_witness else None,
        witness=witness,
        recovery_error=recovery_error,
        queries=result.queries + qc.count,
    )


def verify_equivalence_degeneracy(src: PointSetInstance, *,
                                  lane: str = "auto") -> Verdict:
    """Compare the degeneracy oracle against the reduced instance's optimum."""
    d = src.dim
    oracle_witness = degeneracy_bruteforce(src)
    reduction = reduce_degeneracy(src)
    result = max_halfspace_exact(reduction.instance, abs_mode=True, lane=lane)
    reduced = result.value >= d + 1
    witness = None
    recovery_error = None
    qc = QueryCounter()
    if reduced:
        try:
            witness = recover_degeneracy_witness(reduction, result.halfspace, qc).indices
        except HsdiscError as exc:
            recovery_error = f"{type(exc).__name__}: {exc}"
    return Verdict(
        kind="degeneracy",
        oracle=oracle_witness is not None,
        reduced=reduced,
        agree=(oracle_witness is not None) == reduced,
        threshold=d + 1,
        reduced_value=result.value,
        oracle_witness=oracle_witness.indices if oracle_witness else None,
        witness=witness,
        recovery_error=recovery_error,
        queries=result.queries + qc.count,
    )
