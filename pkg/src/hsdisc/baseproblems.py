"""The two base decision problems used as ground-truth oracles.

k-sum: do k of the given integers add up to zero?  Two index conventions
are supported.  The default requires k pairwise distinct positions (values
may still repeat if they appear multiple times in the input).  With
allow_repeats=True a position may be used more than once; the reduction
verifier relies on that convention because the gadget construction gives
every input value an independent copy on each gadget line.

Affine degeneracy: do d+1 of the given integer points lie on a common
affine hyperplane?  Membership is decided exactly through the homogeneous
(d+1) x (d+1) determinant.
"""

from __future__ import annotations

import bisect
import itertools
from dataclasses import dataclass

from .errors import TooFewPointsError, TooFewValuesError
from . import exactmath


@dataclass(frozen=True)
class KSumInstance:
    values: tuple[int, ...]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if self.k < 2:
            raise ValueError("k must be at least 2")

    @property
    def n(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class KSumWitness:
    """Index tuple (sorted, non-decreasing) whose values sum to zero."""

    indices: tuple[int, ...]


@dataclass(frozen=True)
class PointSetInstance:
    dim: int
    points: tuple[tuple[int, ...], ...]
    coord_bound: int | None = None

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        pts = tuple(tuple(int(c) for c in p) for p in self.points)
        object.__setattr__(self, "points", pts)
        for p in pts:
            if len(p) != self.dim:
                raise ValueError("point dimension mismatch")
        derived = max(1, max((abs(c) for p in pts for c in p), default=0))
        bound = derived if self.coord_bound is None else int(self.coord_bound)
        if bound < derived:
            raise ValueError(f"coord_bound {bound} below largest coordinate {derived}")
        object.__setattr__(self, "coord_bound", bound)

    @property
    def n(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class DegeneracyWitness:
    """d+1 distinct positions whose points share an affine hyperplane."""

    indices: tuple[int, ...]


def check_ksum_witness(inst: KSumInstance, indices, allow_repeats: bool = False) -> bool:
    idx = tuple(indices)
    if len(idx) != inst.k or not all(0 <= i < inst.n for i in idx):
        return False
    if not allow_repeats and len(set(idx)) != inst.k:
        return False
    return sum(inst.values[i] for i in idx) == 0


def homogeneous_det(points) -> int:
    """Determinant of the rows [p_i | 1]; zero iff the points are affinely
    dependent, i.e. lie on a common hyperplane."""
    return exactmath.det([list(p) + [1] for p in points])


def check_degeneracy_witness(inst: PointSetInstance, indices) -> bool:
    idx = tuple(indices)
    if len(idx) != inst.dim + 1 or len(set(idx)) != len(idx):
        return False
    if not all(0 <= i < inst.n for i in idx):
        return False
    return homogeneous_det([inst.points[i] for i in idx]) == 0


def _index_tuples(n: int, k: int, allow_repeats: bool):
    if allow_repeats:
        return itertools.combinations_with_replacement(range(n), k)
    return itertools.combinations(range(n), k)


def ksum_bruteforce(inst: KSumInstance, allow_repeats: bool = False) -> KSumWitness | None:
    """Exhaustive scan over all index k-tuples; lexicographically smallest hit."""
    if inst.n < inst.k:
        raise TooFewValuesError(f"need at least {inst.k} values, got {inst.n}")
    for idx in _index_tuples(inst.n, inst.k, allow_repeats):
        if sum(inst.values[i] for i in idx) == 0:
            return KSumWitness(idx)
    return None


def ksum_mitm(inst: KSumInstance, allow_repeats: bool = False) -> KSumWitness | None:
    """Meet-in-the-middle search: tabulate sums of floor(k/2)-tuples, sort,
    then join every ceil(k/2)-tuple against the negated table.

    Decision always matches ksum_bruteforce; the witness may differ.  With
    distinct indices the join scans a sum bucket for an index-disjoint
    partner, which can degrade on inputs with many repeated sums.
    """
    if inst.n < inst.k:
        raise TooFewValuesError(f"need at least {inst.k} values, got {inst.n}")
    k_small = inst.k // 2
    k_big = inst.k - k_small
    table: list[tuple[int, tuple[int, ...]]] = sorted(
        (sum(inst.values[i] for i in idx), idx)
        for idx in _index_tuples(inst.n, k_small, allow_repeats)
    )
    sums = [t[0] for t in table]
    best: tuple[int, ...] | None = None
    for idx in _index_tuples(inst.n, k_big, allow_repeats):
        target = -sum(inst.values[i] for i in idx)
        pos = bisect.bisect_left(sums, target)
        while pos < len(table) and sums[pos] == target:
            other = table[pos][1]
            if allow_repeats or not set(idx) & set(other):
                combined = tuple(sorted(idx + other))
                if best is None or combined < best:
                    best = combined
                break
            pos += 1
    return KSumWitness(best) if best is not None else None


def degeneracy_bruteforce(inst: PointSetInstance) -> DegeneracyWitness | None:
    """Exhaustive scan over (d+1)-tuples; exact determinant membership test."""
    need = inst.dim + 1
    if inst.n < need:
        raise TooFewPointsError(f"need at least {need} points, got {inst.n}")
    for idx in itertools.combinations(range(inst.n), need):
        if homogeneous_det([inst.points[i] for i in idx]) == 0:
            return DegeneracyWitness(idx)
    return None
