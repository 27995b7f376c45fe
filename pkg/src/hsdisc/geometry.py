"""Points, halfspaces, colored instances and their discrepancy statistics.

A point is a plain tuple of Fractions.  A halfspace h = (w, xi) is the
closed set {x : <w, x> - xi >= 0}; membership of boundary points is always
counted ("closed halfspaces throughout").  Every classification of a point
against a halfspace goes through side_of, which charges exactly one
sidedness query to the caller's QueryCounter, so counters lower-bound the
classification work of any routine built on top.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    AffinelyDependentError,
    DimensionMismatchError,
    EmptyColorClassError,
    EmptyInstanceError,
    OutOfRangeError,
)
from . import exactmath

Point = tuple[Fraction, ...]

INF = float("inf")


def make_point(coords: Iterable[Fraction | int | str]) -> Point:
    out = []
    for c in coords:
        out.append(exactmath.scalar_from_str(c) if isinstance(c, str) else Fraction(c))
    return tuple(out)


class QueryCounter:
    """Monotone counter of sidedness queries; merging counters adds them."""

    __slots__ = ("count",)

    def __init__(self, count: int = 0):
        self.count = count

    def bump(self) -> None:
        self.count += 1

    def add(self, k: int) -> None:
        if k < 0:
            raise ValueError("query counts only grow")
        self.count += k

    def merge(self, other: "QueryCounter") -> None:
        self.count += other.count

    def __repr__(self) -> str:
        return f"QueryCounter({self.count})"


@dataclass(frozen=True)
class Halfspace:
    """Closed halfspace {x : <w, x> >= xi} in canonical scale.

    The stored pair is rescaled by the positive rational 1/|w_j| where w_j
    is the first nonzero coordinate, so that coordinate becomes +1 or -1.
    Positive rescaling does not change the halfspace; the sign of w_j is
    kept because flipping it would swap the two sides.
    """

    w: tuple[Fraction, ...]
    xi: Fraction

    def __post_init__(self):
        w = tuple(Fraction(c) for c in self.w)
        xi = Fraction(self.xi)
        lead = next((c for c in w if c != 0), None)
        if lead is None:
            raise ValueError("halfspace normal must be nonzero")
        scale = 1 / abs(lead)
        object.__setattr__(self, "w", tuple(c * scale for c in w))
        object.__setattr__(self, "xi", xi * scale)

    @property
    def dim(self) -> int:
        return len(self.w)

    def sort_key(self) -> tuple:
        return (*self.w, self.xi)


@dataclass(frozen=True)
class ColoredInstance:
    """Two finite multisets of d-dimensional points; duplicates count."""

    dim: int
    red: tuple[Point, ...]
    blue: tuple[Point, ...]

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        object.__setattr__(self, "red", tuple(make_point(p) for p in self.red))
        object.__setattr__(self, "blue", tuple(make_point(p) for p in self.blue))
        for p in self.red + self.blue:
            if len(p) != self.dim:
                raise DimensionMismatchError(
                    f"point of length {len(p)} in a dim-{self.dim} instance")

    @property
    def size(self) -> int:
        return len(self.red) + len(self.blue)


def side_of(h: Halfspace, p: Point, qc: QueryCounter) -> int:
    """Sign of <w, p> - xi in {-1, 0, +1}; charges one sidedness query."""
    if len(p) != h.dim:
        raise DimensionMismatchError(f"point dim {len(p)} vs halfspace dim {h.dim}")
    qc.bump()
    val = exactmath.dot(h.w, p) - h.xi
    return (val > 0) - (val < 0)


def _counts(inst: ColoredInstance, h: Halfspace, qc: QueryCounter) -> tuple[int, int]:
    if h.dim != inst.dim:
        raise DimensionMismatchError(f"instance dim {inst.dim} vs halfspace dim {h.dim}")
    in_red = sum(1 for p in inst.red if side_of(h, p, qc) >= 0)
    in_blue = sum(1 for p in inst.blue if side_of(h, p, qc) >= 0)
    return in_red, in_blue


def phi(inst: ColoredInstance, h: Halfspace, qc: QueryCounter | None = None) -> int:
    """Red points inside h minus blue points inside h (with multiplicity)."""
    qc = qc if qc is not None else QueryCounter()
    in_red, in_blue = _counts(inst, h, qc)
    return in_red - in_blue


def psi(inst: ColoredInstance, h: Halfspace, qc: QueryCounter | None = None) -> Fraction:
    """Exact misclassification fraction 1 - |B|/n - phi(h)/n, in [0, 1]."""
    n = inst.size
    if n == 0:
        raise EmptyInstanceError("psi needs a non-empty instance")
    qc = qc if qc is not None else QueryCounter()
    return 1 - Fraction(len(inst.blue), n) - Fraction(phi(inst, h, qc), n)


def _mu(inst: ColoredInstance, h: Halfspace, qc: QueryCounter) -> tuple[Fraction, Fraction]:
    if not inst.red or not inst.blue:
        raise EmptyColorClassError("statistic needs both color classes non-empty")
    in_red, in_blue = _counts(inst, h, qc)
    return Fraction(in_red, len(inst.red)), Fraction(in_blue, len(inst.blue))


def phi_parallel(inst: ColoredInstance, h: Halfspace, qc: QueryCounter | None = None) -> Fraction:
    """Absolute difference of inside fractions |mu_R - mu_B|."""
    qc = qc if qc is not None else QueryCounter()
    mu_r, mu_b = _mu(inst, h, qc)
    return abs(mu_r - mu_b)


def phi_alpha(inst: ColoredInstance, h: Halfspace, alpha: Fraction,
              qc: QueryCounter | None = None, signed: bool = False) -> Fraction:
    """Weighted count alpha*|h n R| + (1-alpha)*|h n B|.

    With signed=True the blue term is subtracted instead, giving the
    discrepancy-style variant; both forms are exposed because either
    weighting is meaningful.
    """
    alpha = Fraction(alpha)
    if not 0 <= alpha <= 1:
        raise OutOfRangeError("alpha must lie in [0, 1]")
    qc = qc if qc is not None else QueryCounter()
    in_red, in_blue = _counts(inst, h, qc)
    blue_term = (1 - alpha) * in_blue
    return alpha * in_red - blue_term if signed else alpha * in_red + blue_term


def phi_poisson(inst: ColoredInstance, h: Halfspace, qc: QueryCounter | None = None,
                bits: int = 64):
    """KL divergence between (mu_R, 1-mu_R) and (mu_B, 1-mu_B).

    Returns a certified enclosure (lo, hi) of dyadic rationals with
    lo <= value <= hi, or the float infinity sentinel when the supports
    are disjoint (some y*log(y/0) term with y > 0).  Logarithms are
    evaluated with `bits` fractional bits; everything else stays exact.
    Conventions: 0*log(0/x) = 0.
    """
    qc = qc if qc is not None else QueryCounter()
    mu_r, mu_b = _mu(inst, h, qc)
    lo = Fraction(0)
    hi = Fraction(0)
    for y, x in ((mu_r, mu_b), (1 - mu_r, 1 - mu_b)):
        if y == 0:
            continue
        if x == 0:
            return INF
        term_lo, term_hi = exactmath.log_enclosure(y / x, bits=bits)
        lo += y * term_lo
        hi += y * term_hi
    # KL divergence is non-negative; clamp the certified lower end at zero.
    return (max(lo, Fraction(0)), max(hi, Fraction(0)))


def hyperplane_through(points: Sequence[Point]) -> Halfspace:
    """Canonical halfspace whose boundary contains the d given points.

    For points whose coordinate matrix is invertible this solves
    X w = (1, ..., 1) and uses offset 1; hyperplanes through the origin
    fall back to a homogeneous kernel vector of the d x (d+1) system.
    Raises AffinelyDependentError when the points do not span a hyperplane.
    """
    if not points:
        raise AffinelyDependentError("need d points")
    d = len(points[0])
    pts = [make_point(p) for p in points]
    if len(pts) != d or any(len(p) != d for p in pts):
        raise DimensionMismatchError("need exactly d points of dimension d")
    diffs = [[pts[i][j] - pts[0][j] for j in range(d)] for i in range(1, d)]
    if exactmath.matrix_rank(diffs) != d - 1:
        raise AffinelyDependentError("points do not span a hyperplane")
    try:
        w = exactmath.solve(pts, [Fraction(1)] * d)
        return Halfspace(tuple(w), Fraction(1))
    except exactmath.SingularMatrixError:
        rows = [list(p) + [Fraction(-1)] for p in pts]
        vec = exactmath.kernel_vector(rows)
        return Halfspace(tuple(vec[:d]), vec[d])
