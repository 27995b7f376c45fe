"""Exact integer/rational arithmetic and linear algebra.

Scalars are plain Python ints and fractions.Fraction values: both are
arbitrary precision, and Fraction keeps the canonical form this package
relies on everywhere (positive denominator, fully reduced).  Matrices and
vectors are plain nested sequences; functions return new lists and never
mutate their arguments.

Determinants of integer matrices use fraction-free (Bareiss) elimination,
so every intermediate value is an integer and stays polynomial in size.
Irrational bounds such as d^(d/2) are compared in squared integer form.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .errors import FormatError, OutOfRangeError, SingularMatrixError, ZeroDenominatorError

IntMatrix = Sequence[Sequence[int]]
RatMatrix = Sequence[Sequence[Fraction]]
RatVector = Sequence[Fraction]

_SCALAR_RE = re.compile(r"^(-?\d+)(?:/([1-9]\d*))?$")
_INT_RE = re.compile(r"^-?\d+$")


# ---------------------------------------------------------------------------
# Canonical text encoding
# ---------------------------------------------------------------------------

def scalar_to_str(x: Fraction | int) -> str:
    """Encode a rational as "p" (denominator 1) or "p/q" with q > 0, reduced."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def scalar_from_str(s: str) -> Fraction:
    """Parse the canonical encoding; rejects anything non-canonical.

    Accepted forms: optional leading '-' on the numerator, no '+' signs,
    denominator (if present) positive and coprime to the numerator.
    """
    if not isinstance(s, str):
        raise FormatError(f"scalar must be a string, got {type(s).__name__}")
    m = _SCALAR_RE.match(s)
    if not m:
        raise FormatError(f"not a canonical scalar: {s!r}")
    p = int(m.group(1))
    q = int(m.group(2)) if m.group(2) else 1
    f = Fraction(p, q)
    if (f.numerator, f.denominator) != (p, q):
        raise FormatError(f"scalar not in reduced form: {s!r}")
    return f


def int_from_str(s: str) -> int:
    if not isinstance(s, str) or not _INT_RE.match(s):
        raise FormatError(f"not a canonical integer: {s!r}")
    return int(s)


# ---------------------------------------------------------------------------
# Integer determinants and adjugates
# ---------------------------------------------------------------------------

def det(m: IntMatrix) -> int:
    """Exact determinant of a square integer matrix via Bareiss elimination.

    Fraction-free: every intermediate quantity is an integer dividing a
    minor of m, which keeps growth polynomial instead of exponential.
    """
    d = len(m)
    a = [list(map(int, row)) for row in m]
    for row in a:
        if len(row) != d:
            raise ValueError("matrix is not square")
    if d == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(d - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, d) if a[i][k] != 0), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, d):
            for j in range(k + 1, d):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                q, r = divmod(num, prev)
                assert r == 0, "Bareiss division must be exact"
                a[i][j] = q
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[d - 1][d - 1]


def _minor(m: IntMatrix, i: int, j: int) -> list[list[int]]:
    return [[m[r][c] for c in range(len(m)) if c != j] for r in range(len(m)) if r != i]


def adjugate(m: IntMatrix) -> list[list[int]]:
    """Adjugate (transposed cofactor matrix); satisfies m @ adj(m) == det(m) * I.

    Defined for singular matrices too, and the 1x1 adjugate is [[1]] so the
    identity holds in the base case.
    """
    d = len(m)
    for row in m:
        if len(row) != d:
            raise ValueError("matrix is not square")
    if d == 0:
        return []
    if d == 1:
        return [[1]]
    adj = [[0] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            adj[i][j] = (-1) ** (i + j) * det(_minor(m, j, i))
    return adj


def entry_bound(m: IntMatrix) -> int:
    """Largest absolute entry, floored at 1 (the implicit bound N)."""
    top = max((abs(int(x)) for row in m for x in row), default=0)
    return max(1, top)


def hadamard_check(m: IntMatrix) -> bool:
    """Whether det(m)^2 <= d^d * N^(2d), and det(m)^2 >= 1 when m is invertible.

    The Hadamard bound d^(d/2) N^d is irrational for odd d, so the
    comparison is carried out on squares to stay inside integer arithmetic.
    """
    d = len(m)
    n = entry_bound(m)
    dd = det(m)
    if dd != 0 and dd * dd < 1:
        return False
    return dd * dd <= d**d * n ** (2 * d)


# ---------------------------------------------------------------------------
# Rational elimination: solve, inverse, rank, kernel
# ---------------------------------------------------------------------------

def solve(m: RatMatrix, v: RatVector) -> list[Fraction]:
    """Exact solution x of m @ x = v for invertible m.

    Raises SingularMatrixError when det(m) == 0.
    """
    d = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(v[i])] for i, row in enumerate(m)]
    for row in a:
        if len(row) != d + 1:
            raise ValueError("matrix/vector shapes disagree")
    for col in range(d):
        pivot = next((r for r in range(col, d) if a[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrixError("matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        pv = a[col][col]
        for r in range(d):
            if r == col or a[r][col] == 0:
                continue
            factor = a[r][col] / pv
            for c in range(col, d + 1):
                a[r][c] -= factor * a[col][c]
    return [a[i][d] / a[i][i] for i in range(d)]


def inverse(m: RatMatrix) -> list[list[Fraction]]:
    d = len(m)
    cols = []
    for j in range(d):
        e = [Fraction(1) if i == j else Fraction(0) for i in range(d)]
        cols.append(solve(m, e))
    return [[cols[j][i] for j in range(d)] for i in range(d)]


def mat_vec(m: RatMatrix, v: RatVector) -> list[Fraction]:
    return [sum((Fraction(m[i][j]) * Fraction(v[j]) for j in range(len(v))), Fraction(0))
            for i in range(len(m))]


def dot(u: RatVector, v: RatVector) -> Fraction:
    if len(u) != len(v):
        raise ValueError("vector lengths disagree")
    return sum((Fraction(a) * Fraction(b) for a, b in zip(u, v)), Fraction(0))


def matrix_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank of an arbitrary rational matrix (row count may differ from width)."""
    a = [[Fraction(x) for x in row] for row in rows]
    if not a:
        return 0
    ncols = len(a[0])
    rank = 0
    row = 0
    for col in range(ncols):
        pivot = next((r for r in range(row, len(a)) if a[r][col] != 0), None)
        if pivot is None:
            continue
        a[row], a[pivot] = a[pivot], a[row]
        pv = a[row][col]
        for r in range(len(a)):
            if r != row and a[r][col] != 0:
                factor = a[r][col] / pv
                for c in range(col, ncols):
                    a[r][c] -= factor * a[row][c]
        rank += 1
        row += 1
    return rank


def kernel_vector(rows: Sequence[Sequence[Fraction]]) -> list[Fraction]:
    """One nonzero vector in the null space of the given rational matrix.

    Requires the kernel to be exactly one-dimensional; raises
    SingularMatrixError otherwise (no kernel, or an ambiguous one).
    """
    a = [[Fraction(x) for x in row] for row in rows]
    ncols = len(a[0]) if a else 0
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        pivot = next((r for r in range(row, len(a)) if a[r][col] != 0), None)
        if pivot is None:
            continue
        a[row], a[pivot] = a[pivot], a[row]
        pv = a[row][col]
        for r in range(len(a)):
            if r != row and a[r][col] != 0:
                factor = a[r][col] / pv
                for c in range(col, ncols):
                    a[r][c] -= factor * a[row][c]
        pivots.append(col)
        row += 1
    free = [c for c in range(ncols) if c not in pivots]
    if len(free) != 1:
        raise SingularMatrixError(f"kernel dimension is {len(free)}, expected 1")
    fcol = free[0]
    x = [Fraction(0)] * ncols
    x[fcol] = Fraction(1)
    for r, pcol in enumerate(pivots):
        x[pcol] = -a[r][fcol] / a[r][pcol]
    return x


# ---------------------------------------------------------------------------
# Rank-one update remainder and inverse-coordinate bound
# ---------------------------------------------------------------------------

def sherman_morrison_remainder(m: IntMatrix, u: RatVector, v: RatVector) -> list[list[Fraction]]:
    """Remainder m^-1 - (m + u v^T)^-1 in closed form.

    Returns (m^-1 u v^T m^-1) / (1 + v^T m^-1 u), which equals the direct
    difference of inverses exactly whenever the denominator is nonzero.
    """
    d = len(m)
    if det(m) == 0:
        raise SingularMatrixError("matrix is singular")
    rat_m = [[Fraction(x) for x in row] for row in m]
    minv_u = solve(rat_m, u)
    denom = 1 + dot(v, minv_u)
    if denom == 0:
        raise ZeroDenominatorError("1 + v^T m^-1 u == 0")
    minv = inverse(rat_m)
    vt_minv = [dot(v, [minv[i][j] for i in range(d)]) for j in range(d)]
    return [[minv_u[i] * vt_minv[j] / denom for j in range(d)] for i in range(d)]


def hdet_bound_check(m: IntMatrix, lam: RatVector) -> bool:
    """Whether (det(m) * (m^-1 lam)_i)^2 <= d^(d+1) * N^(2(d-1)) for all i.

    lam must lie in the unit sup-norm ball.  det(m) * m^-1 lam equals
    adjugate(m) @ lam, so the check needs no division.  Squaring avoids the
    irrational factor d^((d+1)/2).
    """
    d = len(m)
    if det(m) == 0:
        raise SingularMatrixError("matrix is singular")
    lam = [Fraction(x) for x in lam]
    if any(abs(x) > 1 for x in lam):
        raise OutOfRangeError("lambda has a coordinate outside [-1, 1]")
    n = entry_bound(m)
    bound = d ** (d + 1) * n ** (2 * (d - 1))
    scaled = mat_vec(adjugate(m), lam)
    return all(x * x <= bound for x in scaled)


# ---------------------------------------------------------------------------
# Certified dyadic logarithm enclosures
# ---------------------------------------------------------------------------

def _atanh_enclosure(t: Fraction, tail_budget: Fraction) -> tuple[Fraction, Fraction]:
    """Enclosure of 2*atanh(t) for |t| < 1/2, tail bounded geometrically."""
    assert abs(t) < Fraction(1, 2)
    t2 = t * t
    term = t
    total = Fraction(0)
    j = 0
    while True:
        total += term / (2 * j + 1)
        term *= t2
        j += 1
        # Remaining series tail (times the leading 2) is below this bound.
        tail = 2 * abs(term) / (1 - t2)
        if tail <= tail_budget:
            break
    lo = 2 * total - tail
    hi = 2 * total + tail
    return lo, hi


def _round_dyadic(lo: Fraction, hi: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    scale = 1 << bits
    lo_d = Fraction((lo * scale).__floor__(), scale)
    hi_d = Fraction(-((-hi * scale).__floor__()), scale)
    return lo_d, hi_d


def log_enclosure(x: Fraction | int, bits: int = 64) -> tuple[Fraction, Fraction]:
    """Certified enclosure [lo, hi] of ln(x) with dyadic endpoints.

    lo <= ln(x) <= hi with both ends multiples of 2^-bits and
    hi - lo <= 2^(2-bits).  Uses the atanh series after range reduction
    x = 2^e * s with s in [2/3, 4/3], all in exact rational arithmetic.
    """
    x = Fraction(x)
    if x <= 0:
        raise OutOfRangeError("log requires a positive argument")
    budget = Fraction(1, 1 << (bits + 2))
    e = 0
    s = x
    while s > Fraction(4, 3):
        s /= 2
        e += 1
    while s < Fraction(2, 3):
        s *= 2
        e -= 1
    t = (s - 1) / (s + 1)
    lo, hi = _atanh_enclosure(t, budget)
    if e != 0:
        ln2_lo, ln2_hi = _atanh_enclosure(Fraction(1, 3), budget / (2 * abs(e)))
        if e > 0:
            lo += e * ln2_lo
            hi += e * ln2_hi
        else:
            lo += e * ln2_hi
            hi += e * ln2_lo
    return _round_dyadic(lo, hi, bits)
