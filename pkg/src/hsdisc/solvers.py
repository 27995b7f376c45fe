"""Maximum halfspace-discrepancy solvers and oracles.

The exact solver enumerates contact hyperplanes recursively: every
optimal closed halfspace can be moved (without losing discrepancy) until
its boundary is spanned by affinely independent input points, or until it
contains every point or none.  For each spanned hyperplane H and each
orientation, the points strictly on the chosen side contribute their
weight, and the points exactly on H form a lower-dimensional sub-instance
solved recursively; the winning boundary pattern is then realized by an
explicit rational tilt, so the returned halfspace classifies every input
point strictly and reproduces the optimal value exactly.

Instances are rescaled to integer coordinates up front (a positive
uniform scaling never changes discrepancies).  Candidate evaluation then
runs on one of two exact integer lanes: a vectorized numpy int64 lane
used when a conservative overflow bound allows it, and a pure-Python
big-integer lane that works at any size and dimension.  Both lanes
enumerate identical candidates in identical order and charge identical
sidedness-query counts.

Independent oracles for cross-checking: a one-dimensional sort-and-sweep
solver, and a subset-realizability oracle that tests every point subset
for halfspace-consistency by Fourier-Motzkin elimination.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import OutOfRangeError, TooLargeError, WrongDimensionError
from .geometry import ColoredInstance, Halfspace, Point, QueryCounter, phi
from .rng import SplitMix64
from . import exactmath

_INT64_SAFE = 1 << 62
_CHUNK_CELLS = 6_000_000  # target int64 cells per evaluation chunk


@dataclass(frozen=True)
class SolveResult:
    """An optimal (or approximate) halfspace with its discrepancy value.

    value is phi at the halfspace for the coloring the solver selected;
    when abs_mode picked the swapped coloring (swapped=True), phi of the
    original coloring at the halfspace equals -value.  candidates counts
    evaluated candidate halfspace positions, n the instance size.
    """

    halfspace: Halfspace
    value: int
    queries: int
    abs_mode: bool
    candidates: int = 0
    n: int = 0
    swapped: bool = False


@dataclass(frozen=True)
class ApproxParams:
    """Sampling parameters for the approximate solver.

    The per-class sample size is ceil(c * (d + ln(1/delta)) / epsilon^2),
    capped at the class size; c defaults to 4.  ln(1/delta) is taken from
    the upper end of a certified enclosure so the size is deterministic
    across platforms.
    """

    epsilon: Fraction
    delta: Fraction
    seed: int
    sample_constant: Fraction = Fraction(4)

    def __post_init__(self):
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        object.__setattr__(self, "delta", Fraction(self.delta))
        object.__setattr__(self, "sample_constant", Fraction(self.sample_constant))
        if not 0 < self.epsilon < 1:
            raise OutOfRangeError("epsilon must lie in (0, 1)")
        if not 0 < self.delta < 1:
            raise OutOfRangeError("delta must lie in (0, 1)")
        if self.sample_constant <= 0:
            raise OutOfRangeError("sample_constant must be positive")

    def sample_size(self, dim: int) -> int:
        _, ln_hi = exactmath.log_enclosure(1 / self.delta, bits=64)
        m = self.sample_constant * (dim + ln_hi) / (self.epsilon * self.epsilon)
        return max(1, math.ceil(m))


# ---------------------------------------------------------------------------
# Instance preparation: uniform integer rescaling and location dedup
# ---------------------------------------------------------------------------

def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _integerize(points: list[Point]) -> tuple[int, list[tuple[int, ...]]]:
    """Scale all points by the lcm of their coordinate denominators.

    Uniform positive scaling is an affine map, so discrepancies and the
    contact structure are unchanged; returns (scale, integer points).
    """
    scale = 1
    for p in points:
        for c in p:
            scale = _lcm(scale, c.denominator)
    locs = [tuple(int(c * scale) for c in p) for p in points]
    return scale, locs


def _dedup_weighted(locs, weights):
    """Combine coincident locations; drop locations with zero net weight."""
    acc: dict[tuple[int, ...], int] = {}
    for loc, w in zip(locs, weights):
        acc[loc] = acc.get(loc, 0) + w
    kept = sorted((loc, w) for loc, w in acc.items() if w != 0)
    return [loc for loc, _ in kept], [w for _, w in kept]


def _canon_row(u: tuple[int, ...], c: int) -> tuple[int, ...]:
    """Canonical integer encoding of the hyperplane <u, x> = c.

    Divides by the gcd and orients so the first nonzero normal coordinate
    is positive; both halfspace orientations are evaluated from the one
    canonical row.
    """
    row = list(u) + [c]
    g = 0
    for v in row:
        g = math.gcd(g, abs(v))
    if g > 1:
        row = [v // g for v in row]
    lead = next(v for v in u if v != 0)
    if lead < 0:
        row = [-v for v in row]
    return tuple(row)


def _gen_cross(diffs: list[tuple[int, ...]]) -> tuple[int, ...]:
    """Integer normal of the span of d-1 difference vectors in dimension d
    (cofactor expansion); the zero vector signals a degenerate subset."""
    d = len(diffs[0])
    return tuple((-1) ** j * exactmath.det([[row[c] for c in range(d) if c != j]
                                            for row in diffs])
                 for j in range(d))


# ---------------------------------------------------------------------------
# Candidate rows
# ---------------------------------------------------------------------------

def _candidate_rows_scalar(locs, dim) -> list[tuple[int, ...]]:
    rows = set()
    for subset in itertools.combinations(locs, dim):
        if dim == 1:
            u: tuple[int, ...] = (1,)
            c = subset[0][0]
        else:
            p0 = subset[0]
            diffs = [tuple(q[j] - p0[j] for j in range(dim)) for q in subset[1:]]
            u = _gen_cross(diffs)
            if all(v == 0 for v in u):
                continue
            c = sum(a * b for a, b in zip(u, p0))
        rows.add(_canon_row(u, c))
    return sorted(rows)


def _candidate_rows_vector(locs, dim) -> np.ndarray:
    x = np.array(locs, dtype=np.int64)
    m = len(locs)
    if dim == 1:
        rows = np.column_stack([np.ones(m, dtype=np.int64), x[:, 0]])
    elif dim == 2:
        i, j = np.triu_indices(m, 1)
        p, q = x[i], x[j]
        u = np.column_stack([q[:, 1] - p[:, 1], p[:, 0] - q[:, 0]])
        c = np.einsum("ij,ij->i", u, p)
        rows = np.column_stack([u, c])
    else:
        combos = np.array(list(itertools.combinations(range(m), 3)), dtype=np.int64)
        p = x[combos[:, 0]]
        u = np.cross(x[combos[:, 1]] - p, x[combos[:, 2]] - p)
        keep = np.any(u != 0, axis=1)
        u, p = u[keep], p[keep]
        c = np.einsum("ij,ij->i", u, p)
        rows = np.column_stack([u, c])
    if rows.size == 0:
        return rows.reshape(0, dim + 1)
    g = np.gcd.reduce(np.abs(rows), axis=1)
    g[g == 0] = 1
    rows = rows // g[:, None]
    lead_idx = (rows[:, :dim] != 0).argmax(axis=1)
    lead = np.take_along_axis(rows, lead_idx[:, None], axis=1)[:, 0]
    rows = np.where((lead < 0)[:, None], -rows, rows)
    return np.unique(rows, axis=0)


def _vector_lane_safe(locs, weights, dim) -> bool:
    if dim not in (2, 3):
        return False
    maxc = max((abs(c) for loc in locs for c in loc), default=0)
    wmax = max((abs(w) for w in weights), default=0)
    ubound = 2 * maxc if dim == 2 else 8 * maxc * maxc
    ebound = 2 * dim * max(1, ubound) * max(1, maxc)
    return ebound < _INT64_SAFE and len(locs) * max(1, wmax) < _INT64_SAFE


# ---------------------------------------------------------------------------
# The recursive exact core
# ---------------------------------------------------------------------------

@dataclass
class _CoreOut:
    value: int
    swapped: bool
    halfspace: tuple[tuple[Fraction, ...], Fraction] | None
    candidates: int


def _desc_key(desc) -> tuple:
    """Total order on candidate descriptors used to break value ties.

    Realizing every tied candidate just to compare canonical forms blows
    up on the highly degenerate instances the reductions produce, so ties
    are broken on this order-independent descriptor key and only the one
    winner is realized.
    """
    if desc[0] == "all":
        return (0, desc[1])
    if desc[0] == "none":
        return (1, desc[1])
    row, sigma, swapped = desc
    return (2, row, 0 if sigma == 1 else 1, 1 if swapped else 0)


class _Considerer:
    """Tracks the best value and the tie-break-minimal descriptor for it."""

    def __init__(self, realize: bool):
        self.realize = realize
        self.best: int | None = None
        self.desc = None
        self._key = None

    def add(self, value: int, desc=None) -> None:
        if self.best is None or value > self.best:
            self.best = value
            if self.realize and desc is not None:
                self.desc = desc
                self._key = _desc_key(desc)
            else:
                self.desc = self._key = None
        elif self.realize and value == self.best and desc is not None:
            key = _desc_key(desc)
            if self._key is None or key < self._key:
                self.desc, self._key = desc, key


def _affine_basis(locs) -> tuple[tuple[int, ...], list[tuple[int, ...]]]:
    """Anchor point plus a maximal independent set of difference vectors."""
    p0 = locs[0]
    basis: list[tuple[int, ...]] = []
    rank = 0
    for q in locs[1:]:
        diff = tuple(q[j] - p0[j] for j in range(len(p0)))
        cand = basis + [diff]
        if exactmath.matrix_rank(cand) > rank:
            basis = cand
            rank += 1
            if rank == len(p0):
                break
    return p0, basis


class _Frame:
    """Exact coordinates within the affine span of an anchor and basis."""

    def __init__(self, p0: tuple[int, ...], basis: list[tuple[int, ...]]):
        self.p0 = p0
        self.basis = basis  # m difference vectors of length d
        self.m = len(basis)
        rows_all = [[Fraction(b[i]) for b in basis] for i in range(len(p0))]
        # Greedily pick m coordinate rows forming an invertible square system.
        chosen: list[int] = []
        square: list[list[Fraction]] = []
        for i, row in enumerate(rows_all):
            if exactmath.matrix_rank(square + [row]) > len(square):
                chosen.append(i)
                square.append(row)
                if len(square) == self.m:
                    break
        self.rows = chosen
        self.square = square

    def coords(self, q) -> tuple[Fraction, ...]:
        rhs = [Fraction(q[i] - self.p0[i]) for i in self.rows]
        return tuple(exactmath.solve(self.square, rhs))

    def lift(self, v: list[Fraction], c: Fraction) -> tuple[list[Fraction], Fraction]:
        """Ambient functional agreeing with <v, t(x)> - c on the span."""
        gram = [[exactmath.dot(a, b) for b in self.basis] for a in self.basis]
        y = exactmath.solve(gram, v)
        d = len(self.p0)
        u = [sum(Fraction(self.basis[k][i]) * y[k] for k in range(self.m))
             for i in range(d)]
        return u, c + exactmath.dot(u, self.p0)


def _scale_to_int(points: list[tuple[Fraction, ...]]) -> tuple[int, list[tuple[int, ...]]]:
    scale = 1
    for t in points:
        for c in t:
            scale = _lcm(scale, c.denominator)
    return scale, [tuple(int(c * scale) for c in t) for t in points]


def _core(locs, weights, dim, qc: QueryCounter, *, want_abs: bool, realize: bool,
          lane: str = "auto", threads: int = 1) -> _CoreOut:
    """Maximize the weighted closed-halfspace sum over integer locations.

    locs are distinct integer tuples with nonzero integer weights.  The
    returned halfspace (when realize=True) classifies every location
    strictly; downstream witness recovery relies on that.
    """
    if lane not in ("auto", "vector", "scalar"):
        raise ValueError(f"unknown lane {lane!r}")
    n = len(locs)
    total = sum(weights)
    first = [loc[0] for loc in locs]
    lo1 = min(first, default=0) - 1
    hi1 = max(first, default=0) + 1
    colorings = [False, True] if want_abs else [False]

    cons = _Considerer(realize)
    cons.add(total, ("all", False))
    cons.add(0, ("none", False))
    if want_abs:
        cons.add(-total, ("all", True))
    candidates = 2

    def realize_all() -> tuple[tuple[Fraction, ...], Fraction]:
        return tuple(Fraction(1 if i == 0 else 0) for i in range(dim)), Fraction(lo1)

    def realize_none() -> tuple[tuple[Fraction, ...], Fraction]:
        return tuple(Fraction(1 if i == 0 else 0) for i in range(dim)), Fraction(hi1)

    # With at most one distinct location the only patterns are all or none.
    if n <= 1:
        return _finish(cons, candidates, realize_all, realize_none, None, realize)

    # Inputs spanning a lower-dimensional flat are solved inside the flat.
    p0, basis = _affine_basis(locs)
    hull_dim = len(basis)
    if hull_dim < dim:
        frame = _Frame(p0, basis)
        scale, sub_locs = _scale_to_int([frame.coords(q) for q in locs])
        sub = _core(sub_locs, weights, hull_dim, qc, want_abs=want_abs,
                    realize=realize, lane="scalar")
        halfspace = None
        if realize:
            v, c = sub.halfspace
            u, c_amb = frame.lift([x * scale for x in v], c)
            halfspace = (tuple(u), c_amb)
        return _CoreOut(sub.value, sub.swapped, halfspace, candidates + sub.candidates)

    def sub_best_value(on_idx, wts, local_qc) -> int:
        # Affinely independent boundary sets realize every subset pattern.
        if len(on_idx) == dim or dim == 1:
            return sum(w for w in wts if w > 0)
        sub = _core([locs[i] for i in on_idx], wts, dim - 1, local_qc,
                    want_abs=False, realize=False, lane="scalar")
        return sub.value

    use_vector = lane == "vector" or (lane == "auto" and _vector_lane_safe(locs, weights, dim))

    if use_vector:
        rows_arr = _candidate_rows_vector(locs, dim)
        nrows = len(rows_arr)
        candidates += 2 * nrows
        x = np.array(locs, dtype=np.int64)
        w = np.array(weights, dtype=np.int64)
        # Columns: weight, |weight|, 1 -- one mask matmul yields the on-side
        # weight sum, its positive/negative parts, and the on-count.
        w3 = np.column_stack([w, np.abs(w), np.ones(n, dtype=np.int64)])
        chunk = max(1, _CHUNK_CELLS // max(1, n))
        for start in range(0, nrows, chunk):
            sub_rows = rows_arr[start:start + chunk]
            e = sub_rows[:, :dim] @ x.T - sub_rows[:, dim:]
            qc.add(len(sub_rows) * n)
            s_diff = np.sign(e) @ w  # s_plus - s_minus
            eq = e == 0
            on3 = eq.astype(np.int64) @ w3
            on_w = on3[:, 0]
            on_pos = (on3[:, 1] + on_w) // 2
            on_neg = (on3[:, 1] - on_w) // 2
            oncnt = on3[:, 2]
            s_sum = total - on_w  # s_plus + s_minus
            s_plus = (s_sum + s_diff) // 2
            s_minus = (s_sum - s_diff) // 2
            vals = {(1, False): s_plus + on_pos, (-1, False): s_minus + on_pos}
            if want_abs:
                vals[(1, True)] = -s_plus + on_neg
                vals[(-1, True)] = -s_minus + on_neg
            for r in np.nonzero(oncnt > dim)[0]:
                on_idx = np.nonzero(eq[r])[0].tolist()
                for swapped in colorings:
                    wts = [-weights[i] if swapped else weights[i] for i in on_idx]
                    sv = sub_best_value(on_idx, wts, qc)
                    sp = int(s_plus[r])
                    sm = int(s_minus[r])
                    vals[(1, swapped)][r] = (-sp if swapped else sp) + sv
                    vals[(-1, swapped)][r] = (-sm if swapped else sm) + sv
            for sigma in (1, -1):
                for swapped in colorings:
                    arr = vals[(sigma, swapped)]
                    top = int(arr.max())
                    if not realize:
                        cons.add(top)
                        continue
                    first = int(np.argmax(arr == top))
                    row = tuple(int(v) for v in rows_arr[start + first])
                    cons.add(top, (row, sigma, swapped))
    else:
        rows = _candidate_rows_scalar(locs, dim)
        candidates += 2 * len(rows)
        qc.add(len(rows) * n)

        def eval_rows(row_slice):
            local_qc = QueryCounter()
            out = []
            for row in row_slice:
                u, c = row[:dim], row[dim]
                s_plus = s_minus = 0
                on_idx: list[int] = []
                for i, loc in enumerate(locs):
                    v = sum(a * b for a, b in zip(u, loc)) - c
                    if v > 0:
                        s_plus += weights[i]
                    elif v < 0:
                        s_minus += weights[i]
                    else:
                        on_idx.append(i)
                entries = []
                for swapped in colorings:
                    wts = [-weights[i] if swapped else weights[i] for i in on_idx]
                    sv = sub_best_value(on_idx, wts, local_qc)
                    sp = -s_plus if swapped else s_plus
                    sm = -s_minus if swapped else s_minus
                    entries.append((sp + sv, sm + sv, swapped))
                out.append((row, entries))
            return out, local_qc.count

        if threads > 1 and rows:
            step = (len(rows) + threads - 1) // threads
            slices = [rows[i:i + step] for i in range(0, len(rows), step)]
            with ThreadPoolExecutor(max_workers=threads) as pool:
                parts = list(pool.map(eval_rows, slices))
        else:
            parts = [eval_rows(rows)]
        for results, count in parts:
            qc.add(count)
            for row, entries in results:
                for v_plus, v_minus, swapped in entries:
                    cons.add(v_plus, (row, 1, swapped))
                    cons.add(v_minus, (row, -1, swapped))

    def realize_row(row, sigma, swapped) -> tuple[tuple[Fraction, ...], Fraction]:
        u, c = row[:dim], row[dim]
        evals = [sum(a * b for a, b in zip(u, loc)) - c for loc in locs]
        on_idx = [i for i, v in enumerate(evals) if v == 0]
        wts = [-weights[i] if swapped else weights[i] for i in on_idx]
        base_u = [Fraction(sigma * a) for a in u]
        base_c = Fraction(sigma * c)
        if dim == 1:
            tilt_u: list[Fraction] = [Fraction(0)]
            tilt_c = Fraction(-1) if wts[0] > 0 else Fraction(1)
        elif len(on_idx) == dim:
            # Affinely independent boundary points: interpolate +-1 labels
            # by an affine function of the in-boundary frame coordinates.
            on_locs = [locs[i] for i in on_idx]
            frame = _Frame(*_affine_basis(on_locs))
            scale, sub_locs = _scale_to_int([frame.coords(q) for q in on_locs])
            labels = [Fraction(1 if wv > 0 else -1) for wv in wts]
            mat = [[Fraction(c) for c in t] + [Fraction(1)] for t in sub_locs]
            sol = exactmath.solve(mat, labels)
            tilt_u, tilt_c = frame.lift([x * scale for x in sol[:dim - 1]],
                                        -sol[dim - 1])
        else:
            on_locs = [locs[i] for i in on_idx]
            frame = _Frame(*_affine_basis(on_locs))
            scale, sub_locs = _scale_to_int([frame.coords(q) for q in on_locs])
            sub = _core(sub_locs, wts, dim - 1, qc, want_abs=False, realize=True,
                        lane="scalar")
            v, c_sub = sub.halfspace
            tilt_u, tilt_c = frame.lift([xv * scale for xv in v], c_sub)
        margin = min((abs(v) for v in evals if v != 0), default=None)
        span = max((abs(exactmath.dot(tilt_u, loc) - tilt_c) for loc in locs),
                   default=Fraction(0))
        tau = Fraction(1) if margin is None else Fraction(margin) / (2 * (1 + span))
        w_out = tuple(base_u[i] + tau * tilt_u[i] for i in range(dim))
        return w_out, base_c + tau * tilt_c

    return _finish(cons, candidates, realize_all, realize_none, realize_row, realize)


def _finish(cons: _Considerer, candidates, realize_all, realize_none, realize_row,
            realize: bool) -> _CoreOut:
    assert cons.best is not None
    if not realize:
        return _CoreOut(cons.best, False, None, candidates)
    desc = cons.desc
    if desc[0] == "all":
        w, xi = realize_all()
        swapped = desc[1]
    elif desc[0] == "none":
        w, xi = realize_none()
        swapped = desc[1]
    else:
        row, sigma, swapped = desc
        w, xi = realize_row(row, sigma, swapped)
    return _CoreOut(cons.best, swapped, (w, xi), candidates)


# ---------------------------------------------------------------------------
# Public solvers
# ---------------------------------------------------------------------------

def _prepare(inst: ColoredInstance):
    points = list(inst.red) + list(inst.blue)
    weights = [1] * len(inst.red) + [-1] * len(inst.blue)
    scale, locs = _integerize(points)
    locs, wts = _dedup_weighted(locs, weights)
    return scale, locs, wts


def _unscale(halfspace, scale: int) -> Halfspace:
    w, xi = halfspace
    return Halfspace(w, Fraction(xi, scale))


def max_halfspace_exact(inst: ColoredInstance, abs_mode: bool = False, *,
                        lane: str = "auto", threads: int = 1) -> SolveResult:
    """Exact optimum of phi over all closed halfspaces.

    With abs_mode the maximum over both colorings (max |phi|) is returned.
    lane selects the integer evaluation lane ("auto", "vector", "scalar");
    all lanes are exact and produce identical results.  The returned value
    is re-verified against the instance through the instrumented predicate.
    """
    qc = QueryCounter()
    scale, locs, wts = _prepare(inst)
    out = _core(locs, wts, inst.dim, qc, want_abs=abs_mode, realize=True,
                lane=lane, threads=threads)
    h = _unscale(out.halfspace, scale)
    check = phi(inst, h, qc)
    expect = -out.value if out.swapped else out.value
    if check != expect:
        raise AssertionError(f"solver verification failed: phi={check}, expected {expect}")
    return SolveResult(halfspace=h, value=out.value, queries=qc.count,
                       abs_mode=abs_mode, candidates=out.candidates,
                       n=inst.size, swapped=out.swapped)


def max_halfspace_1d(inst: ColoredInstance, abs_mode: bool = False) -> SolveResult:
    """Sort-and-sweep optimum over threshold halfspaces x >= t and x <= t.

    Independent of the recursive solver: thresholds walk the sorted value
    line, suffix and prefix weight sums give every achievable pattern, and
    the winner is re-evaluated against the instance through the
    instrumented predicate (the sweep's query cost).
    """
    if inst.dim != 1:
        raise WrongDimensionError("max_halfspace_1d requires dim == 1")
    qc = QueryCounter()
    acc: dict[Fraction, int] = {}
    for p in inst.red:
        acc[p[0]] = acc.get(p[0], 0) + 1
    for p in inst.blue:
        acc[p[0]] = acc.get(p[0], 0) - 1
    vals = sorted(v for v, wv in acc.items() if wv != 0)
    wts = [acc[v] for v in vals]
    m = len(vals)

    cands: list[tuple[int, Halfspace, bool]] = []

    def add(value: int, w1: int, t: Fraction, swapped: bool) -> None:
        cands.append((value, Halfspace((Fraction(w1),), t if w1 > 0 else -t), swapped))

    for swapped in ([False, True] if abs_mode else [False]):
        sgn = -1 if swapped else 1
        suffix = [0] * (m + 1)
        for i in range(m - 1, -1, -1):
            suffix[i] = suffix[i + 1] + sgn * wts[i]
        # x >= t: everything, then each proper suffix, then the empty side.
        add(suffix[0], 1, (vals[0] - 1) if m else Fraction(-1), swapped)
        for i in range(1, m):
            add(suffix[i], 1, (vals[i - 1] + vals[i]) / 2, swapped)
        add(0, 1, (vals[-1] + 1) if m else Fraction(1), swapped)
        # x <= t: proper prefixes (everything and empty are covered above).
        prefix = 0
        for i in range(m - 1):
            prefix += sgn * wts[i]
            add(prefix, -1, (vals[i] + vals[i + 1]) / 2, swapped)

    best = None  # (value, halfspace, swapped)
    for value, hs, swapped in cands:
        if best is None or value > best[0] or \
                (value == best[0] and hs.sort_key() < best[1].sort_key()):
            best = (value, hs, swapped)
    value, hs, swapped = best
    check = phi(inst, hs, qc)
    if check != (-value if swapped else value):
        raise AssertionError("sweep verification failed")
    return SolveResult(halfspace=hs, value=value, queries=qc.count,
                       abs_mode=abs_mode, candidates=len(cands), n=inst.size,
                       swapped=swapped)


# ---------------------------------------------------------------------------
# Subset-realizability oracle (Fourier-Motzkin feasibility)
# ---------------------------------------------------------------------------

def _normalize_rows(rows):
    """Integerize, gcd-reduce, and keep only the tightest row per normal.

    Rows are (coeffs, rhs, history) with history the set of original
    constraint indices the row was combined from.
    """
    tight: dict[tuple[int, ...], tuple[Fraction, frozenset]] = {}
    for coeffs, rhs, hist in rows:
        scale = 1
        for c in coeffs:
            scale = _lcm(scale, Fraction(c).denominator)
        ic = [int(Fraction(c) * scale) for c in coeffs]
        ir = Fraction(rhs) * scale
        g = 0
        for v in ic:
            g = math.gcd(g, abs(v))
        if g > 1:
            ic = [v // g for v in ic]
            ir = ir / g
        key = tuple(ic)
        if key not in tight or (ir, len(hist)) < (tight[key][0], len(tight[key][1])):
            tight[key] = (ir, hist)
    return [(list(k), v, h) for k, (v, h) in sorted(tight.items())]


def _fm_strict_feasible(rows, nvars: int) -> list[Fraction] | None:
    """Feasibility of {A x <= b, x_last > 0} by Fourier-Motzkin elimination.

    Eliminates variables 0 .. nvars-2 in order, decides the last variable
    directly, then back-substitutes an exact rational witness.  Derived
    rows carry the index set of original constraints they combine; a row
    combining more than k+1 originals after k eliminations is redundant
    (Imbert's acceleration) and is dropped to curb the level growth.
    """
    rows = _normalize_rows([(c, b, frozenset([i])) for i, (c, b) in enumerate(rows)])
    levels = []
    for var in range(nvars - 1):
        levels.append(rows)
        pos = [r for r in rows if r[0][var] > 0]
        neg = [r for r in rows if r[0][var] < 0]
        new = [r for r in rows if r[0][var] == 0]
        cap = var + 2
        for cp, bp, hp in pos:
            for cn, bn, hn in neg:
                hist = hp | hn
                if len(hist) > cap:
                    continue
                a, b = cp[var], -cn[var]
                new.append(([b * cp[j] + a * cn[j] for j in range(nvars)],
                            b * bp + a * bn, hist))
        rows = _normalize_rows(new)
    lo, hi = None, None
    for coeffs, rhs, _ in rows:
        a = coeffs[nvars - 1]
        if a == 0:
            if rhs < 0:
                return None
        elif a > 0:
            bound = rhs / a
            hi = bound if hi is None else min(hi, bound)
        else:
            bound = rhs / a
            lo = bound if lo is None else max(lo, bound)
    if hi is not None and (hi <= 0 or (lo is not None and lo > hi)):
        return None
    x = [Fraction(0)] * nvars
    if hi is not None:
        x[nvars - 1] = hi
    else:
        x[nvars - 1] = max(lo, Fraction(0)) + 1 if lo is not None else Fraction(1)
    for var in range(nvars - 2, -1, -1):
        lo_v, hi_v = None, None
        for coeffs, rhs, _ in levels[var]:
            a = coeffs[var]
            rest = rhs - sum(coeffs[j] * x[j] for j in range(var + 1, nvars))
            if a == 0:
                assert rest >= 0, "eliminated system must stay satisfied"
            elif a > 0:
                bound = rest / a
                hi_v = bound if hi_v is None else min(hi_v, bound)
            else:
                bound = rest / a
                lo_v = bound if lo_v is None else max(lo_v, bound)
        if lo_v is not None and hi_v is not None:
            x[var] = (lo_v + hi_v) / 2
        elif hi_v is not None:
            x[var] = hi_v - 1
        elif lo_v is not None:
            x[var] = lo_v + 1
    return x


def realizable_subset_oracle(inst: ColoredInstance, abs_mode: bool = False) -> SolveResult:
    """Brute-force optimum by testing every point subset for realizability.

    A subset T is realizable when some (w, xi, s) with s > 0 satisfies
    <w, p> - xi >= 0 on T and <w, p> - xi <= -s off T; the test runs exact
    Fourier-Motzkin elimination.  Guarded to small instances because the
    subset count is exponential.
    """
    if inst.size > 12 or inst.dim > 4:
        raise TooLargeError("oracle limited to at most 12 points in dimension <= 4")
    qc = QueryCounter()
    d = inst.dim
    scale, locs, wts = _prepare(inst)
    m = len(locs)
    nvars = d + 2  # w_1..w_d, xi, s
    best_value, best_w = None, None
    for mask in range(1 << m):
        rows = []
        for i in range(m):
            if mask >> i & 1:
                rows.append(([-c for c in locs[i]] + [1, 0], Fraction(0)))
            else:
                rows.append(([c for c in locs[i]] + [-1, 1], Fraction(0)))
        witness = _fm_strict_feasible(rows, nvars)
        if witness is None:
            continue
        if all(c == 0 for c in witness[:d]):
            # Degenerate all-space/empty solution; realize with a proper
            # normal shifted past the extreme first coordinate.
            lo1 = min((loc[0] for loc in locs), default=0) - 1
            hi1 = max((loc[0] for loc in locs), default=0) + 1
            witness = ([Fraction(1)] + [Fraction(0)] * (d - 1) +
                       [Fraction(lo1 if witness[d] <= 0 else hi1), Fraction(1)])
        raw = sum(wts[i] for i in range(m) if mask >> i & 1)
        value = abs(raw) if abs_mode else raw
        if best_value is None or value > best_value:
            best_value = value
            best_w = (witness, raw)
    witness, raw = best_w
    hs = Halfspace(tuple(witness[:d]), Fraction(witness[d], scale))
    swapped = abs_mode and raw < 0
    check = phi(inst, hs, qc)
    if check != (-best_value if swapped else best_value):
        raise AssertionError("subset oracle verification failed")
    return SolveResult(halfspace=hs, value=best_value, queries=qc.count,
                       abs_mode=abs_mode, candidates=1 << m, n=inst.size,
                       swapped=swapped)


# ---------------------------------------------------------------------------
# Sampling-based approximate solver
# ---------------------------------------------------------------------------

def max_halfspace_approx(inst: ColoredInstance, params: ApproxParams,
                         abs_mode: bool = False, *, lane: str = "auto") -> SolveResult:
    """Epsilon-approximate optimum by solving a weighted uniform sample.

    Draws the computed number of points per color class with replacement
    (or the whole class when the size cap bites, making the solve exact),
    solves the weighted sample, and evaluates the winning halfspace on the
    full instance.
    """
    qc = QueryCounter()
    gen = SplitMix64(params.seed)
    m = params.sample_size(inst.dim)

    def pick(points):
        if len(points) <= m:
            return list(points), max(1, len(points))
        return [points[gen.below(len(points))] for _ in range(m)], m

    red_s, m_r = pick(inst.red)
    blue_s, m_b = pick(inst.blue)
    wscale = _lcm(m_r, m_b)
    points = red_s + blue_s
    weights = [len(inst.red) * wscale // m_r] * len(red_s) + \
              [-(len(inst.blue) * wscale // m_b)] * len(blue_s)
    scale, locs = _integerize(points)
    locs, wts = _dedup_weighted(locs, weights)
    out = _core(locs, wts, inst.dim, qc, want_abs=abs_mode, realize=True, lane=lane)
    h = _unscale(out.halfspace, scale)
    full = phi(inst, h, qc)
    value = abs(full) if abs_mode else full
    return SolveResult(halfspace=h, value=value, queries=qc.count, abs_mode=abs_mode,
                       candidates=out.candidates, n=inst.size,
                       swapped=abs_mode and full < 0)


def query_report(result: SolveResult) -> dict:
    """Structured sidedness-query record for one solve."""
    return {
        "n": result.n,
        "d": result.halfspace.dim,
        "queries": result.queries,
        "candidates": result.candidates,
    }
