"""Seeded instance generators, planted and unplanted.

Instances are produced from a splitmix64 stream, so a (spec, seed) pair
determines the output byte for byte.  Planted generators validate against
their brute-force oracle before returning.

k-sum values are drawn pairwise distinct: the gadget construction places
one point per value on each gadget line, and distinct values keep those
crossing gaps disjoint, which the k-discrepancy cap of the reduced
instance relies on.  Repeated values remain fully supported by the
reduction itself; they just are not what these generators emit.
"""

from __future__ import annotations

from dataclasses import dataclass

from .baseproblems import KSumInstance, PointSetInstance, degeneracy_bruteforce, ksum_bruteforce
from .errors import InfeasiblePlantError
from .rng import SplitMix64

_MAX_ATTEMPTS = 10_000


@dataclass(frozen=True)
class GenSpec:
    """What to generate: kind is "ksum" (uses k) or "points" (uses dim)."""

    kind: str
    n: int
    bound: int
    seed: int
    planted: bool = False
    k: int | None = None
    dim: int | None = None

    def __post_init__(self):
        if self.kind not in ("ksum", "points"):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.bound < 1:
            raise ValueError("bound must be positive")


def _draw_distinct(gen: SplitMix64, count: int, bound: int) -> list[int]:
    if count > 2 * bound + 1:
        raise InfeasiblePlantError(
            f"cannot draw {count} distinct values from [-{bound}, {bound}]")
    seen: set[int] = set()
    out: list[int] = []
    while len(out) < count:
        v = gen.randint(-bound, bound)
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


def gen_ksum(spec: GenSpec) -> KSumInstance:
    """Seeded k-sum instance; planted mode guarantees a zero-sum k-tuple."""
    assert spec.kind == "ksum" and spec.k is not None
    n, k, bound = spec.n, spec.k, spec.bound
    if not n >= k >= 3:
        raise ValueError("need n >= k >= 3")
    gen = SplitMix64(spec.seed)
    if not spec.planted:
        values = _draw_distinct(gen, n, bound)
        return KSumInstance(tuple(values), k)
    for _ in range(_MAX_ATTEMPTS):
        head = _draw_distinct(gen, k - 1, bound)
        tail = -sum(head)
        if abs(tail) > bound or tail in head:
            continue
        values = head + [tail]
        seen = set(values)
        ok = True
        while len(values) < n:
            v = gen.randint(-bound, bound)
            if v in seen:
                ok = False
                break
            seen.add(v)
            values.append(v)
        if not ok:
            continue
        gen.shuffle(values)
        inst = KSumInstance(tuple(values), k)
        if ksum_bruteforce(inst) is not None:
            return inst
    raise InfeasiblePlantError("could not plant a zero-sum tuple within the bound")


def gen_points(spec: GenSpec) -> PointSetInstance:
    """Seeded integer point set; planted mode guarantees a degenerate
    (d+1)-tuple via an integer affine combination of d drawn points."""
    assert spec.kind == "points" and spec.dim is not None
    n, d, bound = spec.n, spec.dim, spec.bound
    if n < d + 1:
        raise ValueError("need n >= dim + 1")
    gen = SplitMix64(spec.seed)

    def draw_point() -> tuple[int, ...]:
        return tuple(gen.randint(-bound, bound) for _ in range(d))

    if not spec.planted:
        pts = [draw_point() for _ in range(n)]
        return PointSetInstance(d, tuple(pts), None)
    for _ in range(_MAX_ATTEMPTS):
        anchors = [draw_point() for _ in range(d)]
        coeffs = [gen.randint(-2, 2) for _ in range(d - 1)]
        coeffs.append(1 - sum(coeffs))
        planted = tuple(sum(c * p[t] for c, p in zip(coeffs, anchors)) for t in range(d))
        if any(abs(x) > bound for x in planted):
            continue
        pts = anchors + [planted] + [draw_point() for _ in range(n - d - 1)]
        gen.shuffle(pts)
        inst = PointSetInstance(d, tuple(pts), None)
        if degeneracy_bruteforce(inst) is not None:
            return inst
    raise InfeasiblePlantError("could not plant a degenerate tuple within the bound")
