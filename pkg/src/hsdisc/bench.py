"""Benchmark runner: wall time and sidedness-query counts versus n.

Each record is one solver repetition on a seeded instance; repetitions
re-solve the same instance so the median wall time controls noise (query
counts are deterministic per instance).  The log-log regression of
queries against n gives the empirical scaling exponent.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

from .generators import GenSpec, gen_ksum
from .geometry import ColoredInstance
from .reductions import reduce_ksum
from .rng import SplitMix64
from .solvers import max_halfspace_1d, max_halfspace_exact

CSV_HEADER = "n,d,solver,seed,rep,wall_nanos,queries,candidates"


@dataclass(frozen=True)
class BenchRecord:
    n: int
    d: int
    solver: str
    seed: int
    rep: int
    wall_nanos: int
    queries: int
    candidates: int

    def csv_row(self) -> str:
        return (f"{self.n},{self.d},{self.solver},{self.seed},{self.rep},"
                f"{self.wall_nanos},{self.queries},{self.candidates}")


def random_instance(n: int, dim: int, seed: int) -> ColoredInstance:
    """Integer-coordinate instance with n points split evenly by color;
    the coordinate box grows with n to keep coincidences rare."""
    gen = SplitMix64(seed)
    bound = 8 * max(1, n)
    pts = [tuple(gen.randint(-bound, bound) for _ in range(dim)) for _ in range(n)]
    half = n // 2
    return ColoredInstance(dim=dim, red=tuple(pts[:half]), blue=tuple(pts[half:]))


_SOLVERS = {
    "exact": lambda inst: max_halfspace_exact(inst, abs_mode=True),
    "exact-scalar": lambda inst: max_halfspace_exact(inst, abs_mode=True, lane="scalar"),
    "sweep": lambda inst: max_halfspace_1d(inst, abs_mode=True),
}


def fit_loglog(ns, qs) -> dict:
    """Least-squares slope of log(q) against log(n), with RMS residual."""
    xs = [math.log(n) for n in ns]
    ys = [math.log(max(1, q)) for q in qs]
    m = len(xs)
    mean_x = sum(xs) / m
    mean_y = sum(ys) / m
    sxx = sum((x - mean_x) ** 2 for x in xs)
    sxy = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    slope = sxy / sxx if sxx else 0.0
    intercept = mean_y - slope * mean_x
    residual = math.sqrt(sum((y - (intercept + slope * x)) ** 2
                             for x, y in zip(xs, ys)) / m)
    return {"slope": slope, "intercept": intercept, "residual": residual}


def bench_run(suite: str, sizes, dim: int, seed: int, reps: int = 3,
              solver: str = "exact", solve_fn=None) -> tuple[list[BenchRecord], dict]:
    """Run one suite and fit the query-count scaling.

    suite "solver" times the named solver on random colored instances of
    the given sizes; suite "reduction" builds planted k-sum instances
    (k = dim + 1), reduces them, and times the exact solve of the reduced
    instance.  solve_fn overrides the solver (used for calibration).
    """
    sizes = list(sizes)
    if len(sizes) < 3 or any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError("sizes must be at least three increasing values")
    if suite not in ("solver", "reduction"):
        raise ValueError(f"unknown suite {suite!r}")
    fn = solve_fn if solve_fn is not None else _SOLVERS[solver]
    records: list[BenchRecord] = []
    per_n: list[tuple[int, int]] = []
    for idx, n in enumerate(sizes):
        if suite == "solver":
            inst = random_instance(n, dim, seed + idx)
        else:
            spec = GenSpec(kind="ksum", n=n, bound=max(9, 4 * n), seed=seed + idx,
                           planted=True, k=dim + 1)
            inst = reduce_ksum(gen_ksum(spec)).instance
        queries = None
        for rep in range(max(1, reps)):
            t0 = time.monotonic_ns()
            res = fn(inst)
            wall = time.monotonic_ns() - t0
            queries = res.queries
            records.append(BenchRecord(n=inst.size, d=inst.dim, solver=solver,
                                       seed=seed + idx, rep=rep, wall_nanos=wall,
                                       queries=res.queries, candidates=res.candidates))
        per_n.append((n, queries))
    fit = fit_loglog([n for n, _ in per_n], [q for _, q in per_n])
    return records, fit


def write_csv(records, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(CSV_HEADER + "\n")
        for rec in records:
            fh.write(rec.csv_row() + "\n")
