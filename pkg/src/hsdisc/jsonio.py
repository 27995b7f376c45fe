"""JSON serialization with bit-exact round trips.

Scalars travel as canonical strings ("p" or "p/q"), never as floats, and
integers as decimal strings where magnitudes are unbounded.  Decoders are
strict: unknown shapes, wrong types or non-canonical scalars raise
FormatError.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .baseproblems import KSumInstance, PointSetInstance
from .errors import FormatError
from .geometry import ColoredInstance, Halfspace
from .reductions import DegeneracyReduction, KSumReduction, Verdict
from .solvers import SolveResult
from .exactmath import int_from_str, scalar_from_str, scalar_to_str


def _expect(obj, key, typ):
    if not isinstance(obj, dict) or key not in obj:
        raise FormatError(f"missing key {key!r}")
    val = obj[key]
    if typ is not None and not isinstance(val, typ):
        raise FormatError(f"key {key!r} has type {type(val).__name__}")
    return val


def _point_list(rows, what: str) -> tuple[tuple[Fraction, ...], ...]:
    if not isinstance(rows, list):
        raise FormatError(f"{what} must be a list")
    out = []
    for row in rows:
        if not isinstance(row, list):
            raise FormatError(f"{what} entries must be lists")
        out.append(tuple(scalar_from_str(c) for c in row))
    return tuple(out)


# -- colored instances -------------------------------------------------------

def instance_to_obj(inst: ColoredInstance) -> dict:
    return {
        "dim": inst.dim,
        "red": [[scalar_to_str(c) for c in p] for p in inst.red],
        "blue": [[scalar_to_str(c) for c in p] for p in inst.blue],
    }


def instance_from_obj(obj) -> ColoredInstance:
    dim = _expect(obj, "dim", int)
    red = _point_list(_expect(obj, "red", list), "red")
    blue = _point_list(_expect(obj, "blue", list), "blue")
    try:
        return ColoredInstance(dim=dim, red=red, blue=blue)
    except Exception as exc:
        raise FormatError(f"bad instance: {exc}") from exc


# -- halfspaces and solve results --------------------------------------------

def halfspace_to_obj(h: Halfspace) -> dict:
    return {"w": [scalar_to_str(c) for c in h.w], "xi": scalar_to_str(h.xi)}


def halfspace_from_obj(obj) -> Halfspace:
    w = _expect(obj, "w", list)
    xi = scalar_from_str(_expect(obj, "xi", str))
    try:
        return Halfspace(tuple(scalar_from_str(c) for c in w), xi)
    except FormatError:
        raise
    except Exception as exc:
        raise FormatError(f"bad halfspace: {exc}") from exc


def solve_result_to_obj(res: SolveResult) -> dict:
    return {
        "w": [scalar_to_str(c) for c in res.halfspace.w],
        "xi": scalar_to_str(res.halfspace.xi),
        "value": str(res.value),
        "queries": res.queries,
        "abs_mode": res.abs_mode,
    }


# -- base problem instances --------------------------------------------------

def ksum_to_obj(inst: KSumInstance) -> dict:
    return {"k": inst.k, "values": [str(v) for v in inst.values]}


def ksum_from_obj(obj) -> KSumInstance:
    k = _expect(obj, "k", int)
    values = _expect(obj, "values", list)
    try:
        return KSumInstance(tuple(int_from_str(v) for v in values), k)
    except FormatError:
        raise
    except Exception as exc:
        raise FormatError(f"bad k-sum instance: {exc}") from exc


def points_to_obj(inst: PointSetInstance) -> dict:
    return {
        "dim": inst.dim,
        "coord_bound": inst.coord_bound,
        "points": [[str(c) for c in p] for p in inst.points],
    }


def points_from_obj(obj) -> PointSetInstance:
    dim = _expect(obj, "dim", int)
    bound = _expect(obj, "coord_bound", None)
    if bound is not None and not isinstance(bound, int):
        raise FormatError("coord_bound must be an integer or null")
    rows = _expect(obj, "points", list)
    pts = []
    for row in rows:
        if not isinstance(row, list):
            raise FormatError("points entries must be lists")
        pts.append(tuple(int_from_str(c) for c in row))
    try:
        return PointSetInstance(dim, tuple(pts), bound)
    except Exception as exc:
        raise FormatError(f"bad point-set instance: {exc}") from exc


# -- reduction bundles -------------------------------------------------------

def reduction_to_obj(red) -> dict:
    if isinstance(red, KSumReduction):
        k = red.source.k
        index_map = [list(red.pair_positions(i, j))
                     for i in range(red.source.n) for j in range(k)]
        return {
            "kind": "ksum",
            "gamma": scalar_to_str(red.gamma),
            "source": ksum_to_obj(red.source),
            "index_map": index_map,
            "instance": instance_to_obj(red.instance),
        }
    if isinstance(red, DegeneracyReduction):
        return {
            "kind": "degeneracy",
            "gamma": scalar_to_str(red.gamma),
            "source": points_to_obj(red.source),
            "index_map": [[i, i] for i in range(red.source.n)],
            "instance": instance_to_obj(red.instance),
        }
    raise TypeError(f"not a reduction: {type(red).__name__}")


def reduction_from_obj(obj):
    kind = _expect(obj, "kind", str)
    gamma = scalar_from_str(_expect(obj, "gamma", str))
    if kind == "ksum":
        from .reductions import reduce_ksum
        red = reduce_ksum(ksum_from_obj(_expect(obj, "source", dict)), gamma)
    elif kind == "degeneracy":
        from .reductions import reduce_degeneracy
        red = reduce_degeneracy(points_from_obj(_expect(obj, "source", dict)))
        if red.gamma != gamma:
            raise FormatError("stored gamma disagrees with the derived value")
    else:
        raise FormatError(f"unknown reduction kind {kind!r}")
    stored = instance_from_obj(_expect(obj, "instance", dict))
    if stored != red.instance:
        raise FormatError("stored instance disagrees with the rebuilt reduction")
    return red


def verdict_to_obj(v: Verdict) -> dict:
    return {
        "kind": v.kind,
        "oracle": v.oracle,
        "reduced": v.reduced,
        "agree": v.agree,
        "threshold": v.threshold,
        "reduced_value": str(v.reduced_value),
        "oracle_witness": list(v.oracle_witness) if v.oracle_witness else None,
        "witness": list(v.witness) if v.witness else None,
        "recovery_error": v.recovery_error,
        "queries": v.queries,
    }


# -- files --------------------------------------------------------------------

def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def save(obj, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))


def load(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"malformed JSON in {path}: {exc}") from exc
