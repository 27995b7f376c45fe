"""Exact halfspace-discrepancy toolkit.

Library surface: exact and approximate maximum-discrepancy solvers with
sidedness-query instrumentation, the k-sum and affine-degeneracy gadget
reductions with witness recovery, brute-force base-problem oracles,
seeded generators, and a benchmark runner.  See the hsdisc CLI for the
file-based workflow.
"""

from .baseproblems import (
    DegeneracyWitness,
    KSumInstance,
    KSumWitness,
    PointSetInstance,
    degeneracy_bruteforce,
    ksum_bruteforce,
    ksum_mitm,
)
from .errors import HsdiscError
from .geometry import (
    ColoredInstance,
    Halfspace,
    QueryCounter,
    hyperplane_through,
    phi,
    phi_alpha,
    phi_parallel,
    phi_poisson,
    psi,
    side_of,
)
from .generators import GenSpec, gen_ksum, gen_points
from .reductions import (
    DegeneracyReduction,
    KSumReduction,
    Verdict,
    recover_degeneracy_witness,
    recover_ksum_witness,
    reduce_degeneracy,
    reduce_ksum,
    verify_equivalence_degeneracy,
    verify_equivalence_ksum,
)
from .solvers import (
    ApproxParams,
    SolveResult,
    max_halfspace_1d,
    max_halfspace_approx,
    max_halfspace_exact,
    query_report,
    realizable_subset_oracle,
)

__version__ = "0.1.0"

__all__ = [
    "ApproxParams",
    "ColoredInstance",
    "DegeneracyReduction",
    "DegeneracyWitness",
    "GenSpec",
    "Halfspace",
    "HsdiscError",
    "KSumInstance",
    "KSumReduction",
    "KSumWitness",
    "PointSetInstance",
    "QueryCounter",
    "SolveResult",
    "Verdict",
    "degeneracy_bruteforce",
    "gen_ksum",
    "gen_points",
    "hyperplane_through",
    "ksum_bruteforce",
    "ksum_mitm",
    "max_halfspace_1d",
    "max_halfspace_approx",
    "max_halfspace_exact",
    "phi",
    "phi_alpha",
    "phi_parallel",
    "phi_poisson",
    "psi",
    "query_report",
    "realizable_subset_oracle",
    "recover_degeneracy_witness",
    "recover_ksum_witness",
    "reduce_degeneracy",
    "reduce_ksum",
    "side_of",
    "verify_equivalence_degeneracy",
    "verify_equivalence_ksum",
]
