import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from hsdisc import exactmath as em
from hsdisc.errors import (
    AffinelyDependentError,
    DimensionMismatchError,
    EmptyColorClassError,
    EmptyInstanceError,
    OutOfRangeError,
)
from hsdisc.geometry import (
    INF,
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

H_X1 = Halfspace((F(1),), F(0))
coords = st.fractions(min_value=-8, max_value=8, max_denominator=6)


def points(dim, n_min=0, n_max=5):
    return st.lists(st.tuples(*[coords] * dim), min_size=n_min, max_size=n_max)


def instances(dim=2):
    return st.builds(lambda r, b: ColoredInstance(dim=dim, red=tuple(r), blue=tuple(b)),
                     points(dim), points(dim))


def halfspaces(dim=2):
    return st.builds(
        lambda w, xi: Halfspace(w, xi),
        st.tuples(*[coords] * dim).filter(lambda w: any(c != 0 for c in w)),
        coords)


class TestSideOf:
    def test_boundary(self):
        qc = QueryCounter()
        assert side_of(Halfspace((F(1), F(0)), F(0)), (F(0), F(0)), qc) == 0
        assert qc.count == 1

    def test_inside(self):
        assert side_of(Halfspace((F(1), F(0)), F(0)), (F(1), F(0)), QueryCounter()) == 1

    def test_strictly_outside(self):
        h = Halfspace((F(1), F(1)), F(2))
        assert side_of(h, (F(1), F(1, 2)), QueryCounter()) == -1

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            side_of(H_X1, (F(0), F(0)), QueryCounter())

    @given(halfspaces(), st.tuples(coords, coords),
           st.fractions(min_value=F(1, 5), max_value=9, max_denominator=5))
    @settings(max_examples=100)
    def test_positive_rescale_invariant(self, h, p, s):
        scaled = Halfspace(tuple(c * s for c in h.w), h.xi * s)
        assert scaled == h  # canonical form absorbs positive scaling
        assert side_of(scaled, p, QueryCounter()) == side_of(h, p, QueryCounter())


class TestHalfspaceCanonical:
    def test_leading_coordinate_unit(self):
        h = Halfspace((F(-2), F(4)), F(6))
        assert h.w == (F(-1), F(2)) and h.xi == F(3)

    def test_idempotent(self):
        h = Halfspace((F(3), F(-5)), F(7))
        assert Halfspace(h.w, h.xi) == h

    def test_zero_normal_rejected(self):
        with pytest.raises(ValueError):
            Halfspace((F(0), F(0)), F(1))


class TestPhi:
    def test_separating(self):
        inst = ColoredInstance(dim=1, red=((1,),), blue=((-1,),))
        assert phi(inst, H_X1) == 1

    def test_empty(self):
        inst = ColoredInstance(dim=2, red=(), blue=())
        assert phi(inst, Halfspace((F(1), F(0)), F(0))) == 0

    def test_counted_example(self):
        inst = ColoredInstance(dim=2, red=((1, 0),), blue=((0, 1), (1, 1)))
        assert phi(inst, Halfspace((F(1), F(1)), F(2))) == -1

    def test_multiplicity(self):
        inst = ColoredInstance(dim=1, red=((0,), (0,)), blue=((0,),))
        assert phi(inst, H_X1) == 1

    def test_queries_charged(self):
        inst = ColoredInstance(dim=1, red=((1,), (2,)), blue=((0,),))
        qc = QueryCounter()
        phi(inst, H_X1, qc)
        assert qc.count == 3

    @given(instances(), halfspaces())
    @settings(max_examples=100)
    def test_color_swap_negates(self, inst, h):
        swapped = ColoredInstance(dim=inst.dim, red=inst.blue, blue=inst.red)
        assert phi(swapped, h) == -phi(inst, h)

    @given(instances(), halfspaces())
    @settings(max_examples=60)
    def test_affine_invariance(self, inst, h):
        a = [[F(2), F(1)], [F(1), F(1)]]  # unimodular, exactly invertible
        b = [F(-3), F(5)]

        def fwd(p):
            return tuple(em.mat_vec(a, list(p))[i] + b[i] for i in range(2))

        inst2 = ColoredInstance(dim=2, red=tuple(map(fwd, inst.red)),
                                blue=tuple(map(fwd, inst.blue)))
        w2 = em.solve([[a[j][i] for j in range(2)] for i in range(2)], list(h.w))
        h2 = Halfspace(tuple(w2), h.xi + em.dot(w2, b))
        assert phi(inst2, h2) == phi(inst, h)


class TestPsi:
    def test_perfect_separation(self):
        inst = ColoredInstance(dim=1, red=((1,),), blue=((-1,),))
        assert psi(inst, H_X1) == 0

    def test_one_misclassified(self):
        inst = ColoredInstance(dim=1, red=((1,),), blue=((-1,),))
        assert psi(inst, Halfspace((F(1),), F(2))) == F(1, 2)

    def test_blue_only(self):
        inst = ColoredInstance(dim=1, red=(), blue=((0,),))
        assert psi(inst, Halfspace((F(1),), F(1))) == 0

    def test_empty_instance(self):
        with pytest.raises(EmptyInstanceError):
            psi(ColoredInstance(dim=1, red=(), blue=()), H_X1)

    @given(instances(), halfspaces())
    @settings(max_examples=100)
    def test_identity_with_phi(self, inst, h):
        if inst.size == 0:
            return
        n = inst.size
        val = psi(inst, h)
        assert val == 1 - F(len(inst.blue), n) - F(phi(inst, h), n)
        assert 0 <= val <= 1


class TestPhiParallel:
    def test_everything_inside(self):
        inst = ColoredInstance(dim=1, red=((0,),), blue=((1,),))
        assert phi_parallel(inst, Halfspace((F(1),), F(-5))) == 0

    def test_direct_count(self):
        inst = ColoredInstance(dim=1, red=((0,), (2,)), blue=((1,),))
        assert phi_parallel(inst, Halfspace((F(1),), F(1))) == F(1, 2)

    def test_empty_class(self):
        with pytest.raises(EmptyColorClassError):
            phi_parallel(ColoredInstance(dim=1, red=((0,),), blue=()), H_X1)

    @given(points(1, 1, 4), halfspaces(1))
    @settings(max_examples=100)
    def test_balanced_identity(self, pts, h):
        inst = ColoredInstance(dim=1, red=tuple(pts), blue=tuple((p[0] + 17,) for p in pts))
        n = inst.size
        assert phi_parallel(inst, h) == F(2, n) * abs(phi(inst, h))


class TestPhiAlpha:
    def setup_method(self):
        self.inst = ColoredInstance(dim=1, red=((1,),), blue=((-1,),))

    def test_alpha_one(self):
        assert phi_alpha(self.inst, H_X1, F(1)) == 1

    def test_alpha_zero(self):
        assert phi_alpha(self.inst, H_X1, F(0)) == 0  # |h n B| = 0 here

    def test_half(self):
        assert phi_alpha(self.inst, H_X1, F(1, 2)) == F(1, 2)
        assert phi_alpha(self.inst, H_X1, F(1, 2), signed=True) == F(1, 2)

    def test_signed_differs_when_blue_inside(self):
        h = Halfspace((F(1),), F(-2))  # contains both points
        assert phi_alpha(self.inst, h, F(1, 2)) == 1
        assert phi_alpha(self.inst, h, F(1, 2), signed=True) == 0

    def test_out_of_range(self):
        with pytest.raises(OutOfRangeError):
            phi_alpha(self.inst, H_X1, F(3, 2))


class TestPhiPoisson:
    def test_equal_rates_zero(self):
        inst = ColoredInstance(dim=1, red=((0,), (2,)), blue=((0,), (2,)))
        lo, hi = phi_poisson(inst, Halfspace((F(1),), F(1)))
        assert lo == 0 and hi == 0

    def test_disjoint_support_infinite(self):
        inst = ColoredInstance(dim=1, red=((1,),), blue=((-1,),))
        assert phi_poisson(inst, H_X1) == INF

    def test_known_value(self):
        # mu_R = 1/2, mu_B = 1/4: (1/2)ln2 + (1/2)ln(2/3) ~ 0.143841
        inst = ColoredInstance(dim=1, red=((0,), (1,)),
                               blue=((1,), (-1,), (-2,), (-3,)))
        lo, hi = phi_poisson(inst, Halfspace((F(1),), F(1)))
        assert hi - lo <= F(1, 2**60)
        assert abs(float(lo) - 0.1438410362) < 1e-6

    def test_nonnegative_lower_end(self):
        inst = ColoredInstance(dim=1, red=((0,), (1,)), blue=((0,), (1,)))
        lo, hi = phi_poisson(inst, Halfspace((F(1),), F(1)))
        assert lo >= 0


class TestHyperplaneThrough:
    def test_through_origin(self):
        h = hyperplane_through([(F(0), F(0)), (F(1), F(0))])
        assert (abs(h.w[1]), h.w[0], h.xi) == (1, 0, 0)

    def test_diagonal(self):
        h = hyperplane_through([(F(1), F(0)), (F(0), F(1))])
        assert h.w == (F(1), F(1)) and h.xi == F(1)

    def test_simplex_3d(self):
        h = hyperplane_through([(F(1), F(0), F(0)), (F(0), F(1), F(0)),
                                (F(0), F(0), F(1))])
        assert h.w == (F(1), F(1), F(1)) and h.xi == F(1)

    def test_affinely_dependent(self):
        with pytest.raises(AffinelyDependentError):
            hyperplane_through([(F(0), F(0)), (F(0), F(0))])

    @given(points(3, 3, 3))
    @settings(max_examples=100)
    def test_contains_inputs(self, pts):
        diffs = [[pts[i][j] - pts[0][j] for j in range(3)] for i in (1, 2)]
        if em.matrix_rank(diffs) != 2:
            return
        h = hyperplane_through(pts)
        for p in pts:
            assert side_of(h, p, QueryCounter()) == 0


class TestQueryCounter:
    def test_merge_is_sum(self):
        a, b = QueryCounter(3), QueryCounter(4)
        a.merge(b)
        assert a.count == 7

    def test_add_rejects_negative(self):
        with pytest.raises(ValueError):
            QueryCounter().add(-1)
