import pytest
from hypothesis import given, settings, strategies as st

from hsdisc.baseproblems import (
    DegeneracyWitness,
    KSumInstance,
    KSumWitness,
    PointSetInstance,
    check_degeneracy_witness,
    check_ksum_witness,
    degeneracy_bruteforce,
    homogeneous_det,
    ksum_bruteforce,
    ksum_mitm,
)
from hsdisc.errors import TooFewPointsError, TooFewValuesError


class TestKSumBruteforce:
    def test_basic_hit(self):
        inst = KSumInstance((1, 2, -3), 3)
        assert ksum_bruteforce(inst).indices == (0, 1, 2)

    def test_no_witness(self):
        assert ksum_bruteforce(KSumInstance((1, 1, 1), 3)) is None

    def test_lexicographic(self):
        inst = KSumInstance((2, -1, -1, 5), 3)
        assert ksum_bruteforce(inst).indices == (0, 1, 2)

    def test_too_few(self):
        with pytest.raises(TooFewValuesError):
            ksum_bruteforce(KSumInstance((1, 2), 3))

    def test_repeats_convention(self):
        # 1 + 1 - 2 needs index 1 twice; only the multiset convention finds it
        inst = KSumInstance((-2, 1, 5), 3)
        assert ksum_bruteforce(inst) is None
        assert ksum_bruteforce(inst, allow_repeats=True).indices == (0, 1, 1)

    def test_witness_check(self):
        inst = KSumInstance((-2, 1, 5), 3)
        assert check_ksum_witness(inst, (0, 1, 1), allow_repeats=True)
        assert not check_ksum_witness(inst, (0, 1, 1))
        assert not check_ksum_witness(inst, (0, 1, 2), allow_repeats=True)


values = st.lists(st.integers(-9, 9), min_size=3, max_size=8)


class TestKSumMitm:
    def test_basic(self):
        assert ksum_mitm(KSumInstance((1, 2, -3), 3)) is not None
        assert ksum_mitm(KSumInstance((1, 1, 1), 3)) is None

    @given(values, st.integers(3, 5), st.booleans())
    @settings(max_examples=500)
    def test_decision_matches_bruteforce(self, vals, k, repeats):
        if len(vals) < k:
            return
        inst = KSumInstance(tuple(vals), k)
        bf = ksum_bruteforce(inst, allow_repeats=repeats)
        mm = ksum_mitm(inst, allow_repeats=repeats)
        assert (bf is None) == (mm is None)
        if mm is not None:
            assert check_ksum_witness(inst, mm.indices, allow_repeats=repeats)

    @given(values, st.permutations(range(8)))
    @settings(max_examples=100)
    def test_permutation_invariant_decision(self, vals, perm):
        k = 3
        if len(vals) < k:
            return
        order = [p for p in perm if p < len(vals)]
        shuffled = tuple(vals[i] for i in order)
        a = ksum_bruteforce(KSumInstance(tuple(vals), k)) is not None
        b = ksum_bruteforce(KSumInstance(shuffled, k)) is not None
        assert a == b


class TestDegeneracy:
    def test_collinear(self):
        inst = PointSetInstance(2, ((0, 0), (1, 1), (2, 2)), None)
        assert degeneracy_bruteforce(inst).indices == (0, 1, 2)

    def test_general_position(self):
        inst = PointSetInstance(2, ((0, 0), (1, 0), (0, 1), (1, 2)), None)
        assert degeneracy_bruteforce(inst) is None

    def test_planted_3d(self):
        pts = ((1, 0, 0), (0, 1, 0), (0, 0, 2), (2, -1, 0))  # 2*p0 - p1 = p3
        inst = PointSetInstance(3, pts, None)
        w = degeneracy_bruteforce(inst)
        assert w is not None
        assert homogeneous_det([pts[i] for i in w.indices]) == 0

    def test_too_few(self):
        with pytest.raises(TooFewPointsError):
            degeneracy_bruteforce(PointSetInstance(2, ((0, 0), (1, 1)), None))

    def test_duplicate_points_always_degenerate(self):
        inst = PointSetInstance(2, ((3, 4), (3, 4), (0, 1)), None)
        assert degeneracy_bruteforce(inst) is not None

    def test_witness_check(self):
        inst = PointSetInstance(2, ((0, 0), (1, 1), (2, 2), (1, 0)), None)
        assert check_degeneracy_witness(inst, (0, 1, 2))
        assert not check_degeneracy_witness(inst, (0, 1, 3))

    def test_coord_bound_validation(self):
        assert PointSetInstance(2, ((0, 0), (0, 1), (3, 0)), None).coord_bound == 3
        with pytest.raises(ValueError):
            PointSetInstance(2, ((5, 0), (0, 0), (0, 1)), 3)


pts2 = st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)),
                min_size=3, max_size=6)


class TestDegeneracyInvariance:
    @given(pts2, st.integers(-5, 5), st.integers(-5, 5))
    @settings(max_examples=150)
    def test_translation_invariant(self, pts, dx, dy):
        a = degeneracy_bruteforce(PointSetInstance(2, tuple(pts), None))
        moved = tuple((x + dx, y + dy) for x, y in pts)
        b = degeneracy_bruteforce(PointSetInstance(2, moved, None))
        assert (a is None) == (b is None)

    @given(pts2)
    @settings(max_examples=150)
    def test_unimodular_invariant(self, pts):
        mapped = tuple((2 * x + y, x + y) for x, y in pts)  # det = 1
        a = degeneracy_bruteforce(PointSetInstance(2, tuple(pts), None))
        b = degeneracy_bruteforce(PointSetInstance(2, mapped, None))
        assert (a is None) == (b is None)
