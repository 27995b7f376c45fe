import math
from fractions import Fraction as F
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from hsdisc import exactmath as em
from hsdisc.errors import (
    FormatError,
    OutOfRangeError,
    SingularMatrixError,
    ZeroDenominatorError,
)


def leibniz_det(m):
    """Independent determinant oracle: signed permutation sum."""
    d = len(m)
    total = 0
    for perm in permutations(range(d)):
        sign = 1
        seen = list(perm)
        # parity via inversion count
        inv = sum(1 for i in range(d) for j in range(i + 1, d) if seen[i] > seen[j])
        sign = -1 if inv % 2 else 1
        prod = 1
        for i in range(d):
            prod *= m[i][perm[i]]
        total += sign * prod
    return total


ints = st.integers(-10, 10)


def square(d, elems=ints):
    return st.lists(st.lists(elems, min_size=d, max_size=d), min_size=d, max_size=d)


class TestDet:
    def test_identity(self):
        assert em.det([[1, 0], [0, 1]]) == 1

    def test_dependent_rows(self):
        assert em.det([[1, 2], [2, 4]]) == 0

    def test_2x2(self):
        assert em.det([[2, 1], [1, 3]]) == 5

    def test_empty_and_single(self):
        assert em.det([]) == 1
        assert em.det([[7]]) == 7

    @given(st.integers(1, 4).flatmap(square))
    @settings(max_examples=150)
    def test_matches_leibniz(self, m):
        assert em.det(m) == leibniz_det(m)


class TestAdjugate:
    def test_identity(self):
        assert em.adjugate([[1, 0], [0, 1]]) == [[1, 0], [0, 1]]

    def test_2x2(self):
        assert em.adjugate([[2, 1], [1, 3]]) == [[3, -1], [-1, 2]]

    def test_1x1(self):
        assert em.adjugate([[5]]) == [[1]]

    @given(square(4))
    @settings(max_examples=60)
    def test_product_identity(self, m):
        d = len(m)
        dd = em.det(m)
        adj = em.adjugate(m)
        prod = [[sum(m[i][k] * adj[k][j] for k in range(d)) for j in range(d)]
                for i in range(d)]
        assert prod == [[dd if i == j else 0 for j in range(d)] for i in range(d)]


rationals = st.fractions(min_value=-10, max_value=10, max_denominator=8)


class TestSolve:
    def test_identity(self):
        v = [F(3), F(-2)]
        assert em.solve([[F(1), F(0)], [F(0), F(1)]], v) == v

    def test_diagonal(self):
        assert em.solve([[F(2), F(0)], [F(0), F(4)]], [F(1), F(1)]) == [F(1, 2), F(1, 4)]

    def test_singular(self):
        with pytest.raises(SingularMatrixError):
            em.solve([[F(1), F(2)], [F(2), F(4)]], [F(1), F(0)])

    @given(square(3, st.integers(-6, 6)),
           st.lists(rationals, min_size=3, max_size=3))
    @settings(max_examples=60)
    def test_round_trip(self, m, v):
        if em.det(m) == 0:
            return
        x = em.solve(m, v)
        assert em.mat_vec(m, x) == [F(c) for c in v]


class TestHadamard:
    def test_identity(self):
        assert em.hadamard_check([[1, 0], [0, 1]])

    def test_tight(self):
        # det^2 = 4 meets the bound 2^2 * 1 exactly
        assert em.hadamard_check([[1, 1], [1, -1]])

    @given(st.integers(1, 4).flatmap(square))
    @settings(max_examples=150)
    def test_never_fails(self, m):
        assert em.hadamard_check(m)


class TestShermanMorrison:
    def test_zero_update(self):
        m = [[2, 1], [1, 3]]
        z = [F(0), F(0)]
        assert em.sherman_morrison_remainder(m, z, [F(1), F(2)]) == [[0, 0], [0, 0]]

    def test_unit_vectors(self):
        out = em.sherman_morrison_remainder([[1, 0], [0, 1]], [F(1), F(0)], [F(1), F(0)])
        assert out == [[F(1, 2), F(0)], [F(0), F(0)]]

    def test_singular(self):
        with pytest.raises(SingularMatrixError):
            em.sherman_morrison_remainder([[1, 1], [1, 1]], [F(1), F(0)], [F(0), F(1)])

    def test_zero_denominator(self):
        # v^T m^-1 u = -1 makes the update singular
        with pytest.raises(ZeroDenominatorError):
            em.sherman_morrison_remainder([[1, 0], [0, 1]], [F(-1), F(0)], [F(1), F(0)])

    @given(square(3, st.integers(-5, 5)),
           st.lists(rationals, min_size=3, max_size=3),
           st.lists(rationals, min_size=3, max_size=3))
    @settings(max_examples=60)
    def test_equals_direct_difference(self, m, u, v):
        if em.det(m) == 0:
            return
        rat = [[F(x) for x in row] for row in m]
        minv = em.inverse(rat)
        denom = 1 + em.dot(v, em.mat_vec(minv, u))
        if denom == 0:
            return
        updated = [[rat[i][j] + F(u[i]) * F(v[j]) for j in range(3)] for i in range(3)]
        direct = [[minv[i][j] - em.inverse(updated)[i][j] for j in range(3)]
                  for i in range(3)]
        assert em.sherman_morrison_remainder(m, u, v) == direct


class TestHdetBound:
    def test_identity(self):
        assert em.hdet_bound_check([[1, 0], [0, 1]], [F(1), F(1)])

    def test_scaled_identity(self):
        n = 7
        assert em.hdet_bound_check([[n, 0], [0, n]], [F(1), F(1)])

    def test_lambda_out_of_range(self):
        with pytest.raises(OutOfRangeError):
            em.hdet_bound_check([[1, 0], [0, 1]], [F(2), F(0)])

    def test_singular(self):
        with pytest.raises(SingularMatrixError):
            em.hdet_bound_check([[0, 0], [0, 0]], [F(0), F(0)])

    @given(st.integers(1, 4).flatmap(square),
           st.lists(st.fractions(min_value=-1, max_value=1, max_denominator=16),
                    min_size=4, max_size=4))
    @settings(max_examples=150)
    def test_never_fails(self, m, lam):
        if em.det(m) == 0:
            return
        assert em.hdet_bound_check(m, lam[: len(m)])


class TestScalarCodec:
    @pytest.mark.parametrize("f,s", [
        (F(0), "0"), (F(-3), "-3"), (F(1, 2), "1/2"), (F(-7, 3), "-7/3"),
        (F(10**30, 7), f"{10**30}/7"),
    ])
    def test_encode(self, f, s):
        assert em.scalar_to_str(f) == s
        assert em.scalar_from_str(s) == f

    @pytest.mark.parametrize("bad", ["", "+1", "1/0", "2/4", "1/-2", "1.5", "1 /2", "a"])
    def test_reject_non_canonical(self, bad):
        with pytest.raises(FormatError):
            em.scalar_from_str(bad)

    @given(st.fractions(max_denominator=10**6))
    @settings(max_examples=200)
    def test_round_trip(self, f):
        assert em.scalar_from_str(em.scalar_to_str(f)) == f


class TestLogEnclosure:
    def test_log_one_is_exact(self):
        assert em.log_enclosure(F(1)) == (F(0), F(0))

    def test_requires_positive(self):
        with pytest.raises(OutOfRangeError):
            em.log_enclosure(F(0))

    @given(st.fractions(min_value=F(1, 1000), max_value=1000, max_denominator=1000))
    @settings(max_examples=200)
    def test_contains_float_log(self, x):
        if x <= 0:
            return
        lo, hi = em.log_enclosure(x, bits=64)
        assert hi - lo <= F(1, 2**62)
        val = math.log(x)
        assert float(lo) - 1e-9 <= val <= float(hi) + 1e-9

    def test_dyadic_endpoints(self):
        lo, hi = em.log_enclosure(F(3, 7), bits=32)
        assert (lo * 2**32).denominator == 1
        assert (hi * 2**32).denominator == 1

    def test_additivity_consistency(self):
        # ln 4 = 2 ln 2: enclosures must overlap accordingly
        lo4, hi4 = em.log_enclosure(F(4))
        lo2, hi2 = em.log_enclosure(F(2))
        assert lo4 <= 2 * hi2 and 2 * lo2 <= hi4
