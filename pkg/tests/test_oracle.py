"""The referees themselves: Sturm counting, complex roots, the baseline bound."""

import math
import random
from fractions import Fraction

import mpmath as mp
import pytest

from trisep import (
    Binomial,
    DensePoly,
    DomainError,
    SturmOracle,
    ZeroPolynomialError,
    complex_roots,
    mahler_bound,
    mahler_log_bound,
    min_pairwise_distance,
    sturm_distinct_real_roots,
)
from trisep.oracle import residuals_ok, squarefree_part


def poly_from_roots(roots, extra_irreducible=0):
    """Integer polynomial with the given rational roots (dense coefficients)."""
    coeffs = [Fraction(1)]
    for r in roots:
        r = Fraction(r)
        new = [Fraction(0)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            new[i + 1] += c
            new[i] += -r * c
        coeffs = new
    for _ in range(extra_irreducible):
        # multiply by x^2 + x + 1 (no real roots)
        new = [Fraction(0)] * (len(coeffs) + 2)
        for i, c in enumerate(coeffs):
            new[i] += c
            new[i + 1] += c
            new[i + 2] += c
        coeffs = new
    return DensePoly.from_coeffs(coeffs)


class TestSturm:
    def test_examples(self):
        assert sturm_distinct_real_roots(DensePoly.from_coeffs([2, -3, 1])) == 2
        assert sturm_distinct_real_roots(DensePoly.from_coeffs([1, -2, 1])) == 1
        assert sturm_distinct_real_roots(DensePoly.from_coeffs([0, -1, 0, 1])) == 3

    def test_degree_cap(self):
        with pytest.raises(DomainError):
            SturmOracle({3000: 1, 0: -1}, cap=2000)

    def test_zero_polynomial(self):
        with pytest.raises(ZeroPolynomialError):
            SturmOracle({})

    def test_hand_factored_corpus(self):
        # 50 fixed polynomials assembled from known rational roots and
        # irreducible quadratic factors
        cases = []
        root_pool = [-3, -2, -1, Fraction(-1, 2), 0, Fraction(1, 3), 1, 2, 5]
        rng = random.Random(1234)
        while len(cases) < 50:
            k = rng.randint(1, 4)
            roots = [rng.choice(root_pool) for _ in range(k)]
            reps = rng.randint(0, 2)
            roots += [rng.choice(roots)] * reps  # repeated roots allowed
            quad = rng.randint(0, 2)
            cases.append((roots, quad))
        for roots, quad in cases:
            p = poly_from_roots(roots, extra_irreducible=quad)
            assert sturm_distinct_real_roots(p) == len(set(roots)), (roots, quad)

    def test_squarefree_part(self):
        # (x-1)^2 (x+2) -> (x-1)(x+2)
        p = poly_from_roots([1, 1, -2]).to_sparse_int()
        sf = squarefree_part(p)
        assert max(sf) == 2
        assert sturm_distinct_real_roots(DensePoly.from_coeffs(
            [Fraction(c) for c in
             [sf.get(0, 0), sf.get(1, 0), sf.get(2, 0)]])) == 2

    def test_isolation_and_refinement(self):
        o = SturmOracle({0: -2, 2: 1})  # x^2 - 2
        brackets = o.isolate(Fraction(1, 2 ** 30))
        assert len(brackets) == 2
        for a, b in brackets:
            assert b - a <= Fraction(1, 2 ** 30)
        lo, hi = brackets[1]
        assert float(lo) <= math.sqrt(2) <= float(hi)

    def test_min_root_gap(self):
        o = SturmOracle({0: 2, 1: -3, 2: 1})  # roots 1, 2
        gap = o.min_root_gap()
        assert gap is not None
        assert Fraction(9, 10) < gap <= 1

    def test_min_root_gap_single_root(self):
        assert SturmOracle({0: -1, 1: 1}).min_root_gap() is None


class TestComplexRoots:
    def test_fourth_roots_of_unity(self):
        rts = complex_roots(DensePoly.from_sparse(Binomial(-1, 1, 0, 4)))
        assert len(rts) == 4
        for z, r in rts:
            assert abs(abs(z) - 1) < 1e-30 or r > 0
        d, cluster = min_pairwise_distance(rts)
        assert not cluster
        assert abs(d - math.sqrt(2)) < 1e-12

    def test_conjugate_pair(self):
        rts = complex_roots(DensePoly.from_coeffs([1, 1, 1]))
        assert len(rts) == 2
        with mp.workdps(40):
            want = mp.sqrt(3)
            d, cluster = min_pairwise_distance(rts)
            assert not cluster
            assert abs(d - float(want)) < 1e-25

    def test_double_root_reports_cluster(self):
        rts = complex_roots(DensePoly.from_coeffs([1, -2, 1]))
        for z, _ in rts:
            assert abs(z - 1) < 1e-8
        _, cluster = min_pairwise_distance(rts)
        assert cluster

    def test_residuals(self):
        p = DensePoly.from_coeffs([-7, 0, 0, 1, 2])
        rts = complex_roots(p)
        assert residuals_ok(p, rts)

    def test_degree_cap(self):
        with pytest.raises(DomainError):
            complex_roots(DensePoly.from_sparse(Binomial(-1, 1, 0, 300)),
                          max_degree=100)


class TestMahler:
    def test_example_d2_h3(self):
        got = mahler_log_bound(2, 3)
        # sqrt(3) * 3^(-5/2) * 3^(-1) = 1/27
        assert math.isclose(float(got), math.log(1 / 27), rel_tol=1e-6)
        assert math.exp(float(got)) <= 1 / 27 + 1e-12

    def test_decreasing_in_degree(self):
        prev = mahler_log_bound(2, 2)
        for d in (3, 5, 10, 100, 1000):
            cur = mahler_log_bound(d, 2)
            assert cur < prev
            prev = cur

    def test_domain_error(self):
        with pytest.raises(DomainError):
            mahler_log_bound(1, 5)

    def test_dense_wrapper(self):
        p = DensePoly.from_coeffs([2, -3, 1])
        assert mahler_bound(p) == mahler_log_bound(2, 3)

    def test_gap_versus_sparse_shape(self):
        # degree 10^6: the degree-based bound scales like -d log d while the
        # sparse shape is -(log d)^3
        d = 10 ** 6
        mahler = float(mahler_log_bound(d, 1))
        s3 = math.log(d) ** 3
        assert abs(mahler) / s3 > 100
