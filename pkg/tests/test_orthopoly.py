"""Monic orthogonal polynomials built from the three-term recurrence."""

from fractions import Fraction

import gmpy2
import pytest
from hypothesis import given
from hypothesis import strategies as st

from momentquad import (
    Polynomial,
    gen_laguerre,
    hermite,
    legendre,
    moment_sequence,
    monic_sequence,
    mpf,
    poly_derivative,
    poly_eval,
    poly_mul,
    recursion_coeffs,
    scaled_chi,
    working_precision,
)

BITS = 200


def coeffs_of(spec, n, bits=BITS):
    mu = moment_sequence(spec, max(2 * n - 1, 1), bits)
    return recursion_coeffs(mu, n)


def inner_product(p, q, mu):
    """<p, q> under the weight, via the moment functional."""
    prod = poly_mul(p, q)
    acc = gmpy2.mpfr(0)
    for k, c in enumerate(prod.coeffs):
        acc += c * mu[k]
    return acc


class TestPolynomialBasics:
    def test_degree_and_precision(self):
        p = Polynomial(coeffs=(mpf(1, 96), mpf(2, 96), mpf(3, 96)))
        assert p.degree == 2
        assert p.precision_bits == 96

    def test_eval_horner_exact_integers(self):
        p = Polynomial(coeffs=(mpf(1, 128), mpf(2, 128), mpf(3, 128)))
        with working_precision(128):
            assert poly_eval(p, gmpy2.mpfr(2)) == 17

    def test_mul_example(self):
        with working_precision(128):
            a = Polynomial(coeffs=(gmpy2.mpfr(1), gmpy2.mpfr(1)))
            b = Polynomial(coeffs=(gmpy2.mpfr(-1), gmpy2.mpfr(1)))
            c = poly_mul(a, b)
            assert c.coeffs == (-1, 0, 1)

    def test_derivative(self):
        with working_precision(128):
            p = Polynomial(coeffs=(gmpy2.mpfr(5), gmpy2.mpfr(3), gmpy2.mpfr(2)))
            d = poly_derivative(p)
            assert d.coeffs == (3, 4)

    @given(
        st.lists(st.integers(-9, 9), min_size=1, max_size=6),
        st.lists(st.integers(-9, 9), min_size=1, max_size=6),
    )
    def test_mul_matches_exact_convolution(self, a_ints, b_ints):
        with working_precision(128):
            a = Polynomial(coeffs=tuple(gmpy2.mpfr(v) for v in a_ints))
            b = Polynomial(coeffs=tuple(gmpy2.mpfr(v) for v in b_ints))
            c = poly_mul(a, b)
        expected = [Fraction(0)] * (len(a_ints) + len(b_ints) - 1)
        for i, av in enumerate(a_ints):
            for j, bv in enumerate(b_ints):
                expected[i + j] += Fraction(av) * Fraction(bv)
        # small integer convolutions are exact in 128-bit arithmetic
        assert list(c.coeffs) == [int(e) for e in expected]


class TestMonicSequence:
    def test_shapes_and_leading_coefficients(self):
        rc = coeffs_of(scaled_chi(2), 6)
        polys = monic_sequence(rc, 6)
        assert len(polys) == 7
        for k, p in enumerate(polys):
            assert p.degree == k
            assert p.coeffs[-1] == 1  # monic, exactly

    def test_degree_zero_is_constant_one(self):
        rc = coeffs_of(legendre(), 1)
        polys = monic_sequence(rc, 0)
        assert len(polys) == 1
        assert polys[0].coeffs == (1,)

    def test_legendre_pi2_closed_form(self):
        # pi_2 = x^2 - 1/3
        rc = coeffs_of(legendre(), 2)
        p = monic_sequence(rc, 2)[2]
        with working_precision(BITS):
            third = gmpy2.mpfr(1) / 3
            assert abs(p.coeffs[0] + third) <= third * gmpy2.exp2(-(BITS - 8))
            assert abs(p.coeffs[1]) <= gmpy2.exp2(-(BITS - 8))
            assert p.coeffs[2] == 1

    def test_hermite_pi2_closed_form(self):
        # pi_2 = x^2 - 1/2
        rc = coeffs_of(hermite(), 2)
        p = monic_sequence(rc, 2)[2]
        with working_precision(BITS):
            half = gmpy2.mpfr("0.5")
            assert abs(p.coeffs[0] + half) <= half * gmpy2.exp2(-(BITS - 8))
            assert abs(p.coeffs[1]) <= gmpy2.exp2(-(BITS - 8))

    def test_requested_length_within_coefficients(self):
        rc = coeffs_of(legendre(), 3)
        with pytest.raises(ValueError):
            monic_sequence(rc, 4)


class TestOrthogonality:
    @pytest.mark.parametrize(
        "spec",
        [scaled_chi(2), hermite(), legendre(), gen_laguerre(1)],
        ids=["chi-m2", "hermite", "legendre", "laguerre-a1"],
    )
    def test_pairwise_orthogonal(self, spec):
        n = 6
        mu = moment_sequence(spec, 2 * n - 1, BITS)
        rc = recursion_coeffs(mu, n)
        polys = monic_sequence(rc, n)
        with working_precision(BITS):
            norms = [inner_product(p, p, mu) for p in polys[:n]]
            for i in range(n):
                assert norms[i] > 0
                for j in range(i):
                    cross = inner_product(polys[i], polys[j], mu)
                    scale = gmpy2.sqrt(norms[i] * norms[j])
                    assert abs(cross) <= scale * gmpy2.exp2(-BITS // 2)

    def test_norm_equals_beta_product(self):
        # <pi_k, pi_k> = beta_0 beta_1 ... beta_k
        spec = scaled_chi(7)
        n = 6
        mu = moment_sequence(spec, 2 * n - 1, BITS)
        rc = recursion_coeffs(mu, n)
        polys = monic_sequence(rc, n)
        with working_precision(BITS):
            product = gmpy2.mpfr(1)
            for k in range(n):
                product *= rc.beta[k]
                norm = inner_product(polys[k], polys[k], mu)
                assert abs(norm - product) <= product * gmpy2.exp2(-BITS // 2)

    @pytest.mark.parametrize("spec", [hermite(), legendre()], ids=["hermite", "legendre"])
    def test_symmetric_families_have_pure_parity(self, spec):
        n = 7
        rc = coeffs_of(spec, n)
        polys = monic_sequence(rc, n)
        bound = gmpy2.exp2(-(BITS - 20))
        for k, p in enumerate(polys):
            for idx, c in enumerate(p.coeffs):
                if (idx - k) % 2 == 1:
                    assert abs(c) <= bound
