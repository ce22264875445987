"""Weight solve from squared Lagrange basis polynomials, and rule invariants."""

import math

import gmpy2
import pytest

from momentquad import (
    MomentSequence,
    NonPositiveWeight,
    QuadratureRule,
    WeightSpec,
    build_rule,
    hermite,
    lagrange_basis,
    legendre,
    moment,
    moment_sequence,
    poly_eval,
    scaled_chi,
    weights_from_nodes,
    working_precision,
)

BITS = 200


class TestLagrangeBasis:
    def test_two_point_basis(self):
        with working_precision(128):
            taus = (gmpy2.mpfr(-1), gmpy2.mpfr(1))
            ell = lagrange_basis(taus, 2)  # (x + 1) / 2
            assert ell.coeffs == (0.5, 0.5)

    def test_single_node_constant_one(self):
        with working_precision(128):
            ell = lagrange_basis((gmpy2.mpfr(0),), 1)
            assert ell.coeffs == (1,)

    def test_three_point_middle(self):
        with working_precision(128):
            taus = (gmpy2.mpfr(-1), gmpy2.mpfr(0), gmpy2.mpfr(1))
            ell = lagrange_basis(taus, 2)  # 1 - x^2
            assert ell.coeffs == (1, 0, -1)

    def test_index_is_one_based(self):
        with working_precision(128):
            taus = (gmpy2.mpfr(-1), gmpy2.mpfr(1))
            with pytest.raises(ValueError):
                lagrange_basis(taus, 0)
            with pytest.raises(ValueError):
                lagrange_basis(taus, 3)

    def test_kronecker_property(self):
        rule = build_rule(scaled_chi(2), 6, BITS)
        with working_precision(BITS):
            tol = gmpy2.exp2(-BITS // 2)
            for j in range(1, 7):
                ell = lagrange_basis(rule.nodes, j)
                for i, tau in enumerate(rule.nodes, start=1):
                    value = poly_eval(ell, tau)
                    target = 1 if i == j else 0
                    assert abs(value - target) <= tol


class TestWeightsFromNodes:
    def test_legendre_two_point(self):
        rule = build_rule(legendre(), 2, BITS)
        with working_precision(BITS):
            one = gmpy2.mpfr(1)
            for w in rule.weights:
                assert abs(w - one) <= gmpy2.exp2(-(BITS - 16))

    def test_hermite_two_point(self):
        rule = build_rule(hermite(), 2, BITS)
        with working_precision(BITS):
            half_sqrt_pi = gmpy2.sqrt(gmpy2.const_pi()) / 2
            for w in rule.weights:
                assert abs(w - half_sqrt_pi) <= half_sqrt_pi * gmpy2.exp2(-(BITS - 16))

    def test_single_node_weight_is_mu0_exactly(self):
        rule = build_rule(scaled_chi(2), 1, BITS)
        assert rule.weights == (moment(scaled_chi(2), 0, BITS),)

    def test_requires_enough_moments(self):
        mu = moment_sequence(legendre(), 1, BITS)
        with working_precision(BITS):
            taus = (gmpy2.mpfr(-0.5), gmpy2.mpfr(0), gmpy2.mpfr(0.5))
            with pytest.raises(ValueError):
                weights_from_nodes(taus, mu)

    def test_nonpositive_weight_detected(self):
        # mu = (1, 0, -1) is no moment sequence of a positive weight; the
        # squared-basis integral for each node comes out exactly zero
        bits = 128
        with working_precision(bits):
            values = (gmpy2.mpfr(1), gmpy2.mpfr(0), gmpy2.mpfr(-1))
            taus = (gmpy2.mpfr(-1), gmpy2.mpfr(1))
        mu = MomentSequence(
            spec=WeightSpec(name="indefinite-functional", support=(-2.0, 2.0)),
            precision_bits=bits,
            values=values,
        )
        with pytest.raises(NonPositiveWeight):
            weights_from_nodes(taus, mu)

    def test_symmetric_weights_match(self):
        rule = build_rule(hermite(), 6, BITS)
        bound = gmpy2.exp2(-(BITS - 20))
        for j in range(6):
            assert abs(rule.weights[j] - rule.weights[5 - j]) <= bound


class TestQuadratureRuleInvariants:
    def test_length_mismatch_rejected(self):
        with working_precision(128):
            with pytest.raises(ValueError):
                QuadratureRule(
                    spec=legendre(),
                    n=2,
                    nodes=(gmpy2.mpfr(0),),
                    weights=(gmpy2.mpfr(1), gmpy2.mpfr(1)),
                    precision_bits=128,
                )

    def test_unsorted_nodes_rejected(self):
        with working_precision(128):
            with pytest.raises(ValueError):
                QuadratureRule(
                    spec=legendre(),
                    n=2,
                    nodes=(gmpy2.mpfr(1), gmpy2.mpfr(-1)),
                    weights=(gmpy2.mpfr(1), gmpy2.mpfr(1)),
                    precision_bits=128,
                )

    def test_sum_of_weights_is_mu0(self):
        for spec in (scaled_chi(2), hermite(), legendre()):
            bits = 150
            rule = build_rule(spec, 5, bits)
            mu0 = moment(spec, 0, bits)
            with working_precision(bits):
                total = gmpy2.mpfr(0)
                for w in rule.weights:
                    total += w
                assert abs(total - mu0) <= abs(mu0) * gmpy2.exp2(-(bits // 2))

    def test_all_weights_positive(self):
        rule = build_rule(scaled_chi(160), 12, 300)
        assert all(w > 0 for w in rule.weights)
        assert all(t > 0 for t in rule.nodes)
        assert all(
            math.isfinite(float(w)) and math.isfinite(float(t))
            for w, t in zip(rule.weights, rule.nodes)
        )
