"""Precision-ladder orchestration, diagnostics, and failure semantics."""

import gmpy2
import pytest

from momentquad import (
    LadderConfig,
    LadderInconclusive,
    RungFailed,
    UnknownWeight,
    WeightSpec,
    build_rule,
    default_b1,
    gen_laguerre,
    hermite,
    legendre,
    run_ladder,
    scaled_chi,
)


class TestDefaults:
    @pytest.mark.parametrize(
        "n,expected",
        [(1, 67), (4, 86), (5, 93), (16, 164), (17, 171), (33, 275)],
    )
    def test_first_rung_bits(self, n, expected):
        assert default_b1(n) == expected

    def test_bit_sequence(self):
        cfg = LadderConfig(n=5)
        assert cfg.bit_sequence() == (93, 127, 161, 195, 229)

    def test_explicit_b1_kept(self):
        cfg = LadderConfig(n=5, b1=100, rungs=3, step=10)
        assert cfg.bit_sequence() == (100, 110, 120)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"n": 0},
            {"n": 5, "rungs": 1},
            {"n": 5, "step": 0},
            {"n": 5, "b1": 52},
        ],
    )
    def test_invalid_config_rejected(self, kwargs):
        with pytest.raises(ValueError):
            LadderConfig(**kwargs)


class TestSinglePointLadder:
    def test_one_node_rule_is_stable(self):
        report = run_ladder(gen_laguerre(0), LadderConfig(n=1, rungs=2))
        assert report.status == "ok"
        report.raise_for_status()
        assert report.l_nodes == 1 and report.l_weights == 1
        assert report.final_nodes == (1.0,)
        assert report.final_weights == (1.0,)
        b1 = default_b1(1)
        assert report.d_tau[0] <= gmpy2.exp2(-(b1 - 10))
        assert report.d_lambda[0] <= gmpy2.exp2(-(b1 - 10))


class TestConvergence:
    @pytest.mark.parametrize(
        "spec",
        [scaled_chi(2), hermite(), legendre(), gen_laguerre(1)],
        ids=["chi-m2", "hermite", "legendre", "laguerre-a1"],
    )
    def test_diagnostics_shrink_fast(self, spec):
        # each extra 34-bit rung should buy far more than 6 decimal orders
        report = run_ladder(spec, LadderConfig(n=5))
        assert report.status == "ok"
        for prev, cur in zip(report.d_tau, report.d_tau[1:]):
            assert cur < prev * 1e-6
        for prev, cur in zip(report.d_lambda, report.d_lambda[1:]):
            assert cur < prev * 1e-6

    def test_report_shapes(self):
        report = run_ladder(legendre(), LadderConfig(n=3, rungs=4))
        assert len(report.rung_results) == 4
        assert len(report.d_tau) == 3
        assert len(report.d_lambda) == 3
        assert len(report.timings) == 3
        assert all(len(row) == 4 for row in report.timings)
        assert report.bits == (60 + 20, 60 + 20 + 34, 60 + 20 + 68, 60 + 20 + 102)
        assert [r.rule.precision_bits for r in report.rung_results] == list(report.bits)

    def test_rules_property_matches_rungs(self):
        report = run_ladder(legendre(), LadderConfig(n=2, rungs=2))
        assert len(report.rules) == 2
        assert report.rules[0].n == 2


class TestFailurePaths:
    def test_rung_failure_reported_and_raised(self):
        report = run_ladder(scaled_chi(160), LadderConfig(n=17, rungs=2, b1=53))
        assert report.status == "rung-failed"
        assert report.failures
        first_rung, cause = report.failures[0]
        assert first_rung == 1
        assert cause.startswith("IllConditioned")
        with pytest.raises(RungFailed) as exc_info:
            report.raise_for_status()
        assert exc_info.value.rung == 1

    def test_later_rungs_still_run_after_failure(self):
        # 53 and 87 bits are too coarse for this rule; 155+ succeed
        report = run_ladder(scaled_chi(160), LadderConfig(n=17, rungs=6, b1=53))
        assert [r.ok for r in report.rung_results] == [
            False, False, False, True, True, True,
        ]
        assert report.status == "rung-failed"
        # diagnostics exist only between adjacent successful rungs
        assert report.d_tau[:3] == (None, None, None)
        assert report.d_tau[3] is not None and report.d_tau[4] is not None
        # the L scan covers successful rungs only: rungs 5 and 6 agree in
        # binary64, rung 4 does not
        assert report.l_nodes == 5 and report.l_weights == 5
        assert report.final_nodes is not None
        failed = [r.index for r in report.rung_results if not r.ok]
        assert failed == [1, 2, 3]
        for row in report.timings:
            assert row[0] is None and row[5] is not None

    def test_inconclusive_when_top_rungs_disagree(self):
        report = run_ladder(scaled_chi(160), LadderConfig(n=17, rungs=2, b1=137))
        assert report.status == "inconclusive"
        assert report.l_nodes is None and report.l_weights is None
        with pytest.raises(LadderInconclusive):
            report.raise_for_status()

    def test_unknown_weight_rejected_before_running(self):
        with pytest.raises(UnknownWeight):
            run_ladder(
                WeightSpec(name="no-such-family", support=(0.0, 1.0)),
                LadderConfig(n=2, rungs=2),
            )

    def test_build_rule_validates_n(self):
        with pytest.raises(ValueError):
            build_rule(legendre(), 0, 100)


class TestDeterminism:
    def test_bit_identical_reruns(self):
        cfg = LadderConfig(n=5)
        a = run_ladder(scaled_chi(2), cfg)
        b = run_ladder(scaled_chi(2), cfg)
        for ra, rb in zip(a.rung_results, b.rung_results):
            assert [gmpy2.to_binary(x) for x in ra.rule.nodes] == [
                gmpy2.to_binary(x) for x in rb.rule.nodes
            ]
            assert [gmpy2.to_binary(w) for w in ra.rule.weights] == [
                gmpy2.to_binary(w) for w in rb.rule.weights
            ]
        assert [gmpy2.to_binary(d) for d in a.d_tau] == [
            gmpy2.to_binary(d) for d in b.d_tau
        ]
        assert a.final_nodes == b.final_nodes
        assert a.final_weights == b.final_weights
        assert (a.l_nodes, a.l_weights) == (b.l_nodes, b.l_weights)
