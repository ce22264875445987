"""Precision-ladder orchestration and convergence diagnostics.

One rule is built at each of M increasing precisions ("rungs"),
b_j = b1 + step*(j-1).  Consecutive rungs are then compared:

    d_tau(j)    = max_i |tau_i(b_{j-1}) - tau_i(b_j)|
    d_lambda(j) = sum_i |lambda_i(b_{j-1}) - lambda_i(b_j)|

for j = 2..M.  After converting every rung's vectors to binary64,
L_nodes is the smallest rung index k such that rungs k..M all agree
exactly in binary64 (defined only when rungs M-1 and M agree); likewise
L_weights.  Small L with steadily shrinking d values is the evidence
that the binary64 output of the final rung is converged.

A rung can fail numerically (ill-conditioned moment matrix, lost root
bracket, nonpositive weight).  Failed rungs do not stop the run: later
rungs at higher precision may well succeed.  The report records per-rung
failures, computes diagnostics over adjacent successful rungs, and
restricts the L scan to successful rungs.  ``LadderReport.status``
summarizes the outcome and ``raise_for_status`` converts it to the
corresponding exception.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import gmpy2

from .errors import (
    BracketCountMismatch,
    EmptyIntersection,
    IllConditioned,
    LadderInconclusive,
    NegativeVariance,
    NoConvergence,
    NonPositiveWeight,
    RungFailed,
    SingularMatrix,
)
from .hankel import recursion_coeffs
from .moments import WeightSpec, moment_sequence, validate_spec
from .mp import to_double, working_precision
from .orthopoly import monic_sequence
from .rootfind import nodes as find_nodes
from .weights import QuadratureRule, weights_from_nodes

# numerical failures that invalidate one rung without aborting the run
RUNG_FAILURES = (
    IllConditioned,
    SingularMatrix,
    BracketCountMismatch,
    NonPositiveWeight,
    NegativeVariance,
    EmptyIntersection,
    NoConvergence,
)


def default_b1(n: int) -> int:
    """Smallest integer not less than 60 + 6.5*n (exact integer ceiling)."""
    return 60 + (13 * n + 1) // 2


@dataclass(frozen=True)
class LadderConfig:
    """Ladder shape: rule size n, rung count, starting bits, bit step."""

    n: int
    rungs: int = 5
    b1: int | None = None
    step: int = 34

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.rungs < 2:
            raise ValueError(f"rungs must be >= 2, got {self.rungs}")
        if self.step < 1:
            raise ValueError(f"step must be >= 1, got {self.step}")
        if self.b1 is None:
            object.__setattr__(self, "b1", default_b1(self.n))
        if self.b1 < 53:
            raise ValueError(f"b1 must be >= 53 bits, got {self.b1}")

    def bit_sequence(self) -> tuple[int, ...]:
        return tuple(self.b1 + self.step * (j - 1) for j in range(1, self.rungs + 1))


@dataclass(frozen=True)
class RungResult:
    """One rung: its index (1-based), precision, and rule or failure."""

    index: int
    bits: int
    rule: QuadratureRule | None
    timings: tuple[float, float, float] | None
    failure: str | None

    @property
    def ok(self) -> bool:
        return self.rule is not None


def _timed_rule(spec: WeightSpec, n: int, bits: int):
    """Build one rule, timing the three pipeline stages separately.

    Returned timings: (moments + recursion + polynomial, root finding,
    weight solving), in seconds.
    """
    t0 = time.perf_counter()
    mu = moment_sequence(spec, 2 * n - 1, bits)
    rc = recursion_coeffs(mu, n)
    pi_n = monic_sequence(rc, n)[n]
    t1 = time.perf_counter()
    taus = find_nodes(pi_n, spec)
    t2 = time.perf_counter()
    lams = weights_from_nodes(taus, mu)
    t3 = time.perf_counter()
    rule = QuadratureRule(
        spec=spec, n=n, nodes=taus, weights=lams, precision_bits=bits
    )
    return rule, (t1 - t0, t2 - t1, t3 - t2)


def build_rule(spec: WeightSpec, n: int, bits: int) -> QuadratureRule:
    """One Gauss rule for ``spec`` with ``n`` nodes at ``bits`` bits."""
    validate_spec(spec)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    rule, _ = _timed_rule(spec, n, bits)
    return rule


def _l_index(vectors: dict[int, tuple], m: int) -> int | None:
    """Smallest k with binary64 agreement on every successful rung k..m.

    Defined only when rung m succeeded and agrees with the last successful
    rung before it; the scan walks successful rungs downward from m and
    stops at the first disagreement.
    """
    if m not in vectors:
        return None
    below = [j for j in sorted(vectors) if j != m]
    if not below or vectors[below[-1]] != vectors[m]:
        return None
    l_idx = m
    for j in reversed(below):
        if vectors[j] != vectors[m]:
            break
        l_idx = j
    return l_idx


@dataclass(frozen=True)
class LadderReport:
    """Everything one ladder run produced: rules, diagnostics, timings."""

    spec: WeightSpec
    config: LadderConfig
    rung_results: tuple
    d_tau: tuple
    d_lambda: tuple
    l_nodes: int | None
    l_weights: int | None
    final_nodes: tuple | None
    final_weights: tuple | None

    @property
    def bits(self) -> tuple[int, ...]:
        return self.config.bit_sequence()

    @property
    def rules(self) -> tuple:
        return tuple(r.rule for r in self.rung_results)

    @property
    def timings(self) -> tuple:
        """3 x M matrix; rows are the three pipeline stages, columns rungs."""
        cols = [r.timings for r in self.rung_results]
        return tuple(
            tuple(c[row] if c is not None else None for c in cols) for row in range(3)
        )

    @property
    def failures(self) -> tuple:
        return tuple((r.index, r.failure) for r in self.rung_results if not r.ok)

    @property
    def status(self) -> str:
        """'ok', 'rung-failed', or 'inconclusive' (L indices undefined)."""
        if any(not r.ok for r in self.rung_results):
            return "rung-failed"
        if self.l_nodes is None or self.l_weights is None:
            return "inconclusive"
        return "ok"

    def raise_for_status(self) -> None:
        status = self.status
        if status == "rung-failed":
            index, cause = self.failures[0]
            raise RungFailed(index, cause)
        if status == "inconclusive":
            raise LadderInconclusive(
                "binary64 outputs of the two highest rungs disagree; "
                "raise b1 or the rung count"
            )


def run_ladder(spec: WeightSpec, cfg: LadderConfig) -> LadderReport:
    """Run the full pipeline at every rung and assemble the diagnostics.

    Always returns a report; inspect ``status`` or call
    ``raise_for_status`` to translate failures into exceptions.
    """
    validate_spec(spec)
    results = []
    for j, bits in enumerate(cfg.bit_sequence(), start=1):
        try:
            rule, timings = _timed_rule(spec, cfg.n, bits)
            results.append(
                RungResult(index=j, bits=bits, rule=rule, timings=timings, failure=None)
            )
        except RUNG_FAILURES as exc:
            results.append(
                RungResult(
                    index=j,
                    bits=bits,
                    rule=None,
                    timings=None,
                    failure=f"{type(exc).__name__}: {exc}",
                )
            )

    d_tau = []
    d_lambda = []
    for j in range(2, cfg.rungs + 1):
        lo, hi = results[j - 2], results[j - 1]
        if not (lo.ok and hi.ok):
            d_tau.append(None)
            d_lambda.append(None)
            continue
        with working_precision(hi.bits):
            d_tau.append(
                max(abs(a - b) for a, b in zip(lo.rule.nodes, hi.rule.nodes))
            )
            acc = gmpy2.mpfr(0)
            for a, b in zip(lo.rule.weights, hi.rule.weights):
                acc = acc + abs(a - b)
            d_lambda.append(acc)

    node_vecs = {
        r.index: tuple(to_double(x) for x in r.rule.nodes) for r in results if r.ok
    }
    weight_vecs = {
        r.index: tuple(to_double(x) for x in r.rule.weights) for r in results if r.ok
    }
    l_nodes = _l_index(node_vecs, cfg.rungs)
    l_weights = _l_index(weight_vecs, cfg.rungs)
    final = results[-1]
    return LadderReport(
        spec=spec,
        config=cfg,
        rung_results=tuple(results),
        d_tau=tuple(d_tau),
        d_lambda=tuple(d_lambda),
        l_nodes=l_nodes,
        l_weights=l_weights,
        final_nodes=node_vecs.get(cfg.rungs),
        final_weights=weight_vecs.get(cfg.rungs),
    )
