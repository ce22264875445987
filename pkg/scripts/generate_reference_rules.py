#!/usr/bin/env python3
"""Generate the sixty-digit reference rule fixtures for the oracle suite.

Deliberately independent of the library under test, so the fixtures can
catch its mistakes:

* arithmetic substrate: mpmath (decimal-configured MPF), not MPFR;
* recurrence coefficients: textbook closed forms, not moment determinants;
* nodes: mpmath.polyroots on the monic polynomial, not a bracketed scan;
* weights: Christoffel function, lambda_j = 1 / sum_k p_k(tau_j)^2 over
  the orthonormal polynomials, not squared-Lagrange moment dot products.

Every rule is validated before writing: scipy's float-precision nodes and
weights must agree to 1e-10, and the exactness identity
sum_j lambda_j tau_j^r = mu_r must hold to 1e-55 relative for all
r <= 2n-1.  Output is deterministic; regeneration is byte-identical.

Usage: generate_reference_rules.py [--out-dir DIR]
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import mpmath as mp
import scipy.special

DPS = 130
DIGITS = 60
SIZES = (4, 16)
DEFAULT_OUT = Path(__file__).resolve().parent.parent / "src/momentquad/oracles/fixtures"


def recurrence(family: str, alpha, k: int):
    """Closed-form (alpha_k, beta_k) of the monic three-term recurrence."""
    if family == "hermite":
        return mp.mpf(0), mp.sqrt(mp.pi) if k == 0 else mp.mpf(k) / 2
    if family == "legendre":
        if k == 0:
            return mp.mpf(0), mp.mpf(2)
        return mp.mpf(0), 1 / (4 - mp.mpf(k) ** -2)
    if family == "gen-laguerre":
        a = 2 * k + alpha + 1
        b = mp.gamma(1 + alpha) if k == 0 else k * (k + alpha)
        return a, b
    raise ValueError(family)


def monic_coeffs(family: str, alpha, n: int) -> list:
    """Coefficients of pi_n, ascending order, from the recurrence."""
    prev = None
    cur = [mp.mpf(1)]
    for k in range(n):
        a_k, b_k = recurrence(family, alpha, k)
        nxt = [mp.mpf(0)] * (len(cur) + 1)
        for i, c in enumerate(cur):
            nxt[i + 1] += c
            nxt[i] -= a_k * c
        if prev is not None:
            for i, c in enumerate(prev):
                nxt[i] -= b_k * c
        prev, cur = cur, nxt
    return cur


def rule_nodes(family: str, alpha, n: int) -> list:
    coeffs = monic_coeffs(family, alpha, n)
    roots = mp.polyroots(list(reversed(coeffs)), maxsteps=200, extraprec=mp.mp.prec)
    cleaned = []
    for r in roots:
        if isinstance(r, mp.mpc):
            assert abs(r.imag) < mp.mpf(10) ** (-DPS + 10), f"complex root {r}"
            r = r.real
        cleaned.append(r)
    return sorted(cleaned)


def christoffel_weights(family: str, alpha, n: int, nodes: list) -> list:
    """lambda_j = 1 / sum_{k<n} p_k(tau_j)^2 with orthonormal p_k."""
    weights = []
    for x in nodes:
        _, b0 = recurrence(family, alpha, 0)
        p_prev = mp.mpf(0)
        p_cur = 1 / mp.sqrt(b0)
        total = p_cur**2
        for k in range(n - 1):
            a_k, b_k = recurrence(family, alpha, k)
            _, b_next = recurrence(family, alpha, k + 1)
            p_new = ((x - a_k) * p_cur - mp.sqrt(b_k) * p_prev) / mp.sqrt(b_next)
            p_prev, p_cur = p_cur, p_new
            total += p_cur**2
        weights.append(1 / total)
    return weights


def raw_moment(family: str, alpha, r: int):
    if family == "hermite":
        return mp.mpf(0) if r % 2 else mp.gamma((r + 1) / mp.mpf(2))
    if family == "legendre":
        return mp.mpf(0) if r % 2 else 2 / mp.mpf(r + 1)
    if family == "gen-laguerre":
        return mp.gamma(r + alpha + 1)
    raise ValueError(family)


def scipy_rule(family: str, alpha, n: int):
    if family == "hermite":
        return scipy.special.roots_hermite(n)
    if family == "legendre":
        return scipy.special.roots_legendre(n)
    if family == "gen-laguerre":
        return scipy.special.roots_genlaguerre(n, float(alpha))
    raise ValueError(family)


def validate(family: str, alpha, n: int, nodes: list, weights: list) -> None:
    ref_nodes, ref_weights = scipy_rule(family, alpha, n)
    for ours, theirs in zip(nodes, ref_nodes):
        assert abs(float(ours) - theirs) < 1e-10, (family, n, ours, theirs)
    for ours, theirs in zip(weights, ref_weights):
        assert abs(float(ours) - theirs) < 1e-10, (family, n, ours, theirs)
    for r in range(2 * n):
        quad = mp.fsum(w * x**r for x, w in zip(nodes, weights))
        mu = raw_moment(family, alpha, r)
        err = abs(quad - mu) / max(1, abs(mu))
        assert err < mp.mpf("1e-55"), (family, n, r, err)


def fixture_text(family: str, alpha, n: int, nodes: list, weights: list) -> str:
    lines = [
        f"# family: {family}",
        f"# n: {n}",
        f"# digits: {DIGITS}",
    ]
    if alpha is not None:
        lines.append(f"# alpha: {float(alpha):g}")
    lines += [
        "# generated-by: scripts/generate_reference_rules.py",
        f"# method: closed-form recurrence, mpmath polyroots, Christoffel "
        f"weights at dps={DPS}; scipy cross-checked",
    ]
    for x in nodes + weights:
        lines.append(mp.nstr(x, DIGITS, strip_zeros=False))
    return "\n".join(lines) + "\n"


def fixture_name(family: str, alpha, n: int) -> str:
    if family == "gen-laguerre":
        return f"gen-laguerre_alpha{float(alpha):g}_n{n}.txt"
    return f"{family}_n{n}.txt"


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out-dir", type=Path, default=DEFAULT_OUT)
    args = parser.parse_args(argv)
    args.out_dir.mkdir(parents=True, exist_ok=True)

    mp.mp.dps = DPS
    combos = [("hermite", None), ("legendre", None),
              ("gen-laguerre", mp.mpf(0)), ("gen-laguerre", mp.mpf(1))]
    for family, alpha in combos:
        for n in SIZES:
            nodes = rule_nodes(family, alpha, n)
            weights = christoffel_weights(family, alpha, n, nodes)
            validate(family, alpha, n, nodes, weights)
            path = args.out_dir / fixture_name(family, alpha, n)
            path.write_text(fixture_text(family, alpha, n, nodes, weights))
            print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
