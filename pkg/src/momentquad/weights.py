"""Quadrature weights from the squared Lagrange basis.

The weight attached to node tau_j is the integral of q_j = l_j^2 against
the weight function, where l_j is the Lagrange basis polynomial of the
node set.  Expanding q_j in coefficients a_k turns the integral into the
moment dot-product

    lambda_j = sum_k a_k mu_k,     0 <= k <= 2(n-1).

Squaring l_j keeps every lambda_j positive in exact arithmetic, so a
nonpositive computed weight is a precision failure, not a property of the
rule.
"""

from __future__ import annotations

from dataclasses import dataclass

import gmpy2

from .errors import NonPositiveWeight
from .moments import MomentSequence, WeightSpec
from .mp import BigReal, working_precision
from .orthopoly import Polynomial, poly_mul


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss rule: nodes ascending, weights positive, one stated precision."""

    spec: WeightSpec
    n: int
    nodes: tuple
    weights: tuple
    precision_bits: int

    def __post_init__(self):
        if not (len(self.nodes) == len(self.weights) == self.n):
            raise ValueError("rule size mismatch")
        if any(a >= b for a, b in zip(self.nodes, self.nodes[1:])):
            raise ValueError("nodes must be strictly increasing")


def lagrange_basis(nodes: tuple, j: int) -> Polynomial:
    """Lagrange basis polynomial for node j (1-based), l_j(tau_i) = delta_ij.

    Product of (x - tau_i)/(tau_j - tau_i) over i != j; the empty product
    at n = 1 is the constant 1.
    """
    n = len(nodes)
    if not 1 <= j <= n:
        raise ValueError(f"j must be in 1..{n}, got {j}")
    bits = max(x.precision for x in nodes)
    with working_precision(bits):
        tau_j = nodes[j - 1]
        num = Polynomial((gmpy2.mpfr(1),))
        denom = gmpy2.mpfr(1)
        for i, tau_i in enumerate(nodes):
            if i == j - 1:
                continue
            num = poly_mul(num, Polynomial((-tau_i, gmpy2.mpfr(1))))
            denom = denom * (tau_j - tau_i)
        inv = 1 / denom
        return Polynomial(tuple(c * inv for c in num.coeffs))


def weights_from_nodes(nodes: tuple, mu: MomentSequence) -> tuple:
    """All n weights for the given nodes, via lambda_j = sum_k a_k mu_k.

    Raises NonPositiveWeight if any weight fails to come out positive at
    mu's precision (fatal for the ladder rung that produced the nodes).
    """
    n = len(nodes)
    if mu.r_max < 2 * (n - 1):
        raise ValueError(
            f"need moments up to r = {2 * (n - 1)}, sequence stops at {mu.r_max}"
        )
    out = []
    with working_precision(mu.precision_bits):
        for j in range(1, n + 1):
            basis = lagrange_basis(nodes, j)
            q = poly_mul(basis, basis)
            lam = gmpy2.mpfr(0)
            for k, a_k in enumerate(q.coeffs):
                lam = lam + a_k * mu[k]
            if lam <= 0:
                raise NonPositiveWeight(
                    f"weight {j} evaluated to {lam} at {mu.precision_bits} bits"
                )
            out.append(lam)
    return tuple(out)
