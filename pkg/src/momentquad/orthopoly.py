"""Dense polynomials over BigReal and the monic orthogonal-polynomial sequence.

Polynomials are coefficient vectors, coeffs[i] multiplying x^i.  The monic
sequence follows the three-term recurrence

    pi_{k+1}(x) = (x - alpha_k) pi_k(x) - beta_k pi_{k-1}(x)

with pi_0 = 1 and pi_{-1} = 0.  Coefficients are kept as computed; no
near-zero cleanup is applied, since thresholding would perturb root
locations unpredictably.
"""

from __future__ import annotations

from dataclasses import dataclass

import gmpy2

from .hankel import RecurrenceCoeffs
from .mp import BigReal, working_precision


@dataclass(frozen=True)
class Polynomial:
    """coeffs[i] is the coefficient of x^i; degree = len(coeffs) - 1."""

    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("polynomial needs at least one coefficient")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def precision_bits(self) -> int:
        # pipeline-produced polynomials carry one uniform precision
        return max(c.precision for c in self.coeffs)


def poly_eval(p: Polynomial, x: BigReal) -> BigReal:
    """Horner evaluation at the ambient working precision."""
    acc = gmpy2.mpfr(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    """Coefficient convolution at the ambient working precision."""
    out = [gmpy2.mpfr(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, ca in enumerate(a.coeffs):
        for j, cb in enumerate(b.coeffs):
            out[i + j] = out[i + j] + ca * cb
    return Polynomial(tuple(out))


def poly_derivative(p: Polynomial) -> Polynomial:
    """Formal derivative at the ambient working precision."""
    if p.degree == 0:
        return Polynomial((gmpy2.mpfr(0),))
    return Polynomial(tuple(i * c for i, c in enumerate(p.coeffs) if i > 0))


def monic_sequence(rc: RecurrenceCoeffs, n: int) -> list[Polynomial]:
    """pi_0..pi_n from the recurrence coefficients, at rc's precision.

    Each pi_k has exact degree k; the leading coefficient is exactly 1
    because it enters only through the x * pi_k shift.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n > 0 and rc.n < n:
        raise ValueError(f"need {n} coefficient pairs, rc carries {rc.n}")
    with working_precision(rc.precision_bits):
        seq = [Polynomial((gmpy2.mpfr(1),))]
        if n == 0:
            return seq
        prev = None
        cur = seq[0]
        for k in range(n):
            a_k, b_k = rc.alpha[k], rc.beta[k]
            nxt = [gmpy2.mpfr(0)] * (k + 2)
            for i, c in enumerate(cur.coeffs):
                nxt[i + 1] = nxt[i + 1] + c
            for i, c in enumerate(cur.coeffs):
                nxt[i] = nxt[i] - a_k * c
            if prev is not None:
                for i, c in enumerate(prev.coeffs):
                    nxt[i] = nxt[i] - b_k * c
            prev, cur = cur, Polynomial(tuple(nxt))
            seq.append(cur)
        return seq
