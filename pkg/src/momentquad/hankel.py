"""Recursion coefficients of the monic orthogonal polynomials, from moments.

The coefficients alpha_k, beta_k of the three-term recurrence are ratios of
Hankel moment determinants.  With Delta_0 = 1, Delta'_0 = 0,

    Delta_k  = det(mu_{i+j})            0 <= i, j <= k-1
    Delta'_k = det of the same matrix with its last column
               replaced by (mu_k, ..., mu_{2k-1})^T

the coefficients are

    alpha_k = Delta'_{k+1}/Delta_{k+1} - Delta'_k/Delta_k
    beta_0  = mu_0
    beta_k  = Delta_{k+1} Delta_{k-1} / Delta_k^2          (k >= 1)

Note the base case Delta'_1 = mu_1: at k = 1 the column replacement turns
the 1x1 matrix (mu_0) into (mu_1).  An off-by-one here silently corrupts
alpha_0.

The Hankel determinants of a positive weight function are strictly
positive in exact arithmetic; a computed Delta_k <= 0 means the working
precision has lost that positive-definiteness, reported as IllConditioned
so the caller can raise the bit count.  The replaced-column determinants
carry no sign constraint and are exactly zero for symmetric families
(every odd moment is zero, which zeroes an entire pivot column), so an
exactly singular Delta'_k is recorded as 0 rather than treated as failure.
"""

from __future__ import annotations

from dataclasses import dataclass

import gmpy2

from .errors import IllConditioned, SingularMatrix
from .mp import BigReal, MpMatrix, det_lu, working_precision
from .moments import MomentSequence


@dataclass(frozen=True)
class RecurrenceCoeffs:
    """alpha_0..alpha_{n-1} and beta_0..beta_{n-1} at one precision."""

    alpha: tuple
    beta: tuple
    precision_bits: int

    def __post_init__(self):
        if len(self.alpha) != len(self.beta):
            raise ValueError("alpha and beta must have equal length")

    @property
    def n(self) -> int:
        return len(self.alpha)


def _hankel(mu: MomentSequence, k: int) -> MpMatrix:
    rows = [[mu[i + j] for j in range(k)] for i in range(k)]
    return MpMatrix.from_rows(rows)


def _hankel_shifted(mu: MomentSequence, k: int) -> MpMatrix:
    # last column replaced by (mu_k, ..., mu_{2k-1})^T
    rows = [
        [mu[i + j] for j in range(k - 1)] + [mu[k + i]]
        for i in range(k)
    ]
    return MpMatrix.from_rows(rows)


def recursion_coeffs(mu: MomentSequence, n: int) -> RecurrenceCoeffs:
    """Recurrence coefficients for pi_0..pi_n from mu_0..mu_{2n-1}.

    Raises IllConditioned when any Hankel determinant Delta_k fails to
    come out strictly positive at mu's precision.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if mu.r_max < 2 * n - 1:
        raise ValueError(
            f"need moments up to r = {2 * n - 1}, sequence stops at {mu.r_max}"
        )
    bits = mu.precision_bits
    with working_precision(bits):
        delta = [gmpy2.mpfr(1)]
        dprime = [gmpy2.mpfr(0)]
        for k in range(1, n + 1):
            try:
                d = det_lu(_hankel(mu, k))
            except SingularMatrix as exc:
                raise IllConditioned(
                    f"Hankel determinant Delta_{k} is exactly singular at {bits} bits"
                ) from exc
            if d <= 0:
                raise IllConditioned(
                    f"Hankel determinant Delta_{k} = {d} is not positive at {bits} bits"
                )
            delta.append(d)
            try:
                dp = det_lu(_hankel_shifted(mu, k))
            except SingularMatrix:
                dp = gmpy2.mpfr(0)
            dprime.append(dp)
        alpha = tuple(
            dprime[k + 1] / delta[k + 1] - dprime[k] / delta[k] for k in range(n)
        )
        beta = (+mu[0],) + tuple(
            delta[k + 1] * delta[k - 1] / (delta[k] * delta[k]) for k in range(1, n)
        )
    return RecurrenceCoeffs(alpha=alpha, beta=beta, precision_bits=bits)
