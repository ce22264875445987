"""Root isolation and refinement for the monic orthogonal polynomial pi_n.

The n Gauss nodes are the roots of pi_n: all real, simple, and strictly
inside the support of the weight function.  They are found in three moves:

1. Laguerre's bounds (from the Samuelson inequality) give an interval
   containing every root of a real-rooted polynomial, using only the two
   leading coefficients.
2. The interval, clipped to the weight's support, is divided into 100*n
   equal cells; a sign scan over the 100*n + 1 grid points brackets each
   root between adjacent sign changes.
3. Brent's method (bisection + secant + inverse quadratic interpolation,
   Brent 1973 ch. 4) refines each bracket, entirely in BigReal.
"""

from __future__ import annotations

from dataclasses import dataclass

import gmpy2

from .errors import (
    BracketCountMismatch,
    EmptyIntersection,
    NegativeVariance,
    NoConvergence,
)
from .moments import WeightSpec
from .mp import BigReal, working_precision
from .orthopoly import Polynomial, poly_eval


@dataclass(frozen=True)
class RootBracket:
    """Interval [lo, hi] containing exactly one root.

    lo == hi marks a degenerate bracket: the root was hit exactly by a
    scan grid point.  Otherwise lo < hi and the polynomial changes sign
    between the endpoints.
    """

    lo: BigReal
    hi: BigReal

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("bracket endpoints out of order")

    @property
    def width(self) -> BigReal:
        return self.hi - self.lo


def laguerre_bounds(p: Polynomial) -> tuple[BigReal, BigReal]:
    """Interval containing all roots of a monic real-rooted polynomial.

    With s1 = sum of roots and s2 = sum of squared roots read off the two
    leading coefficients, root mean rm = s1/n and variance v = s2/n - rm^2,
    every root lies in rm +/- sqrt((n-1) v).  Tight at n = 2 (the bounds
    are then the roots themselves).
    """
    n = p.degree
    if n < 2:
        raise ValueError(f"bounds need degree >= 2, got {n}")
    bits = p.precision_bits
    with working_precision(bits):
        a1 = p.coeffs[n - 1]
        a2 = p.coeffs[n - 2]
        s1 = -a1
        s2 = a1 * a1 - 2 * a2
        rm = s1 / n
        v = s2 / n - rm * rm
        if v < 0:
            scale = max(abs(s2) / n, rm * rm, gmpy2.mpfr(1))
            if abs(v) > scale * gmpy2.exp2(-(bits // 2)):
                raise NegativeVariance(
                    f"root variance {v} < 0; coefficients corrupted upstream"
                )
            v = gmpy2.mpfr(0)
        half_width = gmpy2.sqrt((n - 1) * v)
        return rm - half_width, rm + half_width


def clip_to_support(
    bounds: tuple[BigReal, BigReal], support: tuple[float, float]
) -> tuple[BigReal, BigReal]:
    """Intersect the root bounds with the weight's support interval.

    Infinite support endpoints leave the corresponding bound in place.
    """
    lo, hi = bounds
    s_lo, s_hi = support
    if gmpy2.is_finite(gmpy2.mpfr(s_lo)):
        lo = max(lo, gmpy2.mpfr(s_lo))
    if gmpy2.is_finite(gmpy2.mpfr(s_hi)):
        hi = min(hi, gmpy2.mpfr(s_hi))
    if not lo < hi:
        raise EmptyIntersection(
            f"root bounds {bounds} do not meet support {support}"
        )
    return lo, hi


def isolate_roots(p: Polynomial, interval: tuple[BigReal, BigReal]) -> list[RootBracket]:
    """Bracket the deg(p) roots by a sign scan over a uniform grid.

    The interval is divided into 100*deg(p) equal cells.  A grid point
    where p evaluates exactly to zero yields a degenerate bracket; every
    adjacent pair of nonzero values with opposite signs yields one
    bracket.  Raises BracketCountMismatch unless exactly deg(p) brackets
    emerge.
    """
    n = p.degree
    lo, hi = interval
    cells = 100 * n
    with working_precision(p.precision_bits):
        h = (hi - lo) / cells
        xs = [lo + i * h for i in range(cells)] + [hi]
        vals = [poly_eval(p, x) for x in xs]
        brackets: list[RootBracket] = []
        for x, v in zip(xs, vals):
            if gmpy2.is_zero(v):
                brackets.append(RootBracket(lo=x, hi=x))
        for i in range(cells):
            va, vb = vals[i], vals[i + 1]
            if gmpy2.is_zero(va) or gmpy2.is_zero(vb):
                continue
            if gmpy2.sign(va) != gmpy2.sign(vb):
                brackets.append(RootBracket(lo=xs[i], hi=xs[i + 1]))
        brackets.sort(key=lambda b: (b.lo, b.hi))
    if len(brackets) != n:
        raise BracketCountMismatch(
            f"found {len(brackets)} brackets for {n} roots "
            f"on {float(lo):.6g}..{float(hi):.6g} with {cells} cells"
        )
    return brackets


def refine_tolerance(bits: int, width: BigReal) -> BigReal:
    """Refinement tolerance tied to the working precision.

    max(2^-(bits-10), width * 2^-(bits-10)): absolute floor for roots
    near zero, relative to interval width otherwise.
    """
    unit = gmpy2.exp2(-(bits - 10))
    return max(unit, width * unit)


def brent_refine(p: Polynomial, bracket: RootBracket, tol: BigReal) -> BigReal:
    """Refine a bracketed root to within tol by Brent's method.

    Bisection, secant, and inverse quadratic interpolation combined per
    Brent (1973), run entirely in BigReal at p's precision.  A degenerate
    bracket returns its point immediately.  Raises NoConvergence after
    4 * precision_bits iterations (bisection alone needs about one
    iteration per bit).
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    bits = p.precision_bits
    with working_precision(bits):
        if bracket.lo == bracket.hi:
            return +bracket.lo
        eps = gmpy2.exp2(1 - bits)
        a, b = bracket.lo, bracket.hi
        fa, fb = poly_eval(p, a), poly_eval(p, b)
        if gmpy2.is_zero(fa):
            return +a
        if gmpy2.is_zero(fb):
            return +b
        if gmpy2.sign(fa) == gmpy2.sign(fb):
            raise ValueError("bracket endpoints do not straddle a root")
        c, fc = a, fa
        d = e = b - a
        for _ in range(4 * bits):
            if abs(fc) < abs(fb):
                a, b, c = b, c, b
                fa, fb, fc = fb, fc, fb
            tol1 = 2 * eps * abs(b) + tol / 2
            xm = (c - b) / 2
            if abs(xm) <= tol1 or gmpy2.is_zero(fb):
                return +b
            if abs(e) >= tol1 and abs(fa) > abs(fb):
                s = fb / fa
                if a == c:
                    # secant step
                    pp = 2 * xm * s
                    q = 1 - s
                else:
                    # inverse quadratic interpolation
                    q = fa / fc
                    r = fb / fc
                    pp = s * (2 * xm * q * (q - r) - (b - a) * (r - 1))
                    q = (q - 1) * (r - 1) * (s - 1)
                if pp > 0:
                    q = -q
                pp = abs(pp)
                if 2 * pp < min(3 * xm * q - abs(tol1 * q), abs(e * q)):
                    e = d
                    d = pp / q
                else:
                    d = xm
                    e = d
            else:
                d = xm
                e = d
            a, fa = b, fb
            if abs(d) > tol1:
                b = b + d
            else:
                b = b + (tol1 if xm > 0 else -tol1)
            fb = poly_eval(p, b)
            if gmpy2.is_zero(fb):
                return +b
            if gmpy2.sign(fb) == gmpy2.sign(fc):
                c, fc = a, fa
                d = e = b - a
    raise NoConvergence(f"Brent refinement did not converge in {4 * bits} iterations")


def nodes(p: Polynomial, spec: WeightSpec) -> tuple:
    """All roots of pi_n, ascending, at p's precision.

    Orchestrates bounds -> support clip -> sign-scan isolation -> Brent
    refinement.  Degree 1 is solved directly.  The Laguerre bounds are
    padded outward by a relative 2^-(bits//2) before clipping: at n = 2
    the bounds equal the roots exactly, and an inward rounding error of
    one ulp would silently hide a sign change from the scan.
    """
    n = p.degree
    if n < 1:
        raise ValueError("pi_n must have degree >= 1")
    bits = p.precision_bits
    with working_precision(bits):
        if n == 1:
            # + 0 normalizes -0.0 so a symmetric family's single node is +0
            return (-p.coeffs[0] / p.coeffs[1] + 0,)
        b_lo, b_hi = laguerre_bounds(p)
        pad = (b_hi - b_lo) * gmpy2.exp2(-(bits // 2))
        interval = clip_to_support((b_lo - pad, b_hi + pad), spec.support)
        brackets = isolate_roots(p, interval)
        tol = refine_tolerance(bits, interval[1] - interval[0])
        roots = tuple(brent_refine(p, br, tol) for br in brackets)
    return roots
