"""Independent verification oracles for the classical weight families.

Two kinds of ground truth, both independent of the moment-determinant
pipeline:

* :func:`classical_coeffs` returns the textbook closed forms of the
  recurrence coefficients for Hermite, Legendre, and generalized
  Laguerre weights.
* :func:`reference_rule` returns classical rules computed by an
  independent route: closed-form algebra for n <= 2, and for n in
  {4, 16} sixty-digit tables checked in as fixtures, regenerable
  bit-identically with scripts/generate_reference_rules.py (which uses
  a different arithmetic substrate, root finder, and weight formula
  than the library).
"""

from __future__ import annotations

from importlib import resources

import gmpy2

from ..moments import WeightSpec, gen_laguerre, hermite, legendre
from ..mp import BigReal, working_precision
from ..weights import QuadratureRule

FIXTURE_BITS = 256  # holds 60 decimal digits with room to spare
FIXTURE_SIZES = (4, 16)


def _classical_spec(family: str, alpha: float | None) -> WeightSpec:
    fam = family.lower()
    if fam == "hermite":
        if alpha is not None:
            raise ValueError("hermite takes no alpha")
        return hermite()
    if fam == "legendre":
        if alpha is not None:
            raise ValueError("legendre takes no alpha")
        return legendre()
    if fam == "gen-laguerre":
        if alpha is None:
            raise ValueError("gen-laguerre requires alpha")
        return gen_laguerre(alpha)
    raise ValueError(f"unknown classical family {family!r}")


def classical_coeffs(
    family: str, k: int, bits: int = FIXTURE_BITS, *, alpha: float | None = None
) -> tuple[BigReal, BigReal]:
    """Closed-form (alpha_k, beta_k) for a classical family.

    hermite:       alpha_k = 0;           beta_0 = sqrt(pi), beta_k = k/2
    legendre:      alpha_k = 0;           beta_0 = 2, beta_k = 1/(4 - k^-2)
    gen-laguerre:  alpha_k = 2k+alpha+1;  beta_0 = Gamma(1+alpha),
                                          beta_k = k(k+alpha)
    """
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    spec = _classical_spec(family, alpha)
    with working_precision(bits):
        if spec.name == "hermite":
            a = gmpy2.mpfr(0)
            b = gmpy2.sqrt(gmpy2.const_pi()) if k == 0 else gmpy2.mpfr(k) / 2
        elif spec.name == "legendre":
            a = gmpy2.mpfr(0)
            if k == 0:
                b = gmpy2.mpfr(2)
            else:
                kk = gmpy2.mpfr(k)
                b = 1 / (4 - 1 / (kk * kk))
        else:
            al = gmpy2.mpfr(alpha)
            a = 2 * k + al + 1
            b = gmpy2.gamma(1 + al) if k == 0 else k * (k + al)
        return a, b


def _rule_from_coeffs(spec: WeightSpec, family: str, n: int, alpha: float | None) -> QuadratureRule:
    """n <= 2 rules by direct algebra on the closed-form coefficients.

    pi_1 = x - alpha_0 has root alpha_0 with weight mu_0 = beta_0.
    pi_2 = (x - alpha_0)(x - alpha_1) - beta_1 has roots c -/+ sqrt(disc)
    with c = (alpha_0 + alpha_1)/2 and disc = ((alpha_1 - alpha_0)/2)^2
    + beta_1; the two weights solve the 2x2 moment system with
    mu_0 = beta_0 and mu_1 = alpha_0 beta_0.
    """
    with working_precision(FIXTURE_BITS):
        a0, b0 = classical_coeffs(family, 0, FIXTURE_BITS, alpha=alpha)
        if n == 1:
            return QuadratureRule(
                spec=spec,
                n=1,
                nodes=(a0,),
                weights=(b0,),
                precision_bits=FIXTURE_BITS,
            )
        a1, b1 = classical_coeffs(family, 1, FIXTURE_BITS, alpha=alpha)
        center = (a0 + a1) / 2
        half_gap = (a1 - a0) / 2
        spread = gmpy2.sqrt(half_gap * half_gap + b1)
        t1, t2 = center - spread, center + spread
        mu0 = b0
        mu1 = a0 * b0
        w1 = (mu1 - mu0 * t2) / (t1 - t2)
        w2 = mu0 - w1
        return QuadratureRule(
            spec=spec,
            n=2,
            nodes=(t1, t2),
            weights=(w1, w2),
            precision_bits=FIXTURE_BITS,
        )


def fixture_name(family: str, n: int, alpha: float | None = None) -> str:
    fam = family.lower()
    if fam == "gen-laguerre":
        return f"gen-laguerre_alpha{alpha:g}_n{n}.txt"
    return f"{fam}_n{n}.txt"


def parse_fixture(text: str) -> tuple[dict, list[str]]:
    """Split a fixture file into its header mapping and value lines."""
    header: dict[str, str] = {}
    values: list[str] = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line.lstrip("#").strip()
            if ":" in body:
                key, _, val = body.partition(":")
                header[key.strip()] = val.strip()
            continue
        values.append(line)
    return header, values


def reference_rule(
    family: str, n: int, *, alpha: float | None = None
) -> QuadratureRule:
    """Independent reference rule for a classical family at 256 bits.

    n <= 2 comes from closed-form algebra; n in {4, 16} from the checked-in
    sixty-digit fixtures.
    """
    spec = _classical_spec(family, alpha)
    if n <= 2:
        return _rule_from_coeffs(spec, family.lower(), n, alpha)
    if n not in FIXTURE_SIZES:
        raise ValueError(f"no reference rule for n={n}; have n <= 2 and {FIXTURE_SIZES}")
    name = fixture_name(family, n, alpha)
    text = resources.files(__package__).joinpath("fixtures", name).read_text()
    header, values = parse_fixture(text)
    if int(header["n"]) != n:
        raise ValueError(f"fixture {name} header n={header['n']} != {n}")
    if len(values) != 2 * n:
        raise ValueError(f"fixture {name} carries {len(values)} values, want {2 * n}")
    with working_precision(FIXTURE_BITS):
        nodes = tuple(gmpy2.mpfr(v) for v in values[:n])
        weights = tuple(gmpy2.mpfr(v) for v in values[n:])
    return QuadratureRule(
        spec=spec, n=n, nodes=nodes, weights=weights, precision_bits=FIXTURE_BITS
    )
