"""Weight-function catalog: registered families with closed-form raw moments.

Each family supplies a closed-form formula for the raw moment
``mu_r = integral of x^r f(x) dx`` evaluated at arbitrary precision.  Four
families ship built in:

============  =============  ==========================================
name          support        moment formula
============  =============  ==========================================
scaled-chi    (0, inf)       (2/m)^(r/2) * Gamma((r+m)/2) / Gamma(m/2)
hermite       (-inf, inf)    Gamma((r+1)/2) for even r, 0 for odd r
legendre      [-1, 1]        2/(r+1) for even r, 0 for odd r
gen-laguerre  [0, inf)       Gamma(r + alpha + 1)
============  =============  ==========================================

``scaled-chi`` is the law of R/sqrt(m) for R ~ chi with m degrees of
freedom; its moments are evaluated in log space so large m and r do not
overflow the Gamma function.  New families are added with
:func:`register_weight`.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from math import inf
from typing import Callable, Sequence

import gmpy2

from .errors import DuplicateName, InvalidParameter, UnknownWeight
from .mp import BigReal, working_precision


@dataclass(frozen=True)
class WeightSpec:
    """Declarative description of a weight function.

    support endpoints are binary64 extended reals; math.inf marks an
    infinite endpoint.  parameters is the family's parameter vector
    (empty for hermite and legendre).
    """

    name: str
    support: tuple[float, float]
    parameters: tuple[float, ...] = ()


@dataclass(frozen=True)
class MomentSequence:
    """Raw moments mu_0..mu_{r_max} of one weight spec at one precision."""

    spec: WeightSpec
    precision_bits: int
    values: tuple

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, r: int) -> BigReal:
        return self.values[r]

    @property
    def r_max(self) -> int:
        return len(self.values) - 1


# formula signature: (parameters, r, bits) -> BigReal, called inside a
# working_precision(bits) context
MomentFormula = Callable[[tuple, int, int], BigReal]
ParameterValidator = Callable[[tuple], None]


@dataclass(frozen=True)
class _Family:
    name: str
    support: tuple[float, float]
    validator: ParameterValidator
    formula: MomentFormula
    param_names: tuple[str, ...]


_REGISTRY: dict[str, _Family] = {}


def register_weight(
    name: str,
    support: tuple[float, float],
    parameter_validator: ParameterValidator,
    moment_formula: MomentFormula,
    *,
    param_names: tuple[str, ...] = (),
) -> None:
    """Register a weight family under ``name`` (case-insensitive, unique).

    ``moment_formula(parameters, r, bits)`` must return mu_r as a BigReal;
    it runs inside a working-precision context of ``bits`` bits.
    ``param_names`` optionally names the parameter slots so the CLI can
    accept them as ``--param name=value``.
    """
    key = name.lower()
    if key in _REGISTRY:
        raise DuplicateName(f"weight family {name!r} is already registered")
    lo, hi = support
    if not lo < hi:
        raise InvalidParameter(f"support must satisfy lo < hi, got {support}")
    _REGISTRY[key] = _Family(
        name=name,
        support=(float(lo), float(hi)),
        validator=parameter_validator,
        formula=moment_formula,
        param_names=tuple(param_names),
    )


def family_for(spec: WeightSpec) -> _Family:
    try:
        return _REGISTRY[spec.name.lower()]
    except KeyError:
        raise UnknownWeight(f"no weight family registered under {spec.name!r}") from None


def registered_families() -> dict[str, _Family]:
    """Snapshot of the registry keyed by canonical (lowercase) name."""
    return dict(_REGISTRY)


def validate_spec(spec: WeightSpec) -> None:
    """Check spec against its registered family.

    Raises UnknownWeight for an unregistered name and InvalidParameter for
    a support mismatch or a parameter vector the family rejects.
    """
    fam = family_for(spec)
    if tuple(spec.support) != fam.support:
        raise InvalidParameter(
            f"{fam.name} support is {fam.support}, got {tuple(spec.support)}"
        )
    fam.validator(spec.parameters)


def moment(spec: WeightSpec, r: int, bits: int) -> BigReal:
    """The raw moment mu_r of ``spec`` at ``bits`` bits of precision."""
    if r < 0:
        raise ValueError(f"moment order must be nonnegative, got {r}")
    validate_spec(spec)
    return _moment_cached(spec.name.lower(), spec.parameters, r, bits)


@functools.lru_cache(maxsize=None)
def _moment_cached(key: str, parameters: tuple, r: int, bits: int) -> BigReal:
    fam = _REGISTRY[key]
    with working_precision(bits):
        return fam.formula(parameters, r, bits)


def moment_sequence(spec: WeightSpec, r_max: int, bits: int) -> MomentSequence:
    """Moments mu_0..mu_{r_max} of ``spec``, all at ``bits`` bits."""
    if r_max < 0:
        raise ValueError(f"r_max must be nonnegative, got {r_max}")
    values = tuple(moment(spec, r, bits) for r in range(r_max + 1))
    return MomentSequence(spec=spec, precision_bits=bits, values=values)


# ---------------------------------------------------------------------------
# built-in families


def _require_no_params(label: str) -> ParameterValidator:
    def validator(parameters: tuple) -> None:
        if parameters:
            raise InvalidParameter(f"{label} takes no parameters, got {parameters}")

    return validator


def _scaled_chi_validator(parameters: tuple) -> None:
    if len(parameters) != 1:
        raise InvalidParameter(
            f"scaled-chi takes exactly one parameter m, got {parameters}"
        )
    if not parameters[0] > 0:
        raise InvalidParameter(f"scaled-chi requires m > 0, got m={parameters[0]}")


def _scaled_chi_moment(parameters: tuple, r: int, bits: int) -> BigReal:
    # E[(R/sqrt(m))^r] for R ~ chi_m, in log space to dodge Gamma overflow
    if r == 0:
        return gmpy2.mpfr(1)
    m = gmpy2.mpfr(parameters[0])
    half_r = gmpy2.mpfr(r) / 2
    log_scale = half_r * gmpy2.log(2 / m)
    lg_num, _ = gmpy2.lgamma((r + m) / 2)
    lg_den, _ = gmpy2.lgamma(m / 2)
    return gmpy2.exp(log_scale + lg_num - lg_den)


def _hermite_moment(parameters: tuple, r: int, bits: int) -> BigReal:
    if r % 2 == 1:
        return gmpy2.mpfr(0)
    return gmpy2.gamma(gmpy2.mpfr(r + 1) / 2)


def _legendre_moment(parameters: tuple, r: int, bits: int) -> BigReal:
    if r % 2 == 1:
        return gmpy2.mpfr(0)
    return gmpy2.mpfr(2) / (r + 1)


def _gen_laguerre_validator(parameters: tuple) -> None:
    if len(parameters) != 1:
        raise InvalidParameter(
            f"gen-laguerre takes exactly one parameter alpha, got {parameters}"
        )
    if not parameters[0] > -1:
        raise InvalidParameter(
            f"gen-laguerre requires alpha > -1, got alpha={parameters[0]}"
        )


def _gen_laguerre_moment(parameters: tuple, r: int, bits: int) -> BigReal:
    alpha = gmpy2.mpfr(parameters[0])
    return gmpy2.gamma(r + alpha + 1)


register_weight(
    "scaled-chi",
    (0.0, inf),
    _scaled_chi_validator,
    _scaled_chi_moment,
    param_names=("m",),
)
register_weight("hermite", (-inf, inf), _require_no_params("hermite"), _hermite_moment)
register_weight("legendre", (-1.0, 1.0), _require_no_params("legendre"), _legendre_moment)
register_weight(
    "gen-laguerre",
    (0.0, inf),
    _gen_laguerre_validator,
    _gen_laguerre_moment,
    param_names=("alpha",),
)


def scaled_chi(m: float) -> WeightSpec:
    """Weight of R/sqrt(m), R ~ chi with m degrees of freedom; m > 0."""
    spec = WeightSpec("scaled-chi", (0.0, inf), (float(m),))
    validate_spec(spec)
    return spec


def hermite() -> WeightSpec:
    """exp(-x^2) on the whole real line."""
    return WeightSpec("hermite", (-inf, inf))


def legendre() -> WeightSpec:
    """Constant weight 1 on [-1, 1]."""
    return WeightSpec("legendre", (-1.0, 1.0))


def gen_laguerre(alpha: float) -> WeightSpec:
    """x^alpha exp(-x) on [0, inf); alpha > -1."""
    spec = WeightSpec("gen-laguerre", (0.0, inf), (float(alpha),))
    validate_spec(spec)
    return spec
