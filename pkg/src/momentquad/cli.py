"""Command-line front end: build rules, export reports, print moments.

Two subcommands:

* ``rule``: run the precision ladder for one weight family and n, write
  a JSON report (or a CSV of the final binary64 rule).
* ``moments``: print a single raw moment at a requested precision.

Settings come from flags, optionally seeded by ``--config FILE`` holding
the same keys as a flat JSON object; flags override the file.  Infinite
support endpoints are spelled "inf" / "-inf".

Exit codes: 0 success, 1 configuration error, 2 a ladder rung failed
numerically, 3 ladder completed but certification was inconclusive.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from math import inf, isinf
from pathlib import Path

import gmpy2

from .errors import MomentQuadError
from .ladder import LadderConfig, LadderReport, run_ladder
from .moments import WeightSpec, moment, registered_families, validate_spec
from .mp import BigReal, format_decimal, sig_digits_for_bits


class ConfigError(Exception):
    """Unusable flags or config file; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on usage errors; 2 here means a rung
    # failure, so usage errors are rerouted through ConfigError instead
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="momentquad",
        description="Gauss quadrature rules from closed-form moment formulas, "
        "with a precision-ladder certificate",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--weight", help="weight family name, e.g. scaled-chi")
        p.add_argument(
            "--param",
            action="append",
            default=[],
            metavar="K=V",
            help="weight parameter, repeatable (e.g. --param m=2)",
        )
        p.add_argument("--config", help="JSON file with the same keys; flags override")
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("-v", "--verbose", action="store_true", default=None)

    rule = sub.add_parser("rule", help="run the precision ladder, export the report")
    common(rule)
    rule.add_argument("-n", "--nodes", dest="n", type=int, help="number of nodes")
    rule.add_argument("--b1", type=int, help="first-rung precision in bits")
    rule.add_argument("--rungs", type=int, help="number of ladder rungs (default 5)")
    rule.add_argument("--step", type=int, help="bit increment per rung (default 34)")
    rule.add_argument("--format", choices=("json", "csv"), help="report format")

    mom = sub.add_parser("moments", help="print one raw moment")
    common(mom)
    mom.add_argument("-r", type=int, help="moment order")
    mom.add_argument("--bits", type=int, help="precision in bits (default 200)")

    return parser


# ---------------------------------------------------------------------------
# config assembly

_RULE_KEYS = {
    "weight", "param", "n", "nodes", "b1", "rungs", "step",
    "out", "format", "verbose",
}
_MOMENTS_KEYS = {"weight", "param", "r", "bits", "out", "verbose"}


def _load_config_file(path: str, allowed: set) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    unknown = set(data) - allowed
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    if "nodes" in data:
        data["n"] = data.pop("nodes")
    return data


def _merged(args: argparse.Namespace, allowed: set) -> dict:
    settings = _load_config_file(args.config, allowed) if args.config else {}
    for key, value in vars(args).items():
        if key in ("command", "config"):
            continue
        if key == "param":
            continue  # merged separately, additive with overrides
        if value is not None:
            settings[key] = value
    return settings


def _param_map(settings: dict, args_param: list) -> dict:
    params: dict[str, float] = {}
    file_params = settings.get("param", {})
    if not isinstance(file_params, dict):
        raise ConfigError('config "param" must be an object of name: value')
    for key, value in file_params.items():
        params[key] = _as_float(value, f"param {key}")
    for item in args_param:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise ConfigError(f"--param needs K=V form, got {item!r}")
        params[key] = _as_float(value, f"param {key}")
    return params


def _as_float(value, label: str) -> float:
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{label} must be a number, got {value!r}") from None


def _as_int(value, label: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{label} must be an integer, got {value!r}")
    return value


def _support_value(token) -> float:
    if token == "inf":
        return inf
    if token == "-inf":
        return -inf
    if isinstance(token, (int, float)) and not isinstance(token, bool):
        return float(token)
    raise ConfigError(f"support endpoint must be a number or inf/-inf, got {token!r}")


def _support_token(value: float):
    if isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


def _build_spec(settings: dict, params: dict) -> WeightSpec:
    weight = settings.get("weight")
    if weight is None:
        raise ConfigError("a weight family is required (--weight or config)")
    families = registered_families()
    if isinstance(weight, dict):
        try:
            name = weight["name"]
            lo, hi = weight["support"]
            listed = weight.get("parameters", [])
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(
                "weight object needs name, support [lo, hi], parameters"
            ) from exc
        support = (_support_value(lo), _support_value(hi))
        parameters = [_as_float(v, "weight parameter") for v in listed]
    elif isinstance(weight, str):
        fam = families.get(weight.lower())
        if fam is None:
            raise ConfigError(f"unknown weight family {weight!r}")
        name = fam.name
        support = fam.support
        parameters = []
    else:
        raise ConfigError("weight must be a family name or an object")

    fam = families.get(name.lower())
    if fam is None:
        raise ConfigError(f"unknown weight family {name!r}")
    if params:
        if not fam.param_names:
            raise ConfigError(f"{fam.name} takes no named parameters")
        unknown = set(params) - set(fam.param_names)
        if unknown:
            raise ConfigError(
                f"unknown parameters for {fam.name}: {sorted(unknown)}; "
                f"expects {list(fam.param_names)}"
            )
        if not parameters:
            missing = [p for p in fam.param_names if p not in params]
            if missing:
                raise ConfigError(f"missing parameters for {fam.name}: {missing}")
            parameters = [params[p] for p in fam.param_names]
        else:
            for i, pname in enumerate(fam.param_names):
                if pname in params:
                    parameters[i] = params[pname]
    spec = WeightSpec(name=name, support=support, parameters=tuple(parameters))
    validate_spec(spec)
    return spec


@dataclass(frozen=True)
class RunConfig:
    """Settled inputs of one `rule` invocation."""

    spec: WeightSpec
    n: int
    rungs: int
    b1: int | None
    step: int
    out: str | None
    format: str
    verbose: bool


def _rule_config(args: argparse.Namespace) -> RunConfig:
    settings = _merged(args, _RULE_KEYS)
    params = _param_map(settings, args.param)
    spec = _build_spec(settings, params)
    if "n" not in settings:
        raise ConfigError("the number of nodes is required (-n or config)")
    return RunConfig(
        spec=spec,
        n=_as_int(settings["n"], "n"),
        rungs=_as_int(settings.get("rungs", 5), "rungs"),
        b1=None if settings.get("b1") is None else _as_int(settings["b1"], "b1"),
        step=_as_int(settings.get("step", 34), "step"),
        out=settings.get("out"),
        format=settings.get("format", "json"),
        verbose=bool(settings.get("verbose", False)),
    )


# ---------------------------------------------------------------------------
# report serialization

D_DIGITS = 6  # d_tau / d_lambda are order-of-magnitude diagnostics


def report_document(report: LadderReport) -> dict:
    """Report as a JSON-ready dict with a fixed key order.

    High-precision vectors are decimal strings with ceil(b_j * 0.302)
    significant digits; final vectors are binary64 JSON numbers.
    """
    spec = report.spec
    cfg = report.config
    rungs = []
    for r in report.rung_results:
        sig = sig_digits_for_bits(r.bits)
        entry = {
            "rung": r.index,
            "bits": r.bits,
            "ok": r.ok,
            "nodes": None if not r.ok else [format_decimal(x, sig) for x in r.rule.nodes],
            "weights": None
            if not r.ok
            else [format_decimal(x, sig) for x in r.rule.weights],
            "failure": r.failure,
        }
        rungs.append(entry)
    return {
        "weight": {
            "name": spec.name,
            "support": [_support_token(s) for s in spec.support],
            "parameters": list(spec.parameters),
        },
        "n": cfg.n,
        "config": {"rungs": cfg.rungs, "b1": cfg.b1, "step": cfg.step},
        "bits": list(report.bits),
        "status": report.status,
        "l_nodes": report.l_nodes,
        "l_weights": report.l_weights,
        "d_tau": [None if d is None else format_decimal(d, D_DIGITS) for d in report.d_tau],
        "d_lambda": [
            None if d is None else format_decimal(d, D_DIGITS) for d in report.d_lambda
        ],
        "rungs": rungs,
        "timings_seconds": [list(row) for row in report.timings],
        "final_nodes": None
        if report.final_nodes is None
        else list(report.final_nodes),
        "final_weights": None
        if report.final_weights is None
        else list(report.final_weights),
        "failures": [{"rung": j, "cause": c} for j, c in report.failures],
    }


def render_report(report: LadderReport) -> str:
    return json.dumps(report_document(report), indent=2) + "\n"


def render_csv(report: LadderReport) -> str:
    """Final binary64 rule only, two columns; empty below header on failure."""
    lines = ["node,weight"]
    if report.final_nodes is not None:
        for x, w in zip(report.final_nodes, report.final_weights):
            lines.append(f"{x!r},{w!r}")
    return "\n".join(lines) + "\n"


def format_positional(x: BigReal, sig_digits: int) -> str:
    """Plain decimal rendering; scientific only for extreme magnitudes."""
    if gmpy2.is_zero(x):
        return "0"
    if not gmpy2.is_finite(x):
        return format_decimal(x, sig_digits)
    digits, exp, _ = x.digits(10, sig_digits)
    sign = ""
    if digits.startswith("-"):
        sign, digits = "-", digits[1:]
    if exp < -6 or exp > sig_digits + 6:
        return format_decimal(x, sig_digits)
    if exp <= 0:
        return sign + "0." + "0" * (-exp) + digits
    if exp >= len(digits):
        return sign + digits + "0" * (exp - len(digits))
    return sign + digits[:exp] + "." + digits[exp:]


# ---------------------------------------------------------------------------
# subcommands

def _write_output(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_rule(rc: RunConfig) -> int:
    try:
        cfg = LadderConfig(n=rc.n, rungs=rc.rungs, b1=rc.b1, step=rc.step)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    print("bits:", " ".join(str(b) for b in cfg.bit_sequence()), file=sys.stderr)
    report = run_ladder(rc.spec, cfg)
    if rc.verbose:
        for r in report.rung_results:
            if r.ok:
                total = sum(r.timings)
                print(f"rung {r.index} ({r.bits} bits): ok in {total:.3f}s", file=sys.stderr)
            else:
                print(f"rung {r.index} ({r.bits} bits): {r.failure}", file=sys.stderr)
    text = render_report(report) if rc.format == "json" else render_csv(report)
    _write_output(text, rc.out)
    status = report.status
    if status == "rung-failed":
        for j, cause in report.failures:
            print(f"rung {j} failed: {cause}", file=sys.stderr)
        return 2
    if status == "inconclusive":
        print(
            "inconclusive: binary64 outputs of the two highest rungs disagree; "
            "raise --b1 or --rungs",
            file=sys.stderr,
        )
        return 3
    return 0


def cmd_moments(args: argparse.Namespace) -> int:
    settings = _merged(args, _MOMENTS_KEYS)
    params = _param_map(settings, args.param)
    spec = _build_spec(settings, params)
    if "r" not in settings:
        raise ConfigError("the moment order is required (-r or config)")
    r = _as_int(settings["r"], "r")
    bits = _as_int(settings.get("bits", 200), "bits")
    if r < 0:
        raise ConfigError(f"r must be >= 0, got {r}")
    if bits < 53:
        raise ConfigError(f"bits must be >= 53, got {bits}")
    value = moment(spec, r, bits)
    text = format_positional(value, sig_digits_for_bits(bits)) + "\n"
    _write_output(text, settings.get("out"))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "rule":
            return cmd_rule(_rule_config(args))
        return cmd_moments(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except MomentQuadError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
