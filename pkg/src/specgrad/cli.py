"""Command-line front end: apply operators, tabulate kernels, run oracles.

Commands: ``apply``, ``kernel``, ``verify``.  A JSON config document can
supply any option; command-line flags override config fields.  Complex
beta components are written as [re, im] pairs in config files; the flags
accept real components.  Exit codes: 0 success, 1 verification failure,
2 usage/config error, 3 numeric/domain error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import fieldio, oracles, operators
from .grid import Field, Grid, make_grid, sample_field
from .symbols import EvalDomainError, ParseError, parse, unparse

SEED_ENV_VAR = "SPECGRAD_SEED"

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3

BUILTINS = (
    "inverse-derivative",
    "sgn-kernel",
    "shifted-derivative",
    "fresnel-cos",
    "heat-smooth",
    "shift",
)


class _StageError(Exception):
    """Wraps an error with the pipeline stage it occurred in."""

    def __init__(self, stage: str, err: Exception):
        super().__init__(f"{stage}: {err}")
        self.stage = stage
        self.err = err


def _fail(stage: str, err: Exception):
    raise _StageError(stage, err) from err


# ---------------------------------------------------------------------------
# config / flag merging
# ---------------------------------------------------------------------------


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as err:
        _fail("config", err)
    if not isinstance(doc, dict):
        _fail("config", ValueError("config document must be a JSON object"))
    return doc


def _merged(args, config: dict, flag: str, *config_path: str, default=None):
    value = getattr(args, flag, None)
    if value is not None:
        return value
    node = config
    for key in config_path:
        if not isinstance(node, dict) or key not in node:
            return default
        node = node[key]
    return node


def _beta_components(raw) -> tuple[complex, ...]:
    comps = []
    for item in raw:
        if isinstance(item, (list, tuple)):
            if len(item) != 2:
                raise ValueError(f"complex beta component must be [re, im], got {item!r}")
            comps.append(complex(float(item[0]), float(item[1])))
        else:
            comps.append(complex(float(item)))
    return tuple(comps)


def _build_grid(args, config: dict) -> Grid:
    n = _merged(args, config, "grid_n", "grid", "n")
    spacing = _merged(args, config, "grid_spacing", "grid", "spacing")
    origin = _merged(args, config, "grid_origin", "grid", "origin")
    if n is None or spacing is None:
        raise ValueError("grid requires --grid-n and --grid-spacing (or a config grid section)")
    dims = len(n)
    return make_grid(dims, n, spacing, origin if origin is not None else [0.0] * dims)


def _load_input_field(args, config: dict):
    expr = _merged(args, config, "field_expr", "field", "expression")
    path = _merged(args, config, "field_file", "field", "path")
    if (expr is None) == (path is None):
        raise ValueError("exactly one input-field source is required (--field-expr or --field-file)")
    if path is not None:
        try:
            if str(path).endswith(".json"):
                field = fieldio.read_field_json(path)
            else:
                field = fieldio.read_field_csv(path)
        except OSError as err:
            _fail("input-field", err)
        grid_flags_present = getattr(args, "grid_n", None) is not None or "grid" in config
        if grid_flags_present:
            declared = _build_grid(args, config)
            if declared != field.grid:
                raise ValueError("declared grid does not match the grid stored in the field file")
        return field, field.grid
    grid = _build_grid(args, config)
    return sample_field(expr, grid), grid


# ---------------------------------------------------------------------------
# apply
# ---------------------------------------------------------------------------


def _apply_builtin(name: str, field: Field, beta: tuple[complex, ...] | None, alpha) -> Field:
    def one_beta() -> complex:
        if beta is None or len(beta) != 1:
            raise ValueError(f"--builtin {name} takes exactly one beta component")
        return beta[0]

    if name == "inverse-derivative":
        return operators.inverse_derivative(field, one_beta())
    if name == "sgn-kernel":
        return operators.sgn_kernel_apply(field, one_beta())
    if name == "shifted-derivative":
        return operators.shifted_derivative_apply(field, one_beta().real)
    if name == "fresnel-cos":
        return operators.fresnel_cos_apply(field, one_beta().real)
    if name == "heat-smooth":
        if alpha is None:
            raise ValueError("--builtin heat-smooth requires --alpha")
        return operators.heat_smooth_realspace(field, float(alpha))
    if name == "shift":
        if beta is None:
            raise ValueError("--builtin shift requires --beta")
        return operators.shift_field(field, [b.real for b in beta])
    raise ValueError(f"unknown builtin {name!r}")


def cmd_apply(args) -> int:
    config = _load_config(args.config)
    try:
        field, grid = _load_input_field(args, config)
    except _StageError:
        raise
    except Exception as err:
        _fail("input-field", err)

    symbol_text = _merged(args, config, "symbol", "operator", "symbol")
    builtin = _merged(args, config, "builtin", "operator", "builtin")
    kind = _merged(args, config, "kind", "operator", "kind", default="dot-gradient")
    beta_raw = _merged(args, config, "beta", "operator", "beta")
    alpha = _merged(args, config, "alpha", "operator", "alpha")
    out_path = _merged(args, config, "out", "out")
    out_json = _merged(args, config, "out_json", "out_json")
    if out_path is None and out_json is None:
        _fail("config", ValueError("an output path is required (--out or --out-json)"))
    if (symbol_text is None) == (builtin is None):
        _fail("config", ValueError("exactly one of --symbol or --builtin is required"))

    beta = None
    if beta_raw is not None:
        try:
            beta = _beta_components(beta_raw)
        except ValueError as err:
            _fail("config", err)

    if builtin is not None:
        try:
            result = _apply_builtin(builtin, field, beta, alpha)
        except (ValueError, ParseError) as err:
            _fail("operator", err)
        summary = {"builtin": builtin}
    else:
        try:
            symbol = parse(symbol_text, allowed_vars={"z"})
        except ParseError as err:
            _fail("symbol", err)
        try:
            spec = operators.OperatorSpec(symbol, kind, beta)
            mult = operators.build_multiplier(spec, grid)
            result = operators.apply_multiplier(mult, field)
        except EvalDomainError as err:
            hint = (
                "; try: specgrad apply --builtin inverse-derivative"
                if "inverse_derivative" in str(err)
                else ""
            )
            _fail("operator", EvalDomainError(f"{err}{hint}", flat_index=err.flat_index))
        except (ValueError, ArithmeticError) as err:
            _fail("operator", err)
        summary = operators.stability_report(mult)

    try:
        if out_path is not None:
            fieldio.write_field_csv(result, out_path)
        if out_json is not None:
            fieldio.write_field_json(result, out_json)
    except OSError as err:
        _fail("output", err)
    print(json.dumps(summary))
    return EXIT_OK


# ---------------------------------------------------------------------------
# kernel
# ---------------------------------------------------------------------------

# closed-form kernels, keyed by the canonical (unparsed) symbol text
def _fresnel_closed(rho: np.ndarray, beta: complex) -> np.ndarray:
    b = beta.real
    return np.cos(rho**2 / (4 * b**2) - np.pi / 4) / (math.sqrt(4 * math.pi) * b)


def _gaussian_closed(rho: np.ndarray, beta: complex) -> np.ndarray:
    alpha = beta.real**2
    return np.exp(-(rho**2) / (4 * alpha)) / math.sqrt(4 * math.pi * alpha)


_CLOSED_FORM_KERNELS = {
    "cos(z^2)": ("fresnel-cosine", _fresnel_closed),
    "exp(z^2)": ("gaussian", _gaussian_closed),
}


def cmd_kernel(args) -> int:
    config = _load_config(args.config)
    symbol_text = _merged(args, config, "symbol", "operator", "symbol")
    beta_raw = _merged(args, config, "beta", "operator", "beta")
    out_path = _merged(args, config, "out", "out")
    oversample = _merged(args, config, "oversample", "oversample", default=8)
    if symbol_text is None or beta_raw is None or out_path is None:
        _fail("config", ValueError("kernel requires --symbol, --beta and --out"))
    try:
        beta = _beta_components(beta_raw)
        if len(beta) != 1:
            raise ValueError("kernel extraction takes exactly one beta component")
        grid = _build_grid(args, config)
        symbol = parse(symbol_text, allowed_vars={"z"})
    except (ValueError, ParseError) as err:
        _fail("config", err)

    try:
        kernel = operators.extract_kernel_1d(symbol, beta[0], grid, oversample=int(oversample))
    except ValueError as err:
        _fail("operator", err)
    except ArithmeticError as err:
        _fail("operator", err)

    try:
        fieldio.write_kernel_csv(kernel, out_path)
    except OSError as err:
        _fail("output", err)

    summary = {"kernel_out": str(out_path), "closed_form": None, "max_central_deviation": None}
    match = _CLOSED_FORM_KERNELS.get(unparse(symbol))
    if match and beta[0].imag == 0 and beta[0].real > 0:
        name, closed_fn = match
        closed = closed_fn(kernel.offsets, beta[0]).astype(np.complex128)
        closed_path = Path(out_path).with_name(Path(out_path).stem + "_closed" + Path(out_path).suffix)
        fieldio.write_kernel_csv(
            operators.Kernel1D(kernel.offsets, closed, kernel.beta), closed_path
        )
        keep = np.abs(kernel.offsets) <= 0.4 * grid.period(0)
        deviation = float(np.max(np.abs(kernel.values[keep] - closed[keep])))
        summary.update(
            closed_form=name,
            closed_out=str(closed_path),
            max_central_deviation=deviation,
        )
    print(json.dumps(summary))
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def cmd_verify(args) -> int:
    config = _load_config(args.config)
    seed = int(os.environ.get(SEED_ENV_VAR, "42"))
    cases = oracles.closed_form_catalog() + oracles.equivalence_cases(seed)
    wanted = args.case or config.get("cases")
    if wanted:
        by_name = {c.name: c for c in cases}
        unknown = [name for name in wanted if name not in by_name]
        if unknown:
            _fail("verify", ValueError(f"unknown case name(s): {', '.join(unknown)}"))
        cases = [by_name[name] for name in wanted]
    overrides = config.get("tolerances") or {}
    report = oracles.run_oracles(cases, tolerance_overrides=overrides)
    print(report.format_table())
    out_path = _merged(args, config, "out", "out", default="oracle_report.json")
    try:
        Path(out_path).write_text(report.to_json() + "\n")
    except OSError as err:
        _fail("output", err)
    print(f"report written to {out_path}")
    return EXIT_OK if report.all_passed else EXIT_VERIFY_FAILED


# ---------------------------------------------------------------------------
# argument parsing / entry point
# ---------------------------------------------------------------------------


def _add_grid_flags(sub) -> None:
    sub.add_argument("--grid-n", type=int, nargs="+", help="samples per axis (1-3 axes)")
    sub.add_argument("--grid-spacing", type=float, nargs="+", help="grid step per axis")
    sub.add_argument("--grid-origin", type=float, nargs="+", help="coordinate of index 0 per axis")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="specgrad",
        description="apply scalar functions of constant-coefficient differential "
        "operators to sampled fields",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_apply = sub.add_parser("apply", help="apply an operator to a field")
    _add_grid_flags(p_apply)
    p_apply.add_argument("--config", help="JSON config; flags override its fields")
    p_apply.add_argument("--field-expr", help="input field expression over x[,y[,z]]")
    p_apply.add_argument("--field-file", help="input field CSV or JSON file")
    p_apply.add_argument("--symbol", help="operator symbol f(z)")
    p_apply.add_argument("--kind", choices=operators.KINDS, help="operator kind")
    p_apply.add_argument("--beta", type=float, nargs="+", help="real beta components")
    p_apply.add_argument("--builtin", choices=BUILTINS, help="closed-form operator instead of a symbol")
    p_apply.add_argument("--alpha", type=float, help="diffusion time for --builtin heat-smooth")
    p_apply.add_argument("--out", help="output field CSV path")
    p_apply.add_argument("--out-json", help="output field JSON path")
    p_apply.set_defaults(func=cmd_apply)

    p_kernel = sub.add_parser("kernel", help="tabulate the real-space kernel of a symbol")
    _add_grid_flags(p_kernel)
    p_kernel.add_argument("--config", help="JSON config; flags override its fields")
    p_kernel.add_argument("--symbol", help="operator symbol f(z)")
    p_kernel.add_argument("--beta", type=float, nargs="+", help="real beta component")
    p_kernel.add_argument("--oversample", type=int, help="spectral oversampling factor (>= 8)")
    p_kernel.add_argument("--out", help="output kernel CSV path")
    p_kernel.set_defaults(func=cmd_kernel)

    p_verify = sub.add_parser("verify", help="run the oracle catalog and brute-force equivalence")
    p_verify.add_argument("--config", help="JSON config with optional tolerances/cases")
    p_verify.add_argument("--case", action="append", help="run only the named case (repeatable)")
    p_verify.add_argument("--out", help="JSON report path (default oracle_report.json)")
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits itself on usage errors and --help; normalize to int
        code = exc.code if isinstance(exc.code, int) else EXIT_USAGE
        return EXIT_USAGE if code else EXIT_OK
    try:
        return args.func(args)
    except _StageError as exc:
        print(f"error [{exc.stage}]: {exc.err}", file=sys.stderr)
        if isinstance(exc.err, ArithmeticError):
            return EXIT_NUMERIC
        return EXIT_USAGE
    except ArithmeticError as exc:
        print(f"error [numeric]: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
