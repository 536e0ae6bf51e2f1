"""Independent ground truth: a direct O(N^2) double-sum discretization of
the operator identity and a catalog of closed-form cases.

The brute-force path never touches the FFT: it tabulates the discrete
kernel D(d) = sum_m f(i k_m beta) exp(i k_m d h) by direct summation (with
phases reduced mod n in integer arithmetic) and convolves with weight
spacing/period.  Fast-path outputs are validated against it and against
the catalog at stated tolerances.
"""

from __future__ import annotations

import json
import math
import time
import warnings
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

from . import _kernels, operators
from .grid import Field, Grid, make_grid, sample_field, wavenumber_index, wavenumbers
from .symbols import SymbolExpr, evaluate, parse

__all__ = [
    "OracleCase",
    "OracleCaseResult",
    "OracleReport",
    "brute_force_apply",
    "closed_form_catalog",
    "equivalence_cases",
    "default_implementations",
    "run_oracles",
]

BRUTE_FORCE_MAX_N = 512

EQUIVALENCE_SYMBOLS = ("z", "z^2", "exp(z)", "cos(z^2)", "1+z/2")
EQUIVALENCE_SIZES = (16, 64)


def brute_force_apply(symbol: SymbolExpr | str, beta: complex, field: Field) -> Field:
    """Direct double-sum application of f(beta d/dx); no FFT involved.

    out(x_j) = sum_j' c(x_j') (h/L) sum_m exp(i k_m (x_j - x_j')) f(i k_m beta),
    with the even-grid Nyquist mode averaged over +-k_N like the fast path.
    """
    grid = field.grid
    if grid.dims != 1:
        raise ValueError("brute_force_apply is 1D-only")
    n = grid.n[0]
    if n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"n={n} exceeds the brute-force cost guard ({BRUTE_FORCE_MAX_N})")
    if isinstance(symbol, str):
        symbol = parse(symbol, allowed_vars={"z"})
    b = complex(beta)
    k = wavenumbers(grid, 0)
    fvals = np.empty(n, dtype=np.complex128)
    for m in range(n):
        fvals[m] = evaluate(symbol, {"z": 1j * k[m] * b})
    if n % 2 == 0:
        k_nyq = k[n // 2]
        fvals[n // 2] = 0.5 * (
            evaluate(symbol, {"z": 1j * k_nyq * b}) + evaluate(symbol, {"z": -1j * k_nyq * b})
        )
    twiddles = np.exp(2j * np.pi * np.arange(n) / n)
    table = _kernels.oscillatory_sum_table(fvals, wavenumber_index(grid, 0), twiddles)
    out = _kernels.convolve_linear(field.values, table, 1.0 / n)
    return Field(grid, out)


# ---------------------------------------------------------------------------
# oracle cases
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OracleCase:
    """One validated comparison: metadata plus a runner returning
    (computed, expected) arrays built from the supplied implementations."""

    name: str
    input_spec: str
    operator_spec: str
    expected_spec: str
    tolerance: float
    provenance: str
    run: Callable[[Mapping[str, Callable]], tuple[np.ndarray, np.ndarray]]

    def __post_init__(self) -> None:
        if not self.tolerance >= 0:
            raise ValueError("tolerance must be nonnegative")


def default_implementations() -> dict[str, Callable]:
    return {
        "apply_operator": operators.apply_operator,
        "shift_field": operators.shift_field,
        "heat_smooth_realspace": operators.heat_smooth_realspace,
        "inverse_derivative": operators.inverse_derivative,
        "sgn_kernel_apply": operators.sgn_kernel_apply,
        "shifted_derivative_apply": operators.shifted_derivative_apply,
        "fresnel_cos_apply": operators.fresnel_cos_apply,
        "extract_kernel_1d": operators.extract_kernel_1d,
        "convolve_kernel": operators.convolve_kernel,
        "brute_force_apply": brute_force_apply,
    }


def _grid_2pi_64() -> Grid:
    return make_grid(1, [64], [2.0 * np.pi / 64], [0.0])


def _grid_16_512() -> Grid:
    return make_grid(1, [512], [32.0 / 512], [-16.0])


def _grid_8_512() -> Grid:
    return make_grid(1, [512], [16.0 / 512], [-8.0])


def _sample(expr: str, grid: Grid) -> Field:
    return sample_field(parse(expr, allowed_vars={"x"}), grid)


def closed_form_catalog() -> list[OracleCase]:
    """The shipped closed-form cases (paper identities plus dual paths)."""
    cases: list[OracleCase] = []

    def case(name, input_spec, operator_spec, expected_spec, tolerance, provenance):
        def register(fn):
            cases.append(
                OracleCase(name, input_spec, operator_spec, expected_spec, tolerance, provenance, fn)
            )
            return fn

        return register

    @case(
        "shift-sine",
        "sin(x) on [0,2pi), n=64",
        "exp(z), beta=pi/2",
        "cos(x)",
        1e-10,
        "exponential of the derivative is a shift",
    )
    def _shift_sine(impl):
        grid = _grid_2pi_64()
        got = impl["apply_operator"](
            operators.OperatorSpec("exp(z)", "dot-gradient", (np.pi / 2,)), _sample("sin(x)", grid)
        )
        return got.values, _sample("cos(x)", grid).values

    @case(
        "plane-wave-eigen",
        "exp(i*2*x) on [0,2pi), n=64",
        "cos(z^2), beta=0.7",
        "f(i*2*0.7) * exp(i*2*x)",
        1e-10,
        "plane waves are eigenfunctions with eigenvalue f(i k beta)",
    )
    def _plane_wave(impl):
        grid = _grid_2pi_64()
        field = _sample("exp(i*2*x)", grid)
        got = impl["apply_operator"](
            operators.OperatorSpec("cos(z^2)", "dot-gradient", (0.7,)), field
        )
        eig = evaluate(parse("cos(z^2)"), {"z": 1j * 2 * 0.7})
        return got.values, eig * field.values

    @case(
        "heat-gaussian-spectral",
        "exp(-x^2/2) on [-16,16), n=512",
        "laplacian exp(0.5*z)  [alpha=0.5]",
        "exp(-x^2/4)/sqrt(2)",
        1e-6,
        "heat smoothing widens a Gaussian: variance 1 -> 1 + 2*alpha",
    )
    def _heat_spectral(impl):
        grid = _grid_16_512()
        got = impl["apply_operator"](
            operators.OperatorSpec("exp(0.5*z)", "laplacian"), _sample("exp(-x^2/2)", grid)
        )
        return got.values, _sample("exp(-x^2/4)/sqrt(2)", grid).values

    @case(
        "heat-gaussian-realspace",
        "exp(-x^2/2) on [-16,16), n=512",
        "periodized Gaussian convolution, alpha=0.5",
        "exp(-x^2/4)/sqrt(2)",
        1e-6,
        "real-space dual of heat-gaussian-spectral",
    )
    def _heat_realspace(impl):
        grid = _grid_16_512()
        got = impl["heat_smooth_realspace"](_sample("exp(-x^2/2)", grid), 0.5)
        return got.values, _sample("exp(-x^2/4)/sqrt(2)", grid).values

    @case(
        "sgn-erf",
        "exp(-x^2) on [-16,16), n=512",
        "sgn kernel, beta=1",
        "(sqrt(pi)/2) erf(x)",
        1e-8,
        "cumulative integral of the Gaussian",
    )
    def _sgn_erf(impl):
        grid = _grid_16_512()
        got = impl["sgn_kernel_apply"](_sample("exp(-x^2)", grid), 1.0)
        x = grid.origin[0] + np.arange(512) * grid.spacing[0]
        want = (math.sqrt(math.pi) / 2.0) * np.array([math.erf(t) for t in x])
        return got.values, want.astype(np.complex128)

    @case(
        "inverse-derivative-rediff",
        "exp(-x^2) on [-16,16), n=512",
        "1/(i k beta) zero-mode policy then beta d/dx, beta=1",
        "field - mean(field)",
        1e-8,
        "re-differentiation recovers the mean-zero part",
    )
    def _inv_rediff(impl):
        grid = _grid_16_512()
        field = _sample("exp(-x^2)", grid)
        anti = impl["inverse_derivative"](field, 1.0)
        back = impl["apply_operator"](operators.OperatorSpec("z", "dot-gradient", (1.0,)), anti)
        return back.values, field.values - field.values.mean()

    @case(
        "inverse-derivative-vs-sgn",
        "exp(-x^2) on [-16,16), n=512",
        "spectral zero-mode inverse vs sgn quadrature, beta=1",
        "equal on the mean-subtracted input, up to a constant",
        1e-6,
        "zero-mode policy drops the mean ramp; feed the sgn path the "
        "mean-subtracted field and align constants",
    )
    def _inv_vs_sgn(impl):
        grid = _grid_16_512()
        field = _sample("exp(-x^2)", grid)
        spectral = impl["inverse_derivative"](field, 1.0).values
        shifted = Field(grid, field.values - field.values.mean())
        with warnings.catch_warnings():
            # mean subtraction leaves a constant at the ends by design
            warnings.simplefilter("ignore", operators.TruncationWarning)
            quad = impl["sgn_kernel_apply"](shifted, 1.0).values
        return spectral - spectral.mean(), quad - quad.mean()

    @case(
        "shifted-derivative-gaussian",
        "exp(-x^2) on [-16,16), n=512",
        "exp(z)*z, beta=0.5",
        "-(x+0.5)*exp(-(x+0.5)^2)",
        1e-8,
        "[beta d/dx c](x+beta) for the Gaussian",
    )
    def _shifted_deriv(impl):
        grid = _grid_16_512()
        got = impl["shifted_derivative_apply"](_sample("exp(-x^2)", grid), 0.5)
        return got.values, _sample("-(x+0.5)*exp(-(x+0.5)^2)", grid).values

    @case(
        "fresnel-single-mode",
        "sin(x) on [0,2pi), n=64",
        "cos(z^2), beta=0.5",
        "cos(0.25)*sin(x)",
        1e-10,
        "single mode picks up the multiplier at k=1",
    )
    def _fresnel_mode(impl):
        grid = _grid_2pi_64()
        got = impl["apply_operator"](
            operators.OperatorSpec("cos(z^2)", "dot-gradient", (0.5,)), _sample("sin(x)", grid)
        )
        return got.values, _sample("cos(0.25)*sin(x)", grid).values

    @case(
        "fresnel-dual-path",
        "exp(-x^2) on [-16,16), n=512",
        "cosine-kernel quadrature vs spectral cos(z^2), beta=0.5",
        "paths agree",
        1e-4,
        "oscillatory kernel quadrature against the multiplier path",
    )
    def _fresnel_dual(impl):
        grid = _grid_16_512()
        field = _sample("exp(-x^2)", grid)
        quad = impl["fresnel_cos_apply"](field, 0.5)
        spec = impl["apply_operator"](
            operators.OperatorSpec("cos(z^2)", "dot-gradient", (0.5,)), field
        )
        return quad.values, spec.values

    @case(
        "fresnel-kernel-closed-form",
        "kernel table on [-8,8), n=512",
        "extract cos(z^2), beta=0.5",
        "(1/(sqrt(4 pi) beta)) cos(rho^2/(4 beta^2) - pi/4) on the central 80%",
        1e-3,
        "tabulated transform of the cosine of a squared derivative",
    )
    def _fresnel_kernel(impl):
        beta = 0.5
        kern = impl["extract_kernel_1d"]("cos(z^2)", beta, _grid_8_512())
        rho = kern.offsets
        keep = np.abs(rho) <= 0.4 * 16.0
        closed = np.cos(rho**2 / (4 * beta**2) - np.pi / 4) / (math.sqrt(4 * math.pi) * beta)
        return kern.values[keep], closed[keep].astype(np.complex128)

    return cases


def equivalence_cases(
    seed: int,
    trials: int = 20,
    sizes: Sequence[int] = EQUIVALENCE_SIZES,
    symbols: Sequence[str] = EQUIVALENCE_SYMBOLS,
) -> list[OracleCase]:
    """Seeded random brute-force vs FFT-path comparisons at 1e-10."""
    rng = np.random.default_rng(seed)
    cases = []
    for t in range(trials):
        n = sizes[t % len(sizes)]
        symbol = symbols[(t // len(sizes)) % len(symbols)]
        beta = float(rng.uniform(0.1, 2.0))
        values = rng.normal(size=n) + 1j * rng.normal(size=n)

        def runner(impl, n=n, symbol=symbol, beta=beta, values=values):
            grid = make_grid(1, [n], [2.0 * np.pi / n], [0.0])
            field = Field(grid, values)
            slow = impl["brute_force_apply"](symbol, beta, field)
            fast = impl["apply_operator"](
                operators.OperatorSpec(symbol, "dot-gradient", (beta,)), field
            )
            return slow.values, fast.values

        cases.append(
            OracleCase(
                name=f"brute-force-{t:02d}-{symbol}-n{n}",
                input_spec=f"seeded random complex field, n={n}",
                operator_spec=f"{symbol}, beta={beta:.6f}",
                expected_spec="O(N^2) double sum equals FFT path",
                tolerance=1e-10,
                provenance="direct discretization of the double-integral form",
                run=runner,
            )
        )
    return cases


# ---------------------------------------------------------------------------
# execution and reporting
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OracleCaseResult:
    name: str
    passed: bool
    max_error: float
    seconds: float
    detail: str = ""


@dataclass(frozen=True)
class OracleReport:
    results: tuple[OracleCaseResult, ...]

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json(self) -> str:
        return json.dumps(
            [
                {
                    "name": r.name,
                    "pass": r.passed,
                    "max_error": r.max_error,
                    "seconds": r.seconds,
                }
                for r in self.results
            ],
            indent=2,
        )

    def format_table(self) -> str:
        if not self.results:
            return "no oracle cases ran"
        width = max(len(r.name) for r in self.results)
        lines = [f"{'case':<{width}}  {'status':6}  {'max error':>12}  {'seconds':>8}"]
        for r in self.results:
            status = "pass" if r.passed else "FAIL"
            note = f"  {r.detail}" if (r.detail and not r.passed) else ""
            lines.append(
                f"{r.name:<{width}}  {status:6}  {r.max_error:>12.3e}  {r.seconds:>8.3f}{note}"
            )
        passed = sum(r.passed for r in self.results)
        lines.append(f"{passed}/{len(self.results)} cases passed")
        return "\n".join(lines)


def run_oracles(
    cases: Sequence[OracleCase],
    implementations: Mapping[str, Callable] | None = None,
    tolerance_overrides: Mapping[str, float] | None = None,
) -> OracleReport:
    """Run each case against the given implementations; failures are data."""
    impl = dict(default_implementations())
    if implementations:
        impl.update(implementations)
    overrides = dict(tolerance_overrides or {})
    results = []
    for case in cases:
        tol = overrides.get(case.name, case.tolerance)
        start = time.perf_counter()
        try:
            got, want = case.run(impl)
            max_error = float(np.max(np.abs(np.asarray(got) - np.asarray(want)))) if np.size(got) else 0.0
            passed = max_error <= tol
            detail = "" if passed else f"tolerance {tol:g}"
        except Exception as err:  # noqa: BLE001 - failures are report entries
            max_error = float("inf")
            passed = False
            detail = f"{type(err).__name__}: {err}"
        seconds = time.perf_counter() - start
        results.append(OracleCaseResult(case.name, passed, max_error, seconds, detail))
    return OracleReport(tuple(results))
