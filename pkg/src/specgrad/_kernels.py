"""Hot numeric kernels: direct O(N^2) convolutions and oscillatory sums.

Two interchangeable implementations exist: numba ``@njit`` loops (default
when numba imports) and pure numpy. Selection: set ``SPECGRAD_BACKEND`` to
``numba`` or ``numpy`` before import, or call :func:`use_backend` at
runtime (used by the benchmark and the backend equivalence tests).  Both
paths sum serially in the same order, so results are deterministic per
backend.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = [
    "active_backend",
    "use_backend",
    "convolve_periodic",
    "convolve_linear",
    "oscillatory_sum_table",
]

_ENV_VAR = "SPECGRAD_BACKEND"


# --- pure numpy implementations --------------------------------------------


def _convolve_periodic_np(lines: np.ndarray, ktab: np.ndarray, weight: float) -> np.ndarray:
    n = ktab.shape[0]
    idx = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
    return weight * (lines @ ktab[idx].T)


def _convolve_linear_np(values: np.ndarray, ktab: np.ndarray, weight: float) -> np.ndarray:
    n = values.shape[0]
    idx = np.arange(n)[:, None] - np.arange(n)[None, :] + (n - 1)
    return weight * (ktab[idx] @ values)


def _oscillatory_sum_table_np(
    fvals: np.ndarray, mode_index: np.ndarray, twiddles: np.ndarray
) -> np.ndarray:
    n = fvals.shape[0]
    d = np.arange(-(n - 1), n)
    phase_idx = (d[:, None] * mode_index[None, :]) % n
    return twiddles[phase_idx] @ fvals


_NUMPY_IMPL = {
    "convolve_periodic": _convolve_periodic_np,
    "convolve_linear": _convolve_linear_np,
    "oscillatory_sum_table": _oscillatory_sum_table_np,
}


# --- numba implementations --------------------------------------------------


def _build_numba_impl():
    from numba import njit

    @njit(cache=True)
    def convolve_periodic_nb(lines, ktab, weight):
        m, n = lines.shape
        out = np.empty((m, n), dtype=np.complex128)
        for r in range(m):
            for i in range(n):
                acc = 0.0 + 0.0j
                for j in range(n):
                    acc += ktab[(i - j) % n] * lines[r, j]
                out[r, i] = acc * weight
        return out

    @njit(cache=True)
    def convolve_linear_nb(values, ktab, weight):
        n = values.shape[0]
        out = np.empty(n, dtype=np.complex128)
        for i in range(n):
            acc = 0.0 + 0.0j
            for j in range(n):
                acc += ktab[i - j + n - 1] * values[j]
            out[i] = acc * weight
        return out

    @njit(cache=True)
    def oscillatory_sum_table_nb(fvals, mode_index, twiddles):
        n = fvals.shape[0]
        out = np.empty(2 * n - 1, dtype=np.complex128)
        for t in range(2 * n - 1):
            d = t - (n - 1)
            acc = 0.0 + 0.0j
            for m in range(n):
                acc += fvals[m] * twiddles[(d * mode_index[m]) % n]
            out[t] = acc
        return out

    return {
        "convolve_periodic": convolve_periodic_nb,
        "convolve_linear": convolve_linear_nb,
        "oscillatory_sum_table": oscillatory_sum_table_nb,
    }


_requested = os.environ.get(_ENV_VAR, "").strip().lower()
if _requested not in ("", "numba", "numpy"):
    raise ValueError(f"{_ENV_VAR} must be 'numba' or 'numpy', got {_requested!r}")

_IMPL = _NUMPY_IMPL
_ACTIVE = "numpy"
if _requested != "numpy":
    try:
        _IMPL = _build_numba_impl()
        _ACTIVE = "numba"
    except ImportError:
        if _requested == "numba":
            raise
        # numba unavailable: stay on the numpy fallback


def active_backend() -> str:
    return _ACTIVE


def use_backend(name: str) -> None:
    """Switch kernel backend at runtime ('numba' or 'numpy')."""
    global _IMPL, _ACTIVE
    if name == "numpy":
        _IMPL, _ACTIVE = _NUMPY_IMPL, "numpy"
    elif name == "numba":
        _IMPL, _ACTIVE = _build_numba_impl(), "numba"
    else:
        raise ValueError(f"unknown backend {name!r}")


def _c128(a: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(a, dtype=np.complex128)


def convolve_periodic(lines: np.ndarray, ktab: np.ndarray, weight: float) -> np.ndarray:
    """Circular convolution of each row of ``lines`` (shape (m, n)) with the
    kernel table ``ktab`` indexed by wrap distance: out[r,i] = weight *
    sum_j ktab[(i-j) mod n] * lines[r,j]."""
    lines = _c128(np.atleast_2d(lines))
    return _IMPL["convolve_periodic"](lines, _c128(ktab), float(weight))


def convolve_linear(values: np.ndarray, ktab: np.ndarray, weight: float) -> np.ndarray:
    """Non-circular convolution against a table over all signed index
    differences: out[i] = weight * sum_j ktab[i-j+n-1] * values[j]."""
    values = _c128(values)
    if ktab.shape[0] != 2 * values.shape[0] - 1:
        raise ValueError("ktab must have length 2*n-1")
    return _IMPL["convolve_linear"](values, _c128(ktab), float(weight))


def oscillatory_sum_table(
    fvals: np.ndarray, mode_index: np.ndarray, twiddles: np.ndarray
) -> np.ndarray:
    """D[d] = sum_m fvals[m] * exp(2*pi*i*(m_d * d)/n) for d in [-(n-1), n-1],
    with the phase reduced mod n in integer arithmetic before lookup in the
    precomputed ``twiddles`` table (keeps large-|d| phases exact)."""
    return _IMPL["oscillatory_sum_table"](
        _c128(fvals),
        np.ascontiguousarray(mode_index, dtype=np.int64),
        _c128(twiddles),
    )
