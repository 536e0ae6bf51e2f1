"""Uniform periodic grids, complex fields, and discrete Fourier transforms.

The transform convention is the plain unnormalized forward sum
``c_hat[m] = sum_j c[j] exp(-i k_m x_j)`` with the inverse dividing by the
total sample count, so forward/inverse always pair up and multiplier
formulas are convention-free.  Wavenumbers follow DFT index order with the
Nyquist mode of an even axis stored at +pi/spacing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .symbols import EvalDomainError, SymbolExpr, evaluate_array, parse

__all__ = [
    "Grid",
    "Field",
    "SpectralField",
    "make_grid",
    "coordinates",
    "wavenumbers",
    "dft_forward",
    "dft_inverse",
    "sample_field",
]

_FIELD_VARS = ("x", "y", "z")


@dataclass(frozen=True)
class Grid:
    """Uniform periodic sampling lattice in 1-3 dimensions.

    Axis ``d`` has ``n[d]`` samples at step ``spacing[d]``; sample ``j``
    sits at ``origin[d] + j * spacing[d]`` and the physical period is
    ``n[d] * spacing[d]``.  Axis order is (x, y, z), row-major.
    """

    n: tuple[int, ...]
    spacing: tuple[float, ...]
    origin: tuple[float, ...]

    @property
    def dims(self) -> int:
        return len(self.n)

    @property
    def shape(self) -> tuple[int, ...]:
        return self.n

    @property
    def size(self) -> int:
        return math.prod(self.n)

    def period(self, axis: int) -> float:
        return self.n[axis] * self.spacing[axis]


def make_grid(
    dims: int,
    n: Sequence[int],
    spacing: Sequence[float],
    origin: Sequence[float] | None = None,
) -> Grid:
    """Build a validated Grid; errors name the offending axis."""
    if dims not in (1, 2, 3):
        raise ValueError(f"dims must be 1, 2 or 3, got {dims}")
    if origin is None:
        origin = [0.0] * dims
    if len(n) != dims or len(spacing) != dims or len(origin) != dims:
        raise ValueError(
            f"n, spacing, origin must each have length dims={dims}, "
            f"got {len(n)}, {len(spacing)}, {len(origin)}"
        )
    for d in range(dims):
        if int(n[d]) != n[d] or n[d] < 2:
            raise ValueError(f"n[{d}] must be an integer >= 2, got {n[d]}")
        if not (spacing[d] > 0):
            raise ValueError(f"spacing[{d}] must be positive, got {spacing[d]}")
    return Grid(
        n=tuple(int(v) for v in n),
        spacing=tuple(float(v) for v in spacing),
        origin=tuple(float(v) for v in origin),
    )


def coordinates(grid: Grid, axis: int) -> np.ndarray:
    """Sample coordinates along one axis: origin + j*spacing."""
    _check_axis(grid, axis)
    return grid.origin[axis] + np.arange(grid.n[axis]) * grid.spacing[axis]


def wavenumbers(grid: Grid, axis: int) -> np.ndarray:
    """DFT-ordered wavenumbers 2*pi*m/(n*spacing) along one axis.

    m = j for j <= n/2 and j - n otherwise, so the Nyquist mode of an
    even axis carries +pi/spacing (sign is immaterial at the sample
    points; multiplier construction symmetrizes it explicitly).
    """
    _check_axis(grid, axis)
    n = grid.n[axis]
    j = np.arange(n)
    m = np.where(j <= n // 2, j, j - n)
    return 2.0 * np.pi * m / (n * grid.spacing[axis])


def wavenumber_index(grid: Grid, axis: int) -> np.ndarray:
    """Integer mode numbers m matching :func:`wavenumbers`."""
    _check_axis(grid, axis)
    n = grid.n[axis]
    j = np.arange(n)
    return np.where(j <= n // 2, j, j - n)


def _check_axis(grid: Grid, axis: int) -> None:
    if not 0 <= axis < grid.dims:
        raise ValueError(f"axis {axis} out of range for {grid.dims}D grid")


def _freeze(values: np.ndarray) -> np.ndarray:
    # always copy so locking never propagates to a caller-owned array
    out = np.array(values, dtype=np.complex128, order="C", copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class Field:
    """Complex samples of a scalar function on a Grid (row-major)."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=np.complex128)
        if vals.size != self.grid.size:
            raise ValueError(
                f"values size {vals.size} does not match grid size {self.grid.size}"
            )
        vals = vals.reshape(self.grid.shape)
        if not np.all(np.isfinite(vals)):
            bad = np.argwhere(~np.isfinite(vals))[0]
            raise ValueError(f"field values must be finite; first bad entry at index {tuple(bad)}")
        object.__setattr__(self, "values", _freeze(vals))


@dataclass(frozen=True, eq=False)
class SpectralField:
    """DFT coefficients of a Field, in DFT index order."""

    grid: Grid
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        coeffs = np.asarray(self.coeffs, dtype=np.complex128)
        if coeffs.size != self.grid.size:
            raise ValueError(
                f"coeffs size {coeffs.size} does not match grid size {self.grid.size}"
            )
        object.__setattr__(self, "coeffs", _freeze(coeffs.reshape(self.grid.shape)))


def dft_forward(field: Field) -> SpectralField:
    """Forward DFT, plain sum convention (no normalization)."""
    return SpectralField(field.grid, np.fft.fftn(field.values))


def dft_inverse(spec: SpectralField) -> Field:
    """Inverse DFT, divides by the total sample count."""
    return Field(spec.grid, np.fft.ifftn(spec.coeffs))


def sample_field(expr: SymbolExpr | str, grid: Grid) -> Field:
    """Evaluate a coordinate expression over x[,y[,z]] at every grid point."""
    if isinstance(expr, str):
        expr = parse(expr, allowed_vars=set(_FIELD_VARS[: grid.dims]))
    axes = [coordinates(grid, d) for d in range(grid.dims)]
    meshes = np.meshgrid(*axes, indexing="ij") if grid.dims > 1 else [axes[0]]
    bindings = {_FIELD_VARS[d]: meshes[d].astype(np.complex128) for d in range(grid.dims)}
    try:
        vals = evaluate_array(expr, bindings)
    except EvalDomainError as err:
        if err.flat_index is not None:
            idx = np.unravel_index(err.flat_index, grid.shape)
            raise EvalDomainError(
                f"{err.args[0]} at grid index {tuple(int(i) for i in idx)}",
                flat_index=err.flat_index,
            ) from err
        raise
    return Field(grid, np.broadcast_to(np.asarray(vals, dtype=np.complex128), grid.shape))
