import numpy as np
import pytest

from specgrad import (
    EvalDomainError,
    Field,
    SpectralField,
    coordinates,
    dft_forward,
    dft_inverse,
    make_grid,
    sample_field,
    wavenumbers,
)


def test_make_grid_period():
    grid = make_grid(1, [8], [0.5], [0.0])
    assert grid.period(0) == 4.0
    assert grid.dims == 1


def test_make_grid_3d_sample_count():
    grid = make_grid(3, [16, 16, 16], [0.1, 0.1, 0.1], [0, 0, 0])
    assert grid.size == 4096
    assert grid.shape == (16, 16, 16)


def test_make_grid_rejects_small_n():
    with pytest.raises(ValueError, match=r"n\[0\]"):
        make_grid(1, [1], [0.5], [0.0])


def test_make_grid_rejects_bad_spacing_naming_axis():
    with pytest.raises(ValueError, match=r"spacing\[1\]"):
        make_grid(2, [4, 4], [0.5, -1.0], [0.0, 0.0])


def test_make_grid_rejects_bad_dims():
    with pytest.raises(ValueError, match="dims"):
        make_grid(4, [2, 2, 2, 2], [1, 1, 1, 1], [0, 0, 0, 0])


def test_grid_equality_is_by_value():
    a = make_grid(1, [8], [0.5], [1.0])
    b = make_grid(1, [8], [0.5], [1.0])
    c = make_grid(1, [8], [0.5], [0.0])
    assert a == b
    assert a != c


def test_coordinates_basic():
    grid = make_grid(1, [4], [0.25], [0.0])
    assert np.array_equal(coordinates(grid, 0), [0.0, 0.25, 0.5, 0.75])


def test_coordinates_negative_origin():
    grid = make_grid(1, [2], [1.0], [-1.0])
    assert np.array_equal(coordinates(grid, 0), [-1.0, 0.0])


def test_coordinates_axis_out_of_range():
    grid = make_grid(1, [4], [0.25], [0.0])
    with pytest.raises(ValueError, match="axis"):
        coordinates(grid, 1)


def test_wavenumbers_n4():
    grid = make_grid(1, [4], [1.0], [0.0])
    want = [0.0, np.pi / 2, np.pi, -np.pi / 2]
    assert np.allclose(wavenumbers(grid, 0), want, rtol=0, atol=0)


def test_wavenumbers_n8():
    grid = make_grid(1, [8], [0.5], [0.0])
    assert wavenumbers(grid, 0)[1] == 2.0 * np.pi * 1 / 4.0


def test_wavenumbers_n2_nyquist_only():
    grid = make_grid(1, [2], [1.0], [0.0])
    assert np.array_equal(wavenumbers(grid, 0), [0.0, 2.0 * np.pi * 1 / 2.0])


def test_wavenumbers_exact_arithmetic():
    grid = make_grid(1, [6], [0.7], [0.3])
    k = wavenumbers(grid, 0)
    assert k[0] == 0.0
    for j, m in enumerate([0, 1, 2, 3, -2, -1]):
        assert k[j] == 2.0 * np.pi * m / (6 * 0.7)


def test_dft_constant_field():
    grid = make_grid(1, [4], [1.0], [0.0])
    spec = dft_forward(Field(grid, np.ones(4)))
    assert np.array_equal(spec.coeffs, [4.0, 0.0, 0.0, 0.0])


def test_dft_single_mode():
    grid = make_grid(1, [8], [2 * np.pi / 8], [0.0])
    field = sample_field("exp(i*x)", grid)
    coeffs = dft_forward(field).coeffs
    assert abs(coeffs[1] - 8.0) < 1e-12
    others = np.delete(coeffs, 1)
    assert np.max(np.abs(others)) < 1e-12


def test_dft_inverse_constant_spectrum():
    grid = make_grid(1, [4], [1.0], [0.0])
    field = dft_inverse(SpectralField(grid, [4.0, 0.0, 0.0, 0.0]))
    assert np.allclose(field.values, 1.0, rtol=0, atol=1e-15)


def test_dft_inverse_zero_spectrum():
    grid = make_grid(1, [4], [1.0], [0.0])
    field = dft_inverse(SpectralField(grid, np.zeros(4)))
    assert np.array_equal(field.values, np.zeros(4))


@pytest.mark.parametrize(
    "shape",
    [(2,), (8,), (64,), (256,), (2, 2), (8, 8), (64, 64), (256, 256), (2, 2, 2), (8, 8, 8), (64, 64, 64)],
)
def test_dft_round_trip(shape):
    rng = np.random.default_rng(sum(shape))
    grid = make_grid(len(shape), list(shape), [0.3] * len(shape), [-1.0] * len(shape))
    values = rng.normal(size=shape) + 1j * rng.normal(size=shape)
    back = dft_inverse(dft_forward(Field(grid, values)))
    scale = np.max(np.abs(values))
    assert np.max(np.abs(back.values - values)) <= 1e-12 * scale


@pytest.mark.parametrize("dims", [1, 2, 3])
def test_parseval(dims):
    rng = np.random.default_rng(dims)
    shape = (16,) * dims
    grid = make_grid(dims, list(shape), [0.25] * dims, [0.0] * dims)
    values = rng.normal(size=shape) + 1j * rng.normal(size=shape)
    coeffs = dft_forward(Field(grid, values)).coeffs
    lhs = np.sum(np.abs(values) ** 2)
    rhs = np.sum(np.abs(coeffs) ** 2) / grid.size
    assert abs(lhs - rhs) <= 1e-12 * lhs


def test_dft_linearity():
    rng = np.random.default_rng(7)
    grid = make_grid(1, [64], [0.1], [0.0])
    u = rng.normal(size=64) + 1j * rng.normal(size=64)
    v = rng.normal(size=64) + 1j * rng.normal(size=64)
    a, b = 1.7 - 0.3j, -0.4 + 2.1j
    lhs = dft_forward(Field(grid, a * u + b * v)).coeffs
    rhs = a * dft_forward(Field(grid, u)).coeffs + b * dft_forward(Field(grid, v)).coeffs
    assert np.max(np.abs(lhs - rhs)) <= 1e-12 * np.max(np.abs(lhs))


def test_sample_field_sine():
    grid = make_grid(1, [16], [2 * np.pi / 16], [0.0])
    field = sample_field("sin(x)", grid)
    assert np.allclose(field.values, np.sin(coordinates(grid, 0)), rtol=0, atol=1e-15)


def test_sample_field_gaussian():
    grid = make_grid(1, [256], [16.0 / 256], [-8.0])
    field = sample_field("exp(-x^2)", grid)
    assert np.allclose(field.values, np.exp(-coordinates(grid, 0) ** 2), rtol=0, atol=1e-15)


def test_sample_field_2d_broadcast():
    grid = make_grid(2, [4, 8], [0.5, 0.25], [0.0, -1.0])
    field = sample_field("x*y", grid)
    x = coordinates(grid, 0)[:, None]
    y = coordinates(grid, 1)[None, :]
    assert np.allclose(field.values, x * y, rtol=0, atol=1e-15)


def test_sample_field_domain_error_reports_index():
    grid = make_grid(1, [4], [0.5], [-1.0])  # contains x = 0 at index 2
    with pytest.raises(EvalDomainError, match=r"grid index \(2,\)"):
        sample_field("1/x", grid)


def test_sample_field_rejects_unknown_axis_variable():
    grid = make_grid(1, [4], [0.5], [0.0])
    with pytest.raises(Exception, match="unknown variable"):
        sample_field("sin(y)", grid)


def test_field_rejects_wrong_size():
    grid = make_grid(1, [4], [0.5], [0.0])
    with pytest.raises(ValueError, match="size"):
        Field(grid, np.ones(5))


def test_field_rejects_non_finite():
    grid = make_grid(1, [4], [0.5], [0.0])
    with pytest.raises(ValueError, match="finite"):
        Field(grid, [1.0, np.nan, 0.0, 0.0])


def test_field_values_are_read_only():
    grid = make_grid(1, [4], [0.5], [0.0])
    field = Field(grid, np.ones(4))
    with pytest.raises(ValueError):
        field.values[0] = 2.0


def test_field_does_not_lock_or_alias_caller_array():
    grid = make_grid(1, [4], [0.5], [0.0])
    source = np.ones(4, dtype=np.complex128)
    field = Field(grid, source)
    source[0] = 7.0  # caller's array stays writable and independent
    assert field.values[0] == 1.0


def test_sample_field_constant_expression():
    grid = make_grid(2, [4, 4], [0.5, 0.5], [0.0, 0.0])
    field = sample_field("2", grid)
    assert np.array_equal(field.values, np.full((4, 4), 2.0 + 0j))
