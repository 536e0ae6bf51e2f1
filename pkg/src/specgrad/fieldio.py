"""Field and kernel serialization.

CSV columns are ``index0[,index1[,index2]],x[,y[,z]],re,im`` in row-major
order; kernels use ``rho,re,im``.  Floats are written with ``repr`` so a
re-read reproduces the in-memory values exactly and identical runs produce
byte-identical files.  The JSON form additionally carries the grid exactly
(the CSV reader reconstructs spacing from coordinate differences).
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .grid import Field, coordinates, make_grid
from .operators import Kernel1D

__all__ = [
    "write_field_csv",
    "read_field_csv",
    "write_field_json",
    "read_field_json",
    "write_kernel_csv",
]

_AXES = ("x", "y", "z")


def _field_header(dims: int) -> str:
    return ",".join(
        [f"index{d}" for d in range(dims)] + list(_AXES[:dims]) + ["re", "im"]
    )


def write_field_csv(field: Field, path: str | Path) -> None:
    grid = field.grid
    axes = [coordinates(grid, d) for d in range(grid.dims)]
    flat = field.values.reshape(-1)
    lines = [_field_header(grid.dims)]
    for r, value in enumerate(flat):
        idx = np.unravel_index(r, grid.shape)
        cells = [str(int(i)) for i in idx]
        cells += [repr(float(axes[d][idx[d]])) for d in range(grid.dims)]
        cells += [repr(float(value.real)), repr(float(value.imag))]
        lines.append(",".join(cells))
    Path(path).write_text("\n".join(lines) + "\n")


def read_field_csv(path: str | Path) -> Field:
    text = Path(path).read_text().strip().splitlines()
    if not text:
        raise ValueError(f"{path}: empty field file")
    header = text[0].strip()
    dims = next((d for d in (1, 2, 3) if header == _field_header(d)), None)
    if dims is None:
        raise ValueError(f"{path}: unrecognized field CSV header {header!r}")
    rows = [line.split(",") for line in text[1:]]
    indices = np.array([[int(c) for c in row[:dims]] for row in rows])
    coords = np.array([[float(c) for c in row[dims : 2 * dims]] for row in rows])
    values = np.array([complex(float(row[-2]), float(row[-1])) for row in rows])
    n = tuple(int(indices[:, d].max()) + 1 for d in range(dims))
    if len(rows) != int(np.prod(n)):
        raise ValueError(f"{path}: expected {np.prod(n)} rows for shape {n}, got {len(rows)}")
    expected = np.stack(np.unravel_index(np.arange(len(rows)), n), axis=1)
    if not np.array_equal(indices, expected):
        raise ValueError(f"{path}: rows are not in row-major index order")
    origin = [float(coords[0, d]) for d in range(dims)]
    strides = [int(np.prod(n[d + 1 :])) for d in range(dims)]
    spacing = [float(coords[strides[d], d] - origin[d]) for d in range(dims)]
    grid = make_grid(dims, list(n), spacing, origin)
    return Field(grid, values)


def write_field_json(field: Field, path: str | Path) -> None:
    grid = field.grid
    doc = {
        "grid": {
            "dims": grid.dims,
            "n": list(grid.n),
            "spacing": list(grid.spacing),
            "origin": list(grid.origin),
        },
        "values": [[float(v.real), float(v.imag)] for v in field.values.reshape(-1)],
    }
    with open(path, "w") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def read_field_json(path: str | Path) -> Field:
    with open(path) as fh:
        doc = json.load(fh)
    gspec = doc["grid"]
    grid = make_grid(gspec["dims"], gspec["n"], gspec["spacing"], gspec["origin"])
    values = np.array([complex(re, im) for re, im in doc["values"]])
    return Field(grid, values)


def write_kernel_csv(kernel: Kernel1D, path: str | Path) -> None:
    lines = ["rho,re,im"]
    for rho, value in zip(kernel.offsets, kernel.values):
        lines.append(f"{repr(float(rho))},{repr(float(value.real))},{repr(float(value.imag))}")
    Path(path).write_text("\n".join(lines) + "\n")
