"""Uniform 2D grid, cell/face field containers, discrete calculus, snapshot I/O.

Conventions
-----------
Scalars live at cell centers x_i = (i + 1/2) hx, y_j = (j + 1/2) hy and are
stored row-major with y as the outer index: values[j, i], shape (ny, nx).
Velocity uses MAC staggering: the u component sits on vertical faces
(x = i hx, i = 0..nx), shape (ny, nx + 1); the v component on horizontal
faces (y = j hy, j = 0..ny), shape (ny + 1, nx).

Boundary modes: "dirichlet_box" (walls; scalar ghost cells extrapolate a
caller-supplied datum, velocity normal components pinned to zero) and
"periodic".  Under periodic the redundant wrap faces u[:, nx] and v[ny, :]
are kept equal to their partners.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import kernels
from .errors import FieldFormatError

BC_CODES = {"dirichlet_box": 0, "periodic": 1}
BC_NAMES = {code: name for name, code in BC_CODES.items()}

_MAGIC = b"PFLD1\n"
_HEADER = struct.Struct("<IIddB")


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid over the box [0, lx] x [0, ly]."""

    nx: int
    ny: int
    lx: float
    ly: float
    bc: str = "dirichlet_box"

    def __post_init__(self):
        if self.nx < 1 or self.ny < 1:
            raise ValueError("need at least one cell per direction")
        if not (self.lx > 0.0 and self.ly > 0.0):
            raise ValueError("domain extents must be positive")
        if self.bc not in BC_CODES:
            raise ValueError(f"unknown boundary mode {self.bc!r}")

    @property
    def hx(self) -> float:
        return self.lx / self.nx

    @property
    def hy(self) -> float:
        return self.ly / self.ny

    @property
    def periodic(self) -> bool:
        return self.bc == "periodic"

    def square_cells(self, rtol: float = 1e-12) -> bool:
        return abs(self.hx - self.hy) <= rtol * max(self.hx, self.hy)

    @property
    def h(self) -> float:
        """Common mesh size; defined only for square cells."""
        if not self.square_cells():
            raise ValueError("operation requires square cells (hx == hy)")
        return self.hx

    def require_solver_grid(self) -> None:
        """Solver entry points need a real 2D grid with square cells."""
        if self.nx < 8 or self.ny < 8:
            raise ValueError("solver runs require nx, ny >= 8")
        if not self.square_cells():
            raise ValueError("solver runs require square cells")

    def cell_x(self) -> np.ndarray:
        return (np.arange(self.nx) + 0.5) * self.hx

    def cell_y(self) -> np.ndarray:
        return (np.arange(self.ny) + 0.5) * self.hy

    def cell_centers(self) -> tuple[np.ndarray, np.ndarray]:
        """(X, Y) arrays of shape (ny, nx)."""
        return np.meshgrid(self.cell_x(), self.cell_y())

    def u_face_coords(self) -> tuple[np.ndarray, np.ndarray]:
        """(X, Y) on vertical faces, shape (ny, nx + 1)."""
        return np.meshgrid(np.arange(self.nx + 1) * self.hx, self.cell_y())

    def v_face_coords(self) -> tuple[np.ndarray, np.ndarray]:
        """(X, Y) on horizontal faces, shape (ny + 1, nx)."""
        return np.meshgrid(self.cell_x(), np.arange(self.ny + 1) * self.hy)


@dataclass
class ScalarField:
    grid: GridSpec
    values: np.ndarray

    def __post_init__(self):
        expect = (self.grid.ny, self.grid.nx)
        if self.values.shape != expect:
            raise ValueError(f"values shape {self.values.shape} != {expect}")
        if self.values.dtype != np.float64:
            self.values = self.values.astype(np.float64)

    @classmethod
    def zeros(cls, grid: GridSpec) -> "ScalarField":
        return cls(grid, np.zeros((grid.ny, grid.nx)))

    @classmethod
    def full(cls, grid: GridSpec, value: float) -> "ScalarField":
        return cls(grid, np.full((grid.ny, grid.nx), float(value)))

    @classmethod
    def from_function(cls, grid: GridSpec, fn) -> "ScalarField":
        x, y = grid.cell_centers()
        return cls(grid, np.asarray(fn(x, y), dtype=np.float64))

    def copy(self) -> "ScalarField":
        return ScalarField(self.grid, self.values.copy())

    def assert_finite(self) -> None:
        if not np.all(np.isfinite(self.values)):
            raise FloatingPointError("non-finite scalar field entries")


@dataclass
class StaggeredField:
    """MAC velocity-like field: u on vertical faces, v on horizontal faces."""

    grid: GridSpec
    u: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        g = self.grid
        if self.u.shape != (g.ny, g.nx + 1):
            raise ValueError(f"u shape {self.u.shape} != {(g.ny, g.nx + 1)}")
        if self.v.shape != (g.ny + 1, g.nx):
            raise ValueError(f"v shape {self.v.shape} != {(g.ny + 1, g.nx)}")

    @classmethod
    def zeros(cls, grid: GridSpec) -> "StaggeredField":
        return cls(grid, np.zeros((grid.ny, grid.nx + 1)),
                   np.zeros((grid.ny + 1, grid.nx)))

    @classmethod
    def from_function(cls, grid: GridSpec, fn_u, fn_v) -> "StaggeredField":
        xu, yu = grid.u_face_coords()
        xv, yv = grid.v_face_coords()
        out = cls(grid, np.asarray(fn_u(xu, yu), dtype=np.float64),
                  np.asarray(fn_v(xv, yv), dtype=np.float64))
        out.enforce_bc()
        return out

    def copy(self) -> "StaggeredField":
        return StaggeredField(self.grid, self.u.copy(), self.v.copy())

    def enforce_bc(self) -> None:
        """Pin wall-normal faces to zero (dirichlet_box) or sync wrap faces."""
        if self.grid.periodic:
            self.u[:, -1] = self.u[:, 0]
            self.v[-1, :] = self.v[0, :]
        else:
            self.u[:, 0] = 0.0
            self.u[:, -1] = 0.0
            self.v[0, :] = 0.0
            self.v[-1, :] = 0.0

    def assert_finite(self) -> None:
        if not (np.all(np.isfinite(self.u)) and np.all(np.isfinite(self.v))):
            raise FloatingPointError("non-finite staggered field entries")

    def max_abs(self) -> float:
        return max(float(np.max(np.abs(self.u))), float(np.max(np.abs(self.v))))


# ---------------------------------------------------------------------------
# discrete calculus


def laplacian(f: ScalarField, bval: float = -1.0) -> ScalarField:
    """5-point Laplacian; Dirichlet ghosts extrapolate the datum bval."""
    g = f.grid
    inv_h2 = 1.0 / (g.h * g.h)
    out = kernels.laplacian(f.values, inv_h2, g.periodic, float(bval))
    return ScalarField(g, out)


def divergence(v: StaggeredField) -> ScalarField:
    g = v.grid
    out = (v.u[:, 1:] - v.u[:, :-1]) / g.hx + (v.v[1:, :] - v.v[:-1, :]) / g.hy
    return ScalarField(g, out)


def gradient(p: ScalarField) -> StaggeredField:
    """Face-centered differences of a cell field.

    Wall faces get zero under dirichlet_box (matching the no-penetration
    convention used by the projection); periodic wraps.
    """
    g = p.grid
    a = p.values
    gu = np.zeros((g.ny, g.nx + 1))
    gv = np.zeros((g.ny + 1, g.nx))
    gu[:, 1:-1] = (a[:, 1:] - a[:, :-1]) / g.hx
    gv[1:-1, :] = (a[1:, :] - a[:-1, :]) / g.hy
    if g.periodic:
        gu[:, 0] = (a[:, 0] - a[:, -1]) / g.hx
        gu[:, -1] = gu[:, 0]
        gv[0, :] = (a[0, :] - a[-1, :]) / g.hy
        gv[-1, :] = gv[0, :]
    return StaggeredField(g, gu, gv)


def cell_dot(a: ScalarField, b: ScalarField) -> float:
    g = a.grid
    return float(np.vdot(a.values, b.values)) * g.hx * g.hy


def cell_l2(a: ScalarField) -> float:
    return np.sqrt(max(cell_dot(a, a), 0.0))


def cell_lp(a: ScalarField, p: float) -> float:
    g = a.grid
    return float(np.sum(np.abs(a.values) ** p) * g.hx * g.hy) ** (1.0 / p)


def _unique_faces(v: StaggeredField) -> tuple[np.ndarray, np.ndarray]:
    """Views of the non-redundant face values (wrap faces counted once)."""
    if v.grid.periodic:
        return v.u[:, :-1], v.v[:-1, :]
    return v.u, v.v


def face_dot(a: StaggeredField, b: StaggeredField) -> float:
    g = a.grid
    au, av = _unique_faces(a)
    bu, bv = _unique_faces(b)
    return (float(np.vdot(au, bu)) + float(np.vdot(av, bv))) * g.hx * g.hy


def face_l2(a: StaggeredField) -> float:
    return np.sqrt(max(face_dot(a, a), 0.0))


# ---------------------------------------------------------------------------
# snapshot I/O (format PFLD1, little-endian, x-fastest payload)


def _write_snapshot(path: Path, nx: int, ny: int, lx: float, ly: float,
                    bc: str, payload: np.ndarray) -> None:
    if nx > 0xFFFFFFFF or ny > 0xFFFFFFFF:
        raise FieldFormatError("dimension overflow (grid does not fit in u32)")
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(_HEADER.pack(nx, ny, lx, ly, BC_CODES[bc]))
        fh.write(np.ascontiguousarray(payload, dtype="<f8").tobytes())


def _read_snapshot(path: Path):
    with open(path, "rb") as fh:
        magic = fh.read(len(_MAGIC))
        if magic != _MAGIC:
            raise FieldFormatError(f"{path}: bad magic {magic!r}")
        raw = fh.read(_HEADER.size)
        if len(raw) != _HEADER.size:
            raise FieldFormatError(f"{path}: truncated header")
        nx, ny, lx, ly, bc_code = _HEADER.unpack(raw)
        if bc_code not in BC_NAMES:
            raise FieldFormatError(f"{path}: unknown bc code {bc_code}")
        body = fh.read()
    expect = nx * ny * 8
    if len(body) != expect:
        raise FieldFormatError(
            f"{path}: payload is {len(body)} bytes, expected {expect}")
    values = np.frombuffer(body, dtype="<f8").reshape(ny, nx).copy()
    return nx, ny, lx, ly, BC_NAMES[bc_code], values


def dump_scalar(f: ScalarField, path) -> None:
    g = f.grid
    _write_snapshot(Path(path), g.nx, g.ny, g.lx, g.ly, g.bc, f.values)


def load_scalar(path) -> ScalarField:
    nx, ny, lx, ly, bc, values = _read_snapshot(Path(path))
    return ScalarField(GridSpec(nx, ny, lx, ly, bc), values)


def dump_staggered(v: StaggeredField, path) -> None:
    """Two scalar snapshots with suffixes .u/.v and face dims in the header."""
    g = v.grid
    base = str(path)
    _write_snapshot(Path(base + ".u"), g.nx + 1, g.ny, g.lx, g.ly, g.bc, v.u)
    _write_snapshot(Path(base + ".v"), g.nx, g.ny + 1, g.lx, g.ly, g.bc, v.v)


def load_staggered(path) -> StaggeredField:
    base = str(path)
    nxu, nyu, lxu, lyu, bcu, u = _read_snapshot(Path(base + ".u"))
    nxv, nyv, lxv, lyv, bcv, v = _read_snapshot(Path(base + ".v"))
    nx, ny = nxv, nyu
    if (nxu, nyu) != (nx + 1, ny) or (nxv, nyv) != (nx, ny + 1):
        raise FieldFormatError(
            f"{base}: inconsistent face dims u={nxu}x{nyu} v={nxv}x{nyv}")
    if (lxu, lyu, bcu) != (lxv, lyv, bcv):
        raise FieldFormatError(f"{base}: .u/.v headers disagree")
    return StaggeredField(GridSpec(nx, ny, lxu, lyu, bcu), u, v)
