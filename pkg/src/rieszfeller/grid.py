"""Periodic sampling grids and Fourier transforms of Clifford-valued fields.

The discrete transform pair is scaled to track the continuum conventions

    F f(xi) = integral f(x) exp(-i<x,xi>) dx
    Finv g(x) = (2 pi)**-n integral g(xi) exp(+i<x,xi>) dxi

on an origin-centered lattice x_k = (k - N/2) h with dual frequencies
xi_m = 2 pi m / (N h), m in [-N/2, N/2).  The pair is an exact discrete
inverse, and Plancherel holds: ||f||_2^2 = (2 pi)**-n ||Ff||_2^2 with the
Riemann-sum norms below.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import CliffordAlgebra, Multivector, left_multiply_array, norm0_array

_BINARY_MAGIC = b"RFLD1 "


@dataclass(frozen=True)
class GridSpec:
    """An origin-centered periodic lattice: per-axis sample counts and spacings.

    Sample counts must be even and at least 4 so the symmetric frequency
    range [-N/2, N/2) is unambiguous (the Nyquist bin sits at -N/2 only).
    """

    sizes: tuple[int, ...]
    spacing: tuple[float, ...]

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.sizes)
        spacing = tuple(float(h) for h in self.spacing)
        object.__setattr__(self, "sizes", sizes)
        object.__setattr__(self, "spacing", spacing)
        if len(sizes) != len(spacing):
            raise ValueError("sizes and spacing must have equal length")
        if len(sizes) < 1:
            raise ValueError("grid needs at least one axis")
        for N in sizes:
            if N < 4 or N % 2:
                raise ValueError(f"sample counts must be even and >= 4, got {N}")
        for h in spacing:
            if not h > 0:
                raise ValueError(f"spacing must be positive, got {h}")

    @classmethod
    def cubic(cls, n: int, size: int, spacing: float) -> "GridSpec":
        return cls((size,) * n, (spacing,) * n)

    @property
    def n(self) -> int:
        return len(self.sizes)

    @property
    def shape(self) -> tuple[int, ...]:
        return self.sizes

    @property
    def num_points(self) -> int:
        return int(np.prod(self.sizes))

    @property
    def cell_volume(self) -> float:
        return float(np.prod(self.spacing))

    @property
    def freq_steps(self) -> tuple[float, ...]:
        return tuple(2.0 * np.pi / (N * h) for N, h in zip(self.sizes, self.spacing))

    @property
    def freq_cell_volume(self) -> float:
        return float(np.prod(self.freq_steps))

    @property
    def nyquist_radius(self) -> float:
        """Radius of the largest ball guaranteed inside the frequency lattice."""
        return min(np.pi / h for h in self.spacing)

    def x_axis(self, axis: int) -> np.ndarray:
        N, h = self.sizes[axis], self.spacing[axis]
        return (np.arange(N) - N // 2) * h

    def xi_axis(self, axis: int) -> np.ndarray:
        N = self.sizes[axis]
        return (np.arange(N) - N // 2) * self.freq_steps[axis]

    def x_mesh(self) -> list[np.ndarray]:
        return list(np.meshgrid(*(self.x_axis(a) for a in range(self.n)), indexing="ij"))

    def xi_mesh(self) -> list[np.ndarray]:
        return list(np.meshgrid(*(self.xi_axis(a) for a in range(self.n)), indexing="ij"))

    def x_radius(self) -> np.ndarray:
        return np.sqrt(sum(m**2 for m in self.x_mesh()))

    def xi_radius(self) -> np.ndarray:
        return np.sqrt(sum(m**2 for m in self.xi_mesh()))


@lru_cache(maxsize=32)
def _cached_xi_radius(grid: GridSpec) -> np.ndarray:
    rho = grid.xi_radius()
    rho.setflags(write=False)
    return rho


def xi_radius(grid: GridSpec) -> np.ndarray:
    """|xi| over the lattice, cached per grid (read-only array)."""
    return _cached_xi_radius(grid)


class _Field:
    """Shared storage for grid-indexed multivector arrays.

    `data` has shape (*grid.sizes, 2**n); the last axis is the blade axis.
    Fields are treated as immutable values: operations return new fields.
    """

    domain = ""

    def __init__(self, grid: GridSpec, algebra: CliffordAlgebra, data: np.ndarray):
        data = np.asarray(data, dtype=complex)
        expected = grid.shape + (algebra.dim,)
        if data.shape != expected:
            raise ValueError(f"field data must have shape {expected}, got {data.shape}")
        self.grid = grid
        self.algebra = algebra
        self.data = data

    @classmethod
    def zeros(cls, grid: GridSpec, algebra: CliffordAlgebra):
        return cls(grid, algebra, np.zeros(grid.shape + (algebra.dim,), dtype=complex))

    def copy(self):
        return type(self)(self.grid, self.algebra, self.data.copy())

    def norm0(self) -> np.ndarray:
        """Pointwise |.|_0 over the lattice."""
        return norm0_array(self.algebra, self.data)

    def mv_at(self, index: tuple[int, ...]) -> Multivector:
        return Multivector(self.algebra, self.data[index])

    def _check_compatible(self, other: "_Field"):
        if self.grid != other.grid:
            raise ValueError("grid mismatch between fields")
        if self.algebra is not other.algebra:
            raise ValueError("algebra mismatch between fields")
        if type(self) is not type(other):
            raise ValueError("cannot combine space- and frequency-domain fields")

    def __add__(self, other):
        self._check_compatible(other)
        return type(self)(self.grid, self.algebra, self.data + other.data)

    def __sub__(self, other):
        self._check_compatible(other)
        return type(self)(self.grid, self.algebra, self.data - other.data)

    def __neg__(self):
        return type(self)(self.grid, self.algebra, -self.data)

    def __mul__(self, scalar):
        return type(self)(self.grid, self.algebra, self.data * scalar)

    __rmul__ = __mul__

    def __repr__(self):
        return (
            f"{type(self).__name__}(sizes={self.grid.sizes}, n={self.algebra.n}, "
            f"max|.|_0={self.norm0().max():.4g})"
        )


class CliffordField(_Field):
    """Space-domain samples f(x_k), one multivector per lattice point."""

    domain = "space"


class SpectralField(_Field):
    """Frequency-domain samples F(xi_m) on the shifted (symmetric) lattice."""

    domain = "frequency"


def _space_axes(grid: GridSpec) -> tuple[int, ...]:
    return tuple(range(grid.n))


def dft_forward(f: CliffordField) -> SpectralField:
    """Blade-wise DFT scaled by prod(h): a Riemann sum for the continuum transform.

    Exactly inverted by `dft_inverse`; for band-limited fields the output
    matches the continuum integral at the lattice frequencies.
    """
    axes = _space_axes(f.grid)
    shifted = np.fft.ifftshift(f.data, axes=axes)
    spec = np.fft.fftn(shifted, axes=axes)
    spec = np.fft.fftshift(spec, axes=axes) * f.grid.cell_volume
    return SpectralField(f.grid, f.algebra, spec)


def dft_inverse(F: SpectralField) -> CliffordField:
    axes = _space_axes(F.grid)
    shifted = np.fft.ifftshift(F.data, axes=axes)
    vals = np.fft.ifftn(shifted, axes=axes)
    vals = np.fft.fftshift(vals, axes=axes) / F.grid.cell_volume
    return CliffordField(F.grid, F.algebra, vals)


def apply_symbol_array(symbol: np.ndarray, f: CliffordField) -> CliffordField:
    """Apply a precomputed multiplier field: Finv[ symbol(xi) * Ff(xi) ].

    `symbol` has the same shape as the field data and multiplies from the
    LEFT in the Clifford sense at every lattice frequency.
    """
    F = dft_forward(f)
    prod = left_multiply_array(f.algebra, symbol, F.data)
    return dft_inverse(SpectralField(f.grid, f.algebra, prod))


def evaluate_symbol_on_grid(
    m, grid: GridSpec, algebra: CliffordAlgebra, dc: Multivector | complex | None = None
) -> np.ndarray:
    """Evaluate a pointwise symbol xi -> Multivector (or scalar) over the lattice.

    The DC bin (xi = 0) uses `dc` when given; a symbol failure elsewhere is
    reported as an input error naming the offending frequency.
    """
    sym = np.zeros(grid.shape + (algebra.dim,), dtype=complex)
    mesh = grid.xi_mesh()
    dc_index = tuple(N // 2 for N in grid.sizes)
    for idx in np.ndindex(*grid.shape):
        xi = np.array([m_ax[idx] for m_ax in mesh])
        if idx == dc_index and dc is not None:
            value = dc
        else:
            try:
                value = m(xi)
            except Exception as exc:
                raise ValueError(f"symbol evaluation failed at frequency {tuple(xi)}: {exc}") from exc
        if isinstance(value, Multivector):
            sym[idx] = value.coeffs
        else:
            sym[idx + (0,)] = value
    return sym


def apply_multiplier(
    m, f: CliffordField, dc: Multivector | complex | None = None
) -> CliffordField:
    """Fourier-multiplier application with left Clifford multiplication.

    `m` is either a callable xi -> Multivector/scalar (evaluated on the
    lattice, DC bin overridden by `dc`) or a precomputed coefficient array
    of shape (*sizes, 2**n).
    """
    if callable(m):
        sym = evaluate_symbol_on_grid(m, f.grid, f.algebra, dc=dc)
    else:
        sym = np.asarray(m, dtype=complex)
        if sym.shape != f.data.shape:
            raise ValueError(f"symbol array must have shape {f.data.shape}, got {sym.shape}")
    return apply_symbol_array(sym, f)


def lp_norm(f: _Field, p: float) -> float:
    """Riemann-sum L^p norm (sum_k |f(x_k)|_0**p * prod h)**(1/p); max for p=inf.

    Frequency-domain fields use the frequency cell volume, so Plancherel
    reads ||f||_2**2 = (2 pi)**-n ||Ff||_2**2.
    """
    if not p >= 1:
        raise ValueError(f"p must be >= 1 or inf, got {p}")
    pointwise = f.norm0()
    if np.isinf(p):
        return float(pointwise.max())
    cell = f.grid.cell_volume if f.domain == "space" else f.grid.freq_cell_volume
    if p == 2:
        return float(np.sqrt(np.sum(pointwise**2) * cell))
    return float(np.sum(pointwise**p) * cell) ** (1.0 / p)


def left_multiply(mv: Multivector, f: _Field) -> _Field:
    """Left-multiply every lattice value by a constant multivector."""
    if mv.algebra is not f.algebra:
        raise ValueError("algebra mismatch between multivector and field")
    return type(f)(f.grid, f.algebra, left_multiply_array(f.algebra, mv.coeffs, f.data))


def pairing0(f: CliffordField, g: CliffordField) -> complex:
    """Scalar pairing <f,g>_0 = 2**n sum_k [f(x_k)^dagger g(x_k)]_0 prod h.

    The first argument is daggered, so [f^dagger g]_0 = sum_A conj(f_A) g_A.
    """
    f._check_compatible(g)
    acc = np.sum(np.conj(f.data) * g.data)
    return complex(f.algebra.dim * f.grid.cell_volume * acc)


# -- serialization -------------------------------------------------------------

_FIELD_CLASSES = {"space": CliffordField, "frequency": SpectralField}


def _header(field: _Field) -> dict:
    return {
        "n": field.grid.n,
        "sizes": list(field.grid.sizes),
        "spacing": list(field.grid.spacing),
        "algebra_n": field.algebra.n,
        "domain": field.domain,
    }


def save_field_json(field: _Field, path) -> None:
    """JSON format: GridSpec header plus a flat [re, im] pair per coefficient."""
    flat = field.data.ravel()
    payload = _header(field)
    payload["values"] = [[float(c.real), float(c.imag)] for c in flat]
    with open(path, "w") as fh:
        json.dump(payload, fh)


def load_field_json(path) -> _Field:
    with open(path) as fh:
        payload = json.load(fh)
    return _from_header_values(
        payload, np.array([complex(re, im) for re, im in payload["values"]])
    )


def save_field_binary(field: _Field, path) -> None:
    """Binary format: magic, one-line JSON header, then little-endian complex128."""
    with open(path, "wb") as fh:
        fh.write(_BINARY_MAGIC)
        fh.write(json.dumps(_header(field)).encode())
        fh.write(b"\n")
        fh.write(np.ascontiguousarray(field.data, dtype="<c16").tobytes())


def load_field_binary(path) -> _Field:
    with open(path, "rb") as fh:
        magic = fh.read(len(_BINARY_MAGIC))
        if magic != _BINARY_MAGIC:
            raise ValueError(f"not a field file: bad magic {magic!r}")
        header = json.loads(fh.readline().decode())
        raw = fh.read()
    values = np.frombuffer(raw, dtype="<c16")
    return _from_header_values(header, values)


def _from_header_values(header: dict, values: np.ndarray) -> _Field:
    grid = GridSpec(tuple(header["sizes"]), tuple(header["spacing"]))
    algebra = CliffordAlgebra(int(header["algebra_n"]))
    cls = _FIELD_CLASSES[header["domain"]]
    data = values.astype(complex).reshape(grid.shape + (algebra.dim,))
    return cls(grid, algebra, data)


def save_field(field: _Field, path) -> None:
    path = str(path)
    if path.endswith(".json"):
        save_field_json(field, path)
    else:
        save_field_binary(field, path)


def load_field(path) -> _Field:
    path = str(path)
    if path.endswith(".json"):
        return load_field_json(path)
    return load_field_binary(path)
