"""Fourier symbols and operator application for the Riesz-Feller calculus.

All operators act as left Fourier multipliers.  With the unit frequency
vector w = xi/|xi| (a Clifford vector):

    Dirac D            :  -i xi
    Riesz derivative   :  |xi|**alpha
    Riesz-Hilbert H    :  -i w           (H = sum_j e_j R_j, H**2 = I)
    directional R_j    :  -i xi_j / |xi|
    chi_plus/minus     :  (1 +- i w) / 2  (complementary idempotents)
    h_theta            :  exp(-i pi theta/2) (cos(pi theta/2) + w sin(pi theta/2))
    Riesz-Feller       :  |xi|**alpha h_theta(xi)

Symbols are singular at xi = 0; the DC bin carries an explicit policy:
0 for D, (-Delta)**(alpha/2), H, R_j and the Riesz-Feller operator,
e_0/2 for chi_plus/minus (so the Hardy split preserves the mean), and
e_0 for h_theta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gamma as _gamma

from .algebra import CliffordAlgebra, Multivector, left_multiply_array
from .grid import CliffordField, GridSpec, SpectralField, apply_symbol_array, xi_radius


@dataclass(frozen=True)
class FellerParams:
    """Order alpha in (0,1] and skewness theta of the Riesz-Feller operator.

    Operator application accepts any real theta; the Cauchy solver's
    negative branch additionally needs |1 - theta| < alpha/2 (checked via
    `cauchy_admissible`), which forces cos(pi theta) < 0 and hence decay.
    """

    alpha: float
    theta: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"order alpha must satisfy 0 < alpha <= 1, got {self.alpha}")

    @property
    def cauchy_admissible(self) -> bool:
        return abs(1.0 - self.theta) < self.alpha / 2.0


def _dc_index(grid: GridSpec) -> tuple[int, ...]:
    return tuple(N // 2 for N in grid.sizes)


@lru_cache(maxsize=64)
def _unit_vector_coeffs(grid: GridSpec, n_alg: int) -> np.ndarray:
    """Coefficient array of the Clifford vector xi/|xi|; zero at the DC bin."""
    alg = CliffordAlgebra(n_alg)
    if grid.n != n_alg:
        raise ValueError(f"grid dimension {grid.n} and algebra n={n_alg} must agree")
    rho = xi_radius(grid)
    safe = np.where(rho == 0.0, 1.0, rho)
    out = np.zeros(grid.shape + (alg.dim,), dtype=complex)
    for j, mesh in enumerate(grid.xi_mesh()):
        out[..., 1 << j] = np.where(rho == 0.0, 0.0, mesh / safe)
    out.setflags(write=False)
    return out


def _blank(grid: GridSpec, alg: CliffordAlgebra) -> np.ndarray:
    return np.zeros(grid.shape + (alg.dim,), dtype=complex)


@lru_cache(maxsize=64)
def symbol_dirac(grid: GridSpec, n_alg: int) -> np.ndarray:
    """-i xi; vanishes at DC."""
    alg = CliffordAlgebra(n_alg)
    out = _blank(grid, alg)
    for j, mesh in enumerate(grid.xi_mesh()):
        out[..., 1 << j] = -1j * mesh
    out.setflags(write=False)
    return out


@lru_cache(maxsize=64)
def symbol_riesz_derivative(grid: GridSpec, n_alg: int, exponent: float) -> np.ndarray:
    """|xi|**exponent on the scalar blade; exponent > 0, so DC is 0."""
    if not exponent > 0:
        raise ValueError(f"exponent must be positive, got {exponent}")
    alg = CliffordAlgebra(n_alg)
    out = _blank(grid, alg)
    out[..., 0] = xi_radius(grid) ** exponent
    out.setflags(write=False)
    return out


@lru_cache(maxsize=64)
def symbol_riesz_hilbert(grid: GridSpec, n_alg: int) -> np.ndarray:
    out = -1j * _unit_vector_coeffs(grid, n_alg)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=64)
def symbol_directional_riesz(grid: GridSpec, n_alg: int, axis: int) -> np.ndarray:
    """Scalar symbol -i xi_j / |xi| of the directional Riesz transform, axis 1-based."""
    if not 1 <= axis <= grid.n:
        raise ValueError(f"axis must be in [1, {grid.n}], got {axis}")
    alg = CliffordAlgebra(n_alg)
    unit = _unit_vector_coeffs(grid, n_alg)
    out = _blank(grid, alg)
    out[..., 0] = -1j * unit[..., 1 << (axis - 1)]
    out.setflags(write=False)
    return out


@lru_cache(maxsize=64)
def symbol_chi(grid: GridSpec, n_alg: int, sign: int) -> np.ndarray:
    """chi_+- = (1 +- i xi/|xi|)/2; the DC bin holds e_0/2 (mean split evenly)."""
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    alg = CliffordAlgebra(n_alg)
    out = _blank(grid, alg)
    out[..., 0] = 0.5
    out += sign * 0.5j * _unit_vector_coeffs(grid, n_alg)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=64)
def symbol_h_theta(grid: GridSpec, n_alg: int, theta: float) -> np.ndarray:
    """Phase symbol h_theta; equals chi_- + exp(-i pi theta) chi_+ off DC, e_0 at DC."""
    alg = CliffordAlgebra(n_alg)
    half = math.pi * theta / 2.0
    phase = np.exp(-1j * half)
    out = _blank(grid, alg)
    out[..., 0] = phase * math.cos(half)
    out += (phase * math.sin(half)) * _unit_vector_coeffs(grid, n_alg)
    out[_dc_index(grid) + (slice(None),)] = 0.0
    out[_dc_index(grid) + (0,)] = 1.0
    out.setflags(write=False)
    return out


@lru_cache(maxsize=64)
def symbol_riesz_feller(grid: GridSpec, n_alg: int, alpha: float, theta: float) -> np.ndarray:
    """|xi|**alpha h_theta(xi); vanishes at DC."""
    rho = xi_radius(grid)
    out = (rho**alpha)[..., None] * symbol_h_theta(grid, n_alg, theta)
    out[_dc_index(grid) + (slice(None),)] = 0.0
    out.setflags(write=False)
    return out


@lru_cache(maxsize=256)
def symbol_riesz_feller_power(
    grid: GridSpec, n_alg: int, alpha: float, theta: float, k: int
) -> np.ndarray:
    """k-th power in one pass: |xi|**(alpha k) (chi_- + exp(-i pi theta k) chi_+).

    Uses the idempotent decomposition of h_theta, so no error accumulates
    across k.  k = 0 is the identity symbol.
    """
    if k < 0:
        raise ValueError(f"power k must be nonnegative, got {k}")
    alg = CliffordAlgebra(n_alg)
    out = _blank(grid, alg)
    if k == 0:
        out[..., 0] = 1.0
        out.setflags(write=False)
        return out
    rho = xi_radius(grid)
    phase = np.exp(-1j * math.pi * theta * k)
    mixed = symbol_chi(grid, n_alg, -1) + phase * symbol_chi(grid, n_alg, +1)
    out = (rho ** (alpha * k))[..., None] * mixed
    out[_dc_index(grid) + (slice(None),)] = 0.0
    out.setflags(write=False)
    return out


@lru_cache(maxsize=256)
def symbol_semigroup(grid: GridSpec, n_alg: int, alpha: float, z: complex) -> np.ndarray:
    """exp(-z |xi|**alpha) on the scalar blade; the DC value is 1."""
    alg = CliffordAlgebra(n_alg)
    out = _blank(grid, alg)
    out[..., 0] = np.exp(-z * xi_radius(grid) ** alpha)
    out.setflags(write=False)
    return out


# -- operator application ------------------------------------------------------


def apply_dirac(f: CliffordField) -> CliffordField:
    return apply_symbol_array(symbol_dirac(f.grid, f.algebra.n), f)


def apply_riesz_derivative(f: CliffordField, alpha: float) -> CliffordField:
    return apply_symbol_array(symbol_riesz_derivative(f.grid, f.algebra.n, alpha), f)


def apply_riesz_hilbert(f: CliffordField) -> CliffordField:
    return apply_symbol_array(symbol_riesz_hilbert(f.grid, f.algebra.n), f)


def apply_directional_riesz(f: CliffordField, axis: int) -> CliffordField:
    return apply_symbol_array(symbol_directional_riesz(f.grid, f.algebra.n, axis), f)


def apply_h_theta(f: CliffordField, theta: float) -> CliffordField:
    return apply_symbol_array(symbol_h_theta(f.grid, f.algebra.n, theta), f)


def apply_riesz_feller(f: CliffordField, params: FellerParams) -> CliffordField:
    return apply_symbol_array(
        symbol_riesz_feller(f.grid, f.algebra.n, params.alpha, params.theta), f
    )


def hardy_project(sign: int, f: CliffordField) -> CliffordField:
    """Hardy boundary projection f_+- = (f +- H f)/2.

    f_+ corresponds to the chi_- multiplier and f_- to chi_+; the DC bin is
    split half-and-half so f_+ + f_- = f holds exactly, mean included.
    """
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    return apply_symbol_array(symbol_chi(f.grid, f.algebra.n, -sign), f)


def hardy_project_spectrum(sign: int, F: SpectralField) -> SpectralField:
    """Spectral-side Hardy projection (chi multiplier without the transforms)."""
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    sym = symbol_chi(F.grid, F.algebra.n, -sign)
    return SpectralField(F.grid, F.algebra, left_multiply_array(F.algebra, sym, F.data))


def riesz_feller_power(f: CliffordField, params: FellerParams, k: int) -> CliffordField:
    """Single-pass (D_theta^alpha)**k; k = 0 returns f unchanged."""
    if k < 0:
        raise ValueError(f"power k must be nonnegative, got {k}")
    if k == 0:
        return f.copy()
    return apply_symbol_array(
        symbol_riesz_feller_power(f.grid, f.algebra.n, params.alpha, params.theta, k), f
    )


def riesz_kernel_eval(axis: int, x) -> float:
    """Closed-form directional Riesz kernel Gamma((n+1)/2)/pi**((n+1)/2) x_j/|x|**(n+1).

    Documentation-grade helper for comparing the truncated principal-value
    convolution against the multiplier form.  x = 0 is a domain error.
    """
    x = np.asarray(x, dtype=float)
    n = x.size
    if not 1 <= axis <= n:
        raise ValueError(f"axis must be in [1, {n}], got {axis}")
    r = float(np.linalg.norm(x))
    if r == 0.0:
        raise ValueError("Riesz kernel is singular at x = 0")
    const = _gamma((n + 1) / 2.0) / math.pi ** ((n + 1) / 2.0)
    return const * float(x[axis - 1]) / r ** (n + 1)


# -- pointwise symbol evaluation (debugging / CLI dump-symbol) -----------------


def _require(params: dict, *names):
    missing = [name for name in names if params.get(name) is None]
    if missing:
        raise ValueError(f"symbol requires parameters: {', '.join(missing)}")


def eval_symbol(
    kind: str,
    xi,
    algebra: CliffordAlgebra,
    *,
    alpha: float | None = None,
    theta: float | None = None,
    axis: int | None = None,
    k: int | None = None,
    z: complex | None = None,
    dc: Multivector | None = None,
) -> Multivector:
    """Evaluate a named symbol at one frequency; the DC policy applies at xi = 0."""
    xi = np.asarray(xi, dtype=float)
    if xi.shape != (algebra.n,):
        raise ValueError(f"frequency must have {algebra.n} components, got shape {xi.shape}")
    rho = float(np.linalg.norm(xi))
    opts = {"alpha": alpha, "theta": theta, "axis": axis, "k": k, "z": z}

    if rho == 0.0:
        if dc is not None:
            return dc
        return _default_dc(kind, algebra, opts)

    unit = algebra.vector(xi / rho)
    e0 = algebra.scalar(1.0)
    if kind == "dirac":
        return algebra.vector(-1j * xi)
    if kind == "riesz-derivative":
        _require(opts, "alpha")
        return algebra.scalar(rho**alpha)
    if kind == "riesz-hilbert":
        return -1j * unit
    if kind == "directional-riesz":
        _require(opts, "axis")
        if not 1 <= axis <= algebra.n:
            raise ValueError(f"axis must be in [1, {algebra.n}], got {axis}")
        return algebra.scalar(-1j * xi[axis - 1] / rho)
    if kind == "chi-plus":
        return 0.5 * e0 + 0.5j * unit
    if kind == "chi-minus":
        return 0.5 * e0 - 0.5j * unit
    if kind == "h-theta":
        _require(opts, "theta")
        half = math.pi * theta / 2.0
        return np.exp(-1j * half) * (math.cos(half) * e0 + math.sin(half) * unit)
    if kind == "riesz-feller":
        _require(opts, "alpha", "theta")
        return rho**alpha * eval_symbol("h-theta", xi, algebra, theta=theta)
    if kind == "riesz-feller-power":
        _require(opts, "alpha", "theta", "k")
        if k == 0:
            return e0
        chi_m = eval_symbol("chi-minus", xi, algebra)
        chi_p = eval_symbol("chi-plus", xi, algebra)
        return rho ** (alpha * k) * (chi_m + np.exp(-1j * math.pi * theta * k) * chi_p)
    if kind == "semigroup":
        _require(opts, "alpha", "z")
        return algebra.scalar(np.exp(-z * rho**alpha))
    raise ValueError(f"unknown symbol kind {kind!r} (choose from {sorted(SYMBOL_KINDS)})")


def _default_dc(kind: str, algebra: CliffordAlgebra, opts: dict) -> Multivector:
    if kind in ("dirac", "riesz-derivative", "riesz-hilbert", "directional-riesz", "riesz-feller"):
        return algebra.zero()
    if kind in ("chi-plus", "chi-minus"):
        return algebra.scalar(0.5)
    if kind == "h-theta":
        return algebra.scalar(1.0)
    if kind == "riesz-feller-power":
        return algebra.scalar(1.0) if opts.get("k") == 0 else algebra.zero()
    if kind == "semigroup":
        return algebra.scalar(1.0)
    raise ValueError(f"unknown symbol kind {kind!r} (choose from {sorted(SYMBOL_KINDS)})")


SYMBOL_KINDS = {
    "dirac": (),
    "riesz-derivative": ("alpha",),
    "riesz-hilbert": (),
    "directional-riesz": ("axis",),
    "chi-plus": (),
    "chi-minus": (),
    "h-theta": ("theta",),
    "riesz-feller": ("alpha", "theta"),
    "riesz-feller-power": ("alpha", "theta", "k"),
    "semigroup": ("alpha", "z"),
}


def build_symbol(kind: str, grid: GridSpec, n_alg: int, **params) -> np.ndarray:
    """Grid-sampled coefficient array for a named symbol (DC policy applied)."""
    if kind == "dirac":
        return symbol_dirac(grid, n_alg)
    if kind == "riesz-derivative":
        return symbol_riesz_derivative(grid, n_alg, params["alpha"])
    if kind == "riesz-hilbert":
        return symbol_riesz_hilbert(grid, n_alg)
    if kind == "directional-riesz":
        return symbol_directional_riesz(grid, n_alg, params["axis"])
    if kind == "chi-plus":
        return symbol_chi(grid, n_alg, +1)
    if kind == "chi-minus":
        return symbol_chi(grid, n_alg, -1)
    if kind == "h-theta":
        return symbol_h_theta(grid, n_alg, params["theta"])
    if kind == "riesz-feller":
        return symbol_riesz_feller(grid, n_alg, params["alpha"], params["theta"])
    if kind == "riesz-feller-power":
        return symbol_riesz_feller_power(
            grid, n_alg, params["alpha"], params["theta"], params["k"]
        )
    if kind == "semigroup":
        return symbol_semigroup(grid, n_alg, params["alpha"], params["z"])
    raise ValueError(f"unknown symbol kind {kind!r} (choose from {sorted(SYMBOL_KINDS)})")
