"""Levy-Feller kernels, generalized Cauchy kernels, and the Cauchy-problem solver.

The kernel K_{alpha,n}(., z), Re(z) > 0, is the inverse transform of the
stable characteristic function exp(-z |xi|**alpha); its Hardy projections
E_{alpha,n}^{+-} reduce at alpha = 1 to the classical Cauchy kernel

    E(x, t) = (t + x) / (2 w_n (t**2 + |x|**2)**((n+1)/2)),

with w_n = pi**((n+1)/2) / Gamma((n+1)/2) the measure of the unit n-sphere.

The evolution problem  d/dx0 u + D_theta^alpha u = 0,  u(., 0) = f,
diagonalizes over the Hardy split: for x0 > 0 the chi_- component evolves
by exp(-x0 |xi|**alpha), for x0 < 0 the chi_+ component evolves by
exp(-x0 exp(-i pi theta) |xi|**alpha) — which decays only when
|1 - theta| < alpha/2 (then cos(pi theta) < 0), so the negative branch is
gated on that admissibility condition.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.special import gamma as _gamma

from .algebra import CliffordAlgebra, Multivector
from .grid import (
    CliffordField,
    GridSpec,
    SpectralField,
    apply_symbol_array,
    dft_inverse,
    lp_norm,
    xi_radius,
)
from .operators import (
    FellerParams,
    apply_riesz_feller,
    symbol_chi,
    symbol_semigroup,
)

THREADS_ENV = "RFL_THREADS"


@dataclass(frozen=True)
class ComplexEvolutionTime:
    """Evolution magnitude t >= 0 and phase gamma, packed as z = t exp(i pi gamma / 2).

    Kernel evaluation needs Re(z) > 0, i.e. |gamma| < 1 for t > 0; the
    Feller semigroup class additionally asks |gamma| < alpha.
    """

    t: float
    gamma: float = 0.0

    def __post_init__(self):
        if self.t < 0:
            raise ValueError(f"evolution magnitude t must be nonnegative, got {self.t}")

    @property
    def z(self) -> complex:
        return self.t * np.exp(1j * math.pi * self.gamma / 2.0)

    @property
    def kernel_valid(self) -> bool:
        return self.t > 0 and abs(self.gamma) < 1.0

    def feller_admissible(self, alpha: float) -> bool:
        return abs(self.gamma) < alpha


def _as_z(z) -> complex:
    if isinstance(z, ComplexEvolutionTime):
        return z.z
    return complex(z)


def sphere_measure(n: int) -> float:
    """w_n: the measure of the unit sphere S^n in R^(n+1)."""
    return math.pi ** ((n + 1) / 2.0) / _gamma((n + 1) / 2.0)


def kernel_K(grid: GridSpec, algebra: CliffordAlgebra, z, alpha: float) -> CliffordField:
    """Stable kernel: inverse transform of exp(-z |xi|**alpha), Re(z) > 0."""
    zc = _as_z(z)
    if not zc.real > 0:
        raise ValueError(f"kernel requires Re(z) > 0, got z = {zc}")
    spec = np.zeros(grid.shape + (algebra.dim,), dtype=complex)
    spec[..., 0] = np.exp(-zc * xi_radius(grid) ** alpha)
    return dft_inverse(SpectralField(grid, algebra, spec))


def cauchy_kernel_closed(x, t: float, algebra: CliffordAlgebra) -> Multivector:
    """Classical Cauchy kernel E(x, t): paravector (t + x) over 2 w_n (t^2+|x|^2)^((n+1)/2)."""
    if not t > 0:
        raise ValueError(f"Cauchy kernel requires t > 0, got {t}")
    x = np.asarray(x, dtype=float)
    n = algebra.n
    if x.shape != (n,):
        raise ValueError(f"point must have {n} coordinates, got shape {x.shape}")
    denom = 2.0 * sphere_measure(n) * (t**2 + float(np.dot(x, x))) ** ((n + 1) / 2.0)
    coeffs = np.zeros(algebra.dim, dtype=complex)
    coeffs[0] = t / denom
    for j in range(n):
        coeffs[1 << j] = x[j] / denom
    return Multivector(algebra, coeffs)


def cauchy_kernel_closed_field(grid: GridSpec, algebra: CliffordAlgebra, t: float) -> CliffordField:
    """E(x, t) sampled on the whole lattice (vectorized closed form)."""
    if not t > 0:
        raise ValueError(f"Cauchy kernel requires t > 0, got {t}")
    n = grid.n
    mesh = grid.x_mesh()
    r2 = sum(m**2 for m in mesh)
    denom = 2.0 * sphere_measure(n) * (t**2 + r2) ** ((n + 1) / 2.0)
    data = np.zeros(grid.shape + (algebra.dim,), dtype=complex)
    data[..., 0] = t / denom
    for j in range(n):
        data[..., 1 << j] = mesh[j] / denom
    return CliffordField(grid, algebra, data)


def poisson_kernel_closed_field(grid: GridSpec, algebra: CliffordAlgebra, t: float) -> CliffordField:
    """Scalar Poisson kernel K_{1,n}(x, t) = t / (w_n (t^2 + |x|^2)^((n+1)/2))."""
    if not t > 0:
        raise ValueError(f"Poisson kernel requires t > 0, got {t}")
    r2 = sum(m**2 for m in grid.x_mesh())
    data = np.zeros(grid.shape + (algebra.dim,), dtype=complex)
    data[..., 0] = t / (sphere_measure(grid.n) * (t**2 + r2) ** ((grid.n + 1) / 2.0))
    return CliffordField(grid, algebra, data)


def cauchy_kernel_pm(
    grid: GridSpec, algebra: CliffordAlgebra, z, alpha: float, sign: int
) -> CliffordField:
    """Generalized Cauchy kernel E^+- = (K +- H K)/2 via the spectral chi projection."""
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    zc = _as_z(z)
    if not zc.real > 0:
        raise ValueError(f"kernel requires Re(z) > 0, got z = {zc}")
    spec = np.exp(-zc * xi_radius(grid) ** alpha)
    chi = symbol_chi(grid, algebra.n, -sign)  # E^+ rides on chi_-, E^- on chi_+
    return dft_inverse(SpectralField(grid, algebra, spec[..., None] * chi))


def semigroup_apply(
    f: CliffordField, t: float, alpha: float, gamma: float = 0.0
) -> CliffordField:
    """One step of the Levy-Feller semigroup: multiplier exp(-t e^{i pi gamma/2} |xi|**alpha).

    t = 0 returns f unchanged (exact identity).  Rejects parameter choices
    where the multiplier grows (t < 0 or t cos(pi gamma / 2) < 0).
    """
    if t < 0:
        raise ValueError(f"semigroup time must be nonnegative, got {t}")
    if t == 0:
        return f.copy()
    if t * math.cos(math.pi * gamma / 2.0) < 0:
        raise ValueError(
            f"unbounded multiplier: t cos(pi gamma/2) = {t * math.cos(math.pi * gamma / 2.0):.3g} < 0"
        )
    z = t * np.exp(1j * math.pi * gamma / 2.0)
    return apply_symbol_array(symbol_semigroup(f.grid, f.algebra.n, alpha, complex(z)), f)


@dataclass
class CauchySolution:
    """The evolved field u(., x0) together with its defining data."""

    grid: GridSpec
    params: FellerParams
    x0: float
    field: CliffordField


def _solution_symbol(grid: GridSpec, n_alg: int, params: FellerParams, x0: float) -> np.ndarray:
    rho = xi_radius(grid)
    if x0 > 0:
        factor = np.exp(-x0 * rho**params.alpha)
        chi = symbol_chi(grid, n_alg, -1)
    else:
        factor = np.exp(-x0 * np.exp(-1j * math.pi * params.theta) * rho**params.alpha)
        chi = symbol_chi(grid, n_alg, +1)
    return factor[..., None] * chi


def solve_cauchy(f: CliffordField, x0: float, params: FellerParams) -> CauchySolution:
    """Evolve boundary data f to height x0.

    x0 > 0 evolves the f_+ part by exp(-x0 |xi|**alpha); x0 < 0 evolves the
    f_- part by exp(-x0 exp(-i pi theta)|xi|**alpha) and requires the
    admissibility condition |1 - theta| < alpha/2; x0 = 0 returns f itself.
    """
    if x0 == 0:
        return CauchySolution(f.grid, params, 0.0, f.copy())
    if x0 < 0 and not params.cauchy_admissible:
        raise ValueError(
            f"negative-height evolution needs |1 - theta| < alpha/2; "
            f"got theta = {params.theta}, alpha = {params.alpha}"
        )
    sym = _solution_symbol(f.grid, f.algebra.n, params, x0)
    return CauchySolution(f.grid, params, float(x0), apply_symbol_array(sym, f))


def pde_residual(
    f: CliffordField,
    x0: float,
    params: FellerParams,
    delta: float | None = None,
    p: float = 2.0,
) -> float:
    """Central-difference residual of d/dx0 u + D_theta^alpha u at height x0.

    Second-order in delta; the default step is 1e-3 max(1, |x0|).  The
    stencil x0 +- delta must stay on one sign branch of the solver.
    """
    if delta is None:
        delta = 1e-3 * max(1.0, abs(x0))
    if not delta > 0:
        raise ValueError(f"delta must be positive, got {delta}")
    lo, hi = x0 - delta, x0 + delta
    if not (lo > 0 and hi > 0) and not (lo < 0 and hi < 0):
        raise ValueError(
            f"stencil [{lo}, {hi}] crosses the boundary x0 = 0; shrink delta or move x0"
        )
    u_mid = solve_cauchy(f, x0, params).field
    u_hi = solve_cauchy(f, hi, params).field
    u_lo = solve_cauchy(f, lo, params).field
    d_x0 = (1.0 / (2.0 * delta)) * (u_hi - u_lo)
    return lp_norm(d_x0 + apply_riesz_feller(u_mid, params), p)


def _worker_count() -> int:
    raw = os.environ.get(THREADS_ENV, "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def evolve_schedule(
    f: CliffordField,
    params: FellerParams,
    x0_list,
    p: float = 2.0,
    delta: float | None = None,
    with_residual: bool = True,
):
    """Evaluate u(., x0) over a schedule; rows of (x0, ||u||_p, residual, wall ms).

    Residuals are skipped (NaN) at x0 = 0, where the two one-sided branches
    meet.  Honors the RFL_THREADS worker cap; output order follows the
    schedule regardless of scheduling.
    """

    def one(x0: float):
        start = time.perf_counter()
        u = solve_cauchy(f, x0, params)
        norm = lp_norm(u.field, p)
        if with_residual and x0 != 0:
            res = pde_residual(f, x0, params, delta=delta, p=p)
        else:
            res = float("nan")
        elapsed_ms = 1e3 * (time.perf_counter() - start)
        return (float(x0), norm, res, elapsed_ms)

    workers = _worker_count()
    x0_list = list(x0_list)
    if workers > 1 and len(x0_list) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, x0_list))
    return [one(x0) for x0 in x0_list]
