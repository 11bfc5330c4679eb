"""Radial toolkit: Hankel-type Fourier inversion, the Bessel operator, radial bumps.

For a radially symmetric profile phi the n-dimensional transform collapses
to a one-dimensional Bessel quadrature:

    integral phi(|xi|) exp(i<x,xi>) dxi
        = (2 pi)**(n/2) |x|**(-(n-2)/2) integral_0^inf phi(rho) rho**(n/2)
          J_{n/2-1}(rho |x|) drho

which this module evaluates by trapezoid rule on a uniform radial grid.
The radial part of the frequency Laplacian is the Bessel operator
Delta~_lambda = d^2/drho^2 + (2 lambda + 1)/rho d/drho, lambda > -1/2.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import gamma as _gamma, jv

from .algebra import CliffordAlgebra
from .grid import CliffordField, GridSpec


def radial_fourier(rho: np.ndarray, phi: np.ndarray, r_out: np.ndarray, n: int) -> np.ndarray:
    """Transform a radial profile by the Bessel quadrature above.

    Parameters
    ----------
    rho : uniformly spaced radial sample points of the input profile
    phi : profile values at `rho` (real or complex)
    r_out : radii at which to evaluate the transform (r = 0 allowed)
    n : ambient dimension

    The trapezoid rule is applied over the sampled range, so the profile
    should be negligible beyond rho[-1].
    """
    rho = np.asarray(rho, dtype=float)
    phi = np.asarray(phi)
    r_out = np.atleast_1d(np.asarray(r_out, dtype=float))
    if rho.size == 0 or phi.size == 0:
        raise ValueError("empty radial profile")
    if rho.shape != phi.shape:
        raise ValueError("rho and phi must have matching shapes")
    nu = n / 2.0 - 1.0
    out = np.empty(r_out.shape, dtype=complex)
    for i, r in enumerate(r_out):
        if r == 0.0:
            # J_nu(z) ~ (z/2)**nu / Gamma(nu+1) collapses the kernel to a constant
            integrand = phi * rho ** (n - 1) * (0.5**nu / _gamma(nu + 1.0))
        else:
            integrand = phi * rho ** (n / 2.0) * jv(nu, rho * r) / r ** (n / 2.0 - 1.0)
        out[i] = (2.0 * math.pi) ** (n / 2.0) * np.trapezoid(integrand, rho)
    return out


def bessel_operator_apply(rho: np.ndarray, phi: np.ndarray, lam: float) -> np.ndarray:
    """Apply Delta~_lam = d^2/drho^2 + (2 lam + 1)/rho d/drho by finite differences.

    Uses second-order central stencils inside, one-sided second-order
    stencils at the ends, and the even-extension limit
    Delta~_lam phi(0) = 2 (lam + 1) phi''(0) when the grid starts at 0.
    """
    if not lam > -0.5:
        raise ValueError(f"Bessel operator order must exceed -1/2, got {lam}")
    rho = np.asarray(rho, dtype=float)
    phi = np.asarray(phi, dtype=complex if np.iscomplexobj(phi) else float)
    if rho.size < 5:
        raise ValueError(f"need at least 5 radial samples, got {rho.size}")
    if rho.shape != phi.shape:
        raise ValueError("rho and phi must have matching shapes")
    h = rho[1] - rho[0]
    if h <= 0 or not np.allclose(np.diff(rho), h, rtol=1e-10, atol=0.0):
        raise ValueError("radial grid must be uniform and increasing")

    d1 = np.empty_like(phi)
    d2 = np.empty_like(phi)
    d1[1:-1] = (phi[2:] - phi[:-2]) / (2 * h)
    d2[1:-1] = (phi[2:] - 2 * phi[1:-1] + phi[:-2]) / h**2
    d1[0] = (-3 * phi[0] + 4 * phi[1] - phi[2]) / (2 * h)
    d1[-1] = (3 * phi[-1] - 4 * phi[-2] + phi[-3]) / (2 * h)
    d2[0] = (2 * phi[0] - 5 * phi[1] + 4 * phi[2] - phi[3]) / h**2
    d2[-1] = (2 * phi[-1] - 5 * phi[-2] + 4 * phi[-3] - phi[-4]) / h**2

    out = np.empty_like(phi)
    interior = slice(1, None) if rho[0] == 0.0 else slice(None)
    rr = rho[interior]
    out[interior] = d2[interior] + (2 * lam + 1) / rr * d1[interior]
    if rho[0] == 0.0:
        out[0] = 2.0 * (lam + 1.0) * d2[0]
    return out


def bessel_bump_profile(r: np.ndarray, R: float, n: int) -> np.ndarray:
    """(R r)**(-n/2) J_{n/2}(R r) with the small-argument limit 2**(-n/2)/Gamma(n/2+1) at r = 0."""
    r = np.asarray(r, dtype=float)
    z = R * r
    limit = 0.5 ** (n / 2.0) / _gamma(n / 2.0 + 1.0)
    safe = np.where(z == 0.0, 1.0, z)
    vals = jv(n / 2.0, safe) / safe ** (n / 2.0)
    return np.where(z == 0.0, limit, vals)


def make_bessel_radial(grid: GridSpec, algebra: CliffordAlgebra, R: float) -> CliffordField:
    """Radially symmetric scalar field psi(x) = (R|x|)**(-n/2) J_{n/2}(R|x|).

    Its spectrum concentrates in the ball |xi| <~ R; on fine grids at least
    99% of the l2 mass sits inside.
    """
    if not 0 < R <= grid.nyquist_radius:
        raise ValueError(
            f"radius must satisfy 0 < R <= Nyquist radius {grid.nyquist_radius:.4g}, got {R}"
        )
    data = np.zeros(grid.shape + (algebra.dim,), dtype=complex)
    data[..., 0] = bessel_bump_profile(grid.x_radius(), R, grid.n)
    return CliffordField(grid, algebra, data)


def radial_symmetry_defect(field: CliffordField, decimals: int = 9) -> float:
    """Largest coefficient spread among lattice points sharing (rounded) radius |x|."""
    radii = np.round(field.grid.x_radius().ravel(), decimals)
    flat = field.data.reshape(-1, field.algebra.dim)
    order = np.argsort(radii, kind="stable")
    radii, flat = radii[order], flat[order]
    defect = 0.0
    start = 0
    for i in range(1, radii.size + 1):
        if i == radii.size or radii[i] != radii[start]:
            group = flat[start:i]
            defect = max(defect, float(np.abs(group - group[0]).max()))
            start = i
    return defect
