"""One-shot verification battery behind the `verify` CLI subcommand.

Each check returns a row (name, value, tolerance, pass) where `value` is
the measured quantity (a residual, a ratio, or an indicator) and the check
passes when value <= tolerance.  All randomness is derived from the single
configured seed, so repeated runs are byte-identical.
"""

from __future__ import annotations

import os
import tempfile

import numpy as np

from .algebra import CliffordAlgebra, left_multiply_array, norm0_array
from .grid import (
    CliffordField,
    GridSpec,
    dft_forward,
    dft_inverse,
    left_multiply,
    load_field,
    lp_norm,
    pairing0,
    save_field,
    xi_radius,
)
from .kernels import (
    cauchy_kernel_closed_field,
    cauchy_kernel_pm,
    kernel_K,
    pde_residual,
    semigroup_apply,
    solve_cauchy,
)
from .lab import (
    BandlimitSpec,
    bandwidth_estimate,
    bernstein_ratios,
    favard_constant,
    lks_check,
    make_bandlimited,
    make_urysohn_bump,
    urysohn_profile,
)
from .operators import (
    FellerParams,
    apply_dirac,
    apply_directional_riesz,
    apply_riesz_feller,
    apply_riesz_hilbert,
    hardy_project,
    riesz_feller_power,
    symbol_chi,
    symbol_h_theta,
)


def _random_field(grid, algebra, rng, zero_dc=False) -> CliffordField:
    data = rng.standard_normal(grid.shape + (algebra.dim,)) + 1j * rng.standard_normal(
        grid.shape + (algebra.dim,)
    )
    f = CliffordField(grid, algebra, data)
    if zero_dc:
        F = dft_forward(f)
        F.data[tuple(N // 2 for N in grid.sizes)] = 0.0
        f = dft_inverse(F)
    return f


def _rel(diff_field, ref_field) -> float:
    ref = ref_field.norm0().max()
    return float(diff_field.norm0().max() / ref) if ref else 0.0


def verify_suite(n: int, size: int, spacing: float, seed: int) -> list[tuple]:
    """Run the invariant battery; returns rows (name, value, tolerance, pass)."""
    rng = np.random.default_rng(seed)
    rows = []

    def check(name: str, value: float, tol: float):
        rows.append((name, float(value), float(tol), bool(value <= tol)))

    # ---- algebra --------------------------------------------------------------
    for n_alg in (1, 2, 3, 4):
        alg = CliffordAlgebra(n_alg)
        worst = 0.0
        for j in range(1, n_alg + 1):
            for k in range(1, n_alg + 1):
                ej, ek = alg.generator(j), alg.generator(k)
                anti = ej * ek + ek * ej
                target = alg.scalar(-2.0 if j == k else 0.0)
                worst = max(worst, (anti - target).norm0())
        check(f"algebra/anticommutation_n{n_alg}", worst, 0.0)

    alg = CliffordAlgebra(3)
    pairs = 400
    a = rng.standard_normal((pairs, alg.dim)) + 1j * rng.standard_normal((pairs, alg.dim))
    b = rng.standard_normal((pairs, alg.dim)) + 1j * rng.standard_normal((pairs, alg.dim))
    prod = left_multiply_array(alg, a, b)
    ratio = norm0_array(alg, prod) / (norm0_array(alg, a) * norm0_array(alg, b))
    check("algebra/submultiplicativity", ratio.max(), 1.0 + 1e-12)
    tri = norm0_array(alg, a + b) / (norm0_array(alg, a) + norm0_array(alg, b))
    check("algebra/triangle", tri.max(), 1.0 + 1e-12)
    c = rng.standard_normal((pairs, alg.dim)) + 1j * rng.standard_normal((pairs, alg.dim))
    assoc = left_multiply_array(alg, left_multiply_array(alg, a, b), c) - left_multiply_array(
        alg, a, left_multiply_array(alg, b, c)
    )
    scale = norm0_array(alg, a) * norm0_array(alg, b) * norm0_array(alg, c)
    check("algebra/associativity", (norm0_array(alg, assoc) / scale).max(), 1e-12)
    x = rng.standard_normal(alg.n)
    sq = alg.vector(x) * alg.vector(x) - alg.scalar(-float(np.dot(x, x)))
    check("algebra/vector_square", sq.norm0(), 1e-12)
    lam = alg.random(rng)
    check(
        "algebra/norm_inner_consistency",
        abs(lam.inner(lam) - lam.norm0() ** 2) / lam.norm0() ** 2,
        1e-12,
    )

    # ---- spectral grid ---------------------------------------------------------
    grid = GridSpec.cubic(n, size, spacing)
    algn = CliffordAlgebra(n)
    f = _random_field(grid, algn, rng)
    round_trip = dft_inverse(dft_forward(f))
    check("grid/dft_roundtrip", (round_trip - f).norm0().max() / f.norm0().max(), 1e-12)
    F = dft_forward(f)
    plancherel = abs(lp_norm(f, 2) ** 2 - lp_norm(F, 2) ** 2 / (2 * np.pi) ** n)
    check("grid/plancherel", plancherel / lp_norm(f, 2) ** 2, 1e-10)
    g = _random_field(grid, algn, rng)
    mink = lp_norm(f + g, 2) / (lp_norm(f, 2) + lp_norm(g, 2))
    check("grid/minkowski", mink, 1.0 + 1e-12)
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "field.rfb")
        save_field(f, path)
        loaded = load_field(path)
        check("grid/serialization_roundtrip", (loaded - f).norm0().max(), 0.0)

    # ---- operator identities ----------------------------------------------------
    fz = _random_field(grid, algn, rng, zero_dc=True)
    ddf = apply_dirac(apply_dirac(fz))
    spec = dft_forward(fz)
    lap = dft_inverse(type(spec)(grid, algn, xi_radius(grid)[..., None] ** 2 * spec.data))
    check("ops/dirac_squared_vs_laplacian", _rel(ddf - lap, lap), 1e-12)
    hh = apply_riesz_hilbert(apply_riesz_hilbert(fz))
    check("ops/hilbert_involution", _rel(hh - fz, fz), 1e-12)
    recomposed = None
    for j in range(1, n + 1):
        term = left_multiply(algn.generator(j), apply_directional_riesz(fz, j))
        recomposed = term if recomposed is None else recomposed + term
    check("ops/hilbert_as_riesz_sum", _rel(recomposed - apply_riesz_hilbert(fz), fz), 1e-12)

    f_plus = hardy_project(+1, fz)
    f_minus = hardy_project(-1, fz)
    check("ops/hardy_sum", _rel(f_plus + f_minus - fz, fz), 1e-12)
    check("ops/hardy_idempotent", _rel(hardy_project(+1, f_plus) - f_plus, fz), 1e-12)
    check("ops/hardy_annihilation", hardy_project(-1, f_plus).norm0().max() / fz.norm0().max(), 1e-12)

    theta = 0.7
    h_sym = symbol_h_theta(grid, n, theta)
    mixed = symbol_chi(grid, n, -1) + np.exp(-1j * np.pi * theta) * symbol_chi(grid, n, +1)
    dc = tuple(N // 2 for N in grid.sizes)
    diff = np.abs(h_sym - mixed)
    diff[dc] = 0.0  # symbols are defined off xi = 0; DC carries separate policies
    check("ops/h_theta_decomposition", diff.max(), 1e-12)
    lam = algn.random(rng)
    h_lam = left_multiply_array(algn, h_sym, np.broadcast_to(lam.coeffs, h_sym.shape))
    mags = norm0_array(algn, h_lam)
    mags_ok = np.delete(mags.reshape(-1), np.ravel_multi_index(dc, grid.shape))
    check("ops/h_theta_isometry", np.abs(mags_ok / lam.norm0() - 1.0).max(), 1e-12)

    params = FellerParams(alpha=0.6, theta=0.9)
    powered = riesz_feller_power(fz, params, 4)
    composed = fz
    for _ in range(4):
        composed = apply_riesz_feller(composed, params)
    check("ops/power_vs_composition_k4", _rel(powered - composed, composed), 1e-8)
    d11 = apply_riesz_feller(fz, FellerParams(alpha=1.0, theta=1.0))
    check("ops/riesz_feller_11_is_dirac", _rel(d11 - apply_dirac(fz), d11), 1e-12)

    # ---- kernels and the Cauchy solver -------------------------------------------
    z = 0.8
    K = kernel_K(grid, algn, z, 0.7)
    spec_K = dft_forward(K)
    target = np.exp(-z * xi_radius(grid) ** 0.7)
    err = np.abs(spec_K.data[..., 0] - target).max() + np.abs(spec_K.data[..., 1:]).max()
    check("kernel/characteristic_function", err, 1e-12)
    check("kernel/unit_mass_dc", abs(spec_K.data[dc][0] - 1.0), 1e-12)
    Ep = cauchy_kernel_pm(grid, algn, z, 0.7, +1)
    chi_m = symbol_chi(grid, n, -1)
    spec_target = target[..., None] * chi_m
    check(
        "kernel/hardy_projected_spectrum",
        np.abs(dft_forward(Ep).data - spec_target).max(),
        1e-12,
    )

    fine = GridSpec.cubic(1, 512, 0.1)
    alg1 = CliffordAlgebra(1)
    K1 = kernel_K(fine, alg1, 1.0, 1.0)
    closed = cauchy_kernel_closed_field(fine, alg1, 1.0)
    poisson_closed = 2.0 * closed.data[..., 0].real  # scalar part of E is K/2
    window = slice(fine.sizes[0] // 4, 3 * fine.sizes[0] // 4)
    rel = np.abs(K1.data[window, 0].real - poisson_closed[window]).max() / np.abs(
        poisson_closed[window]
    ).max()
    check("kernel/poisson_closed_form_alpha1", rel, 1e-2)

    sg1 = semigroup_apply(semigroup_apply(fz, 0.3, 0.7), 0.5, 0.7)
    sg2 = semigroup_apply(fz, 0.8, 0.7)
    check("semigroup/composition", _rel(sg1 - sg2, sg2), 1e-10)
    check("semigroup/identity_t0", _rel(semigroup_apply(fz, 0.0, 0.7) - fz, fz), 0.0)

    params_c = FellerParams(alpha=0.8, theta=1.0)
    spec_f = BandlimitSpec(R=0.6 * grid.nyquist_radius, seed=seed + 1)
    fb = make_bandlimited(grid, algn, spec_f)
    r1 = pde_residual(fb, 0.5, params_c, delta=1e-2)
    r2 = pde_residual(fb, 0.5, params_c, delta=5e-3)
    check("cauchy/residual_second_order", abs(r1 / r2 - 4.0), 0.5)
    fb_plus = hardy_project(+1, fb)
    errs = [
        lp_norm(solve_cauchy(fb, x0, params_c).field - fb_plus, 2)
        for x0 in (1e-1, 1e-2, 1e-3, 1e-4)
    ]
    monotone = all(errs[i] > errs[i + 1] for i in range(len(errs) - 1))
    check("cauchy/boundary_recovery_monotone", 0.0 if monotone else 1.0, 0.0)
    sup_ratio = max(
        lp_norm(solve_cauchy(fb, x0, params_c).field, 2) for x0 in (0.1, 0.5, 1.0, 2.0)
    ) / lp_norm(fb_plus, 2)
    check("cauchy/hardy_sup_bound", sup_ratio, 1.0 + 1e-8)

    # ---- Paley-Wiener lab ----------------------------------------------------------
    pw_params = FellerParams(alpha=1.0, theta=1.0)
    plus_seq, minus_seq = bernstein_ratios(fb, pw_params, 2.0, 16)
    check(
        "pw/bernstein_ratio_p2",
        max(max(plus_seq.values), max(minus_seq.values)),
        1.0 + 1e-10,
    )
    under, _ = bernstein_ratios(fb, pw_params, 2.0, 16, radius=plus_seq.oracle_radius / 2)
    check("pw/negative_control_divergence", 10.0 / max(under.values), 1.0)
    bw = bandwidth_estimate(fb, pw_params, 2.0, 64)
    dxi = max(grid.freq_steps)
    check("pw/bandwidth_estimate", abs(bw.limit_estimate - bw.oracle_radius), dxi)
    monotone_bw = all(
        bw.values[i] <= bw.values[i + 1] * (1 + 1e-12) for i in range(len(bw.values) - 1)
    )
    check("pw/bandwidth_monotone_p2", 0.0 if monotone_bw else 1.0, 0.0)

    # plateau must cover the band of fb (R = 0.6 Nyquist) for psi * f = f
    bump_R = 0.65 * grid.nyquist_radius
    bump_eps = 0.15 * grid.nyquist_radius
    bump = make_urysohn_bump(grid, algn, bump_R, bump_eps)
    spec_fb = dft_forward(fb)
    reproduced = dft_inverse(
        type(spec_fb)(
            grid, algn, urysohn_profile(xi_radius(grid), bump_R, bump_eps)[..., None]
            * spec_fb.data
        )
    )
    check("pw/urysohn_reproduction", _rel(reproduced - fb, fb), 1e-12)
    check("pw/urysohn_plateau", abs(dft_forward(bump).data[dc][0] - 1.0), 1e-10)

    for j, target in ((0, 1.0), (1, np.pi / 2), (2, np.pi**2 / 8)):
        check(f"favard/K{j}", abs(favard_constant(j).value - target), 1e-8)
    lks_fail = 0
    for trial in range(10):
        ftrial = make_bandlimited(grid, algn, BandlimitSpec(R=0.5 * grid.nyquist_radius, seed=seed + 10 + trial))
        for k, ell in ((1, 2), (1, 3), (2, 3)):
            if not lks_check(ftrial, pw_params, 2.0, k, ell).passed:
                lks_fail += 1
    check("lks/random_trials", float(lks_fail), 0.0)

    pair_val = pairing0(fb, fb)
    check(
        "pairing/plancherel_identity",
        abs(pair_val.real - lp_norm(fb, 2) ** 2) / lp_norm(fb, 2) ** 2 + abs(pair_val.imag),
        1e-10,
    )
    return rows
