"""Experiment runner: every lab operation behind one reproducible command line.

Subcommands: verify, bandwidth, bernstein, exp-type, radial-pw, lks, evolve,
kernel-compare, dump-symbol.  Each run echoes its configuration, writes CSV
rows plus a JSON summary (or a single JSON with --format json), and exits
0 on pass, 1 on an invariant violation, 2 on invalid input, 3 on I/O failure.

Flags override values from a JSON --config file, which in turn override the
documented defaults (n=2, grid 64 per axis, spacing 0.5, p=2, seed=0).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time

import numpy as np

from .algebra import CliffordAlgebra
from .grid import GridSpec, lp_norm, save_field
from .kernels import (
    cauchy_kernel_closed_field,
    cauchy_kernel_pm,
    evolve_schedule,
    kernel_K,
    poisson_kernel_closed_field,
    solve_cauchy,
)
from .lab import (
    BandlimitSpec,
    bandwidth_estimate,
    bernstein_ratios,
    exp_type_profile,
    favard_constant,
    lks_check,
    make_bandlimited,
    make_urysohn_bump,
    pointwise_exp_type,
    radial_pw_bound,
)
from .operators import SYMBOL_KINDS, FellerParams, build_symbol, eval_symbol
from .report import ExperimentReport
from .suite import verify_suite

DEFAULT_GRID_BY_N = {1: 256, 2: 64, 3: 32}

DEFAULTS = {
    "n": 2,
    "grid": None,  # resolved from n
    "spacing": 0.5,
    "alpha": 1.0,
    "theta": 1.0,
    "p": 2.0,
    "R": 2.0,
    "eps": 0.25,
    "kmax": 32,
    "x0": None,  # resolved per subcommand
    "seed": 0,
    "out": None,  # resolved from subcommand
    "format": "csv",
    "mode": "random-ball",
    "trials": 20,
    "kind": None,
    "axis": 1,
    "k": 1,
    "xi": None,
    "save_fields": None,
}

_SCHEDULE_COMMANDS = {"evolve", "exp-type"}  # x0 schedules that hit the Cauchy solver


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="spatial dimension (= algebra generators)")
    common.add_argument("--grid", type=int, help="samples per axis (even, >= 4)")
    common.add_argument("--spacing", type=float, help="lattice step per axis")
    common.add_argument("--alpha", type=float, help="operator order, 0 < alpha <= 1")
    common.add_argument("--theta", type=float, help="operator skewness")
    common.add_argument("--p", type=float, help="Lebesgue exponent (> 1)")
    common.add_argument("--R", type=float, help="bandwidth radius for generated fields")
    common.add_argument("--eps", type=float, help="bump transition width")
    common.add_argument("--kmax", type=int, help="largest operator power")
    common.add_argument("--x0", type=float, action="append", help="evolution height (repeatable)")
    common.add_argument("--seed", type=int, help="random seed")
    common.add_argument("--out", type=str, help="output base path (no extension)")
    common.add_argument("--config", type=str, help="JSON config file; flags override it")
    common.add_argument("--format", choices=("csv", "json"), help="output layout")
    common.add_argument("--mode", choices=("random-ball", "plane-wave", "urysohn-bump", "bessel-radial"),
                        help="test-field construction")
    common.add_argument("--trials", type=int, help="number of random trials (lks)")
    common.add_argument("--axis", type=int, help="axis for directional symbols (1-based)")
    common.add_argument("--k", type=int, help="power for power symbols")
    common.add_argument("--xi", type=float, action="append",
                        help="frequency component for dump-symbol (repeat n times)")
    common.add_argument("--save-fields", dest="save_fields", type=str,
                        help="directory for field snapshots (evolve)")

    parser = argparse.ArgumentParser(
        prog="rieszfeller",
        description="Riesz-Feller operator calculus: experiments and verification",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    sub.add_parser("verify", parents=[common], help="run the full invariant suite")
    sub.add_parser("bandwidth", parents=[common], help="spectral-radius estimation sequence")
    sub.add_parser("bernstein", parents=[common], help="Bernstein ratio sequences")
    sub.add_parser("exp-type", parents=[common], help="exponential-type growth profile")
    sub.add_parser("radial-pw", parents=[common], help="weighted radial growth bound")
    sub.add_parser("lks", parents=[common], help="Landau-Kolmogorov-Stein trials")
    sub.add_parser("evolve", parents=[common], help="Cauchy evolution over an x0 schedule")
    sub.add_parser("kernel-compare", parents=[common], help="FFT kernel vs closed forms at alpha=1")
    p_dump = sub.add_parser("dump-symbol", parents=[common], help="print a Fourier symbol")
    p_dump.add_argument("--kind", choices=sorted(SYMBOL_KINDS), help="symbol name")
    return parser


def parse_config(args: argparse.Namespace) -> dict:
    """Merge defaults, config file, and explicit flags; validate ranges."""
    cfg = dict(DEFAULTS)
    cfg["subcommand"] = args.subcommand
    if getattr(args, "config", None):
        with open(args.config) as fh:
            file_cfg = json.load(fh)
        unknown = sorted(set(file_cfg) - set(DEFAULTS))
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(unknown)}")
        cfg.update(file_cfg)
    for key in DEFAULTS:
        flag = getattr(args, key, None)
        if flag is not None:
            cfg[key] = flag

    if cfg["grid"] is None:
        cfg["grid"] = DEFAULT_GRID_BY_N.get(cfg["n"], 16)
    if cfg["x0"] is None:
        cfg["x0"] = [0.5]
    if cfg["out"] is None:
        cfg["out"] = f"{args.subcommand.replace('-', '_')}_report"
    cfg["x0"] = [float(v) for v in cfg["x0"]]

    if not 0.0 < cfg["alpha"] <= 1.0:
        raise ValueError(f"alpha must satisfy 0 < alpha <= 1, got {cfg['alpha']}")
    if not cfg["p"] > 1.0:
        raise ValueError(f"p must exceed 1, got {cfg['p']}")
    if cfg["kmax"] < 1:
        raise ValueError(f"kmax must be at least 1, got {cfg['kmax']}")
    grid = GridSpec.cubic(cfg["n"], cfg["grid"], cfg["spacing"])  # validates sizes/spacing
    if cfg["subcommand"] != "dump-symbol" and cfg["R"] > grid.nyquist_radius:
        raise ValueError(
            f"R = {cfg['R']} exceeds the Nyquist radius {grid.nyquist_radius:.6g} "
            f"of the {cfg['grid']}^{cfg['n']} grid with spacing {cfg['spacing']}"
        )
    if cfg["subcommand"] in _SCHEDULE_COMMANDS and any(v < 0 for v in cfg["x0"]):
        params = FellerParams(cfg["alpha"], cfg["theta"])
        if not params.cauchy_admissible:
            raise ValueError(
                f"negative x0 schedule requires |1 - theta| < alpha/2; "
                f"got theta = {cfg['theta']}, alpha = {cfg['alpha']}"
            )
    return cfg


def _setup(cfg: dict):
    grid = GridSpec.cubic(cfg["n"], cfg["grid"], cfg["spacing"])
    algebra = CliffordAlgebra(cfg["n"])
    params = FellerParams(cfg["alpha"], cfg["theta"])
    return grid, algebra, params


def _make_field(cfg: dict, grid: GridSpec, algebra: CliffordAlgebra):
    spec = BandlimitSpec(R=cfg["R"], seed=cfg["seed"], mode=cfg["mode"], eps=cfg["eps"])
    return make_bandlimited(grid, algebra, spec)


def _config_echo(cfg: dict) -> dict:
    return {k: v for k, v in cfg.items() if v is not None and k != "subcommand"}


# -- subcommand handlers ---------------------------------------------------------


def run_verify(cfg: dict) -> ExperimentReport:
    rows = verify_suite(cfg["n"], cfg["grid"], cfg["spacing"], cfg["seed"])
    passed = all(r[3] for r in rows)
    summary = {
        "checks": len(rows),
        "passed_checks": sum(1 for r in rows if r[3]),
        "seed": cfg["seed"],
        "grid": [cfg["grid"]] * cfg["n"],
    }
    return ExperimentReport("verify", _config_echo(cfg), ["check", "value", "tolerance", "pass"],
                            rows, summary, passed)


def run_bernstein(cfg: dict) -> ExperimentReport:
    grid, algebra, params = _setup(cfg)
    f = _make_field(cfg, grid, algebra)
    plus_seq, minus_seq = bernstein_ratios(f, params, cfg["p"], cfg["kmax"])
    rows = []
    ok = True
    for seq, sign in ((plus_seq, "+"), (minus_seq, "-")):
        bound = 1.0 + 1e-10 if cfg["p"] == 2.0 else seq.fitted_constant
        for k, val in seq.entries:
            row_ok = val <= bound * (1 + 1e-12)
            ok &= row_ok
            rows.append((sign, k, val, bound, row_ok))
    summary = {
        "fitted_constant_plus": plus_seq.fitted_constant,
        "fitted_constant_minus": minus_seq.fitted_constant,
        "oracle_radius": plus_seq.oracle_radius,
        "radius_used": plus_seq.radius_used,
        "seed": cfg["seed"],
        "grid": list(grid.sizes),
    }
    return ExperimentReport("bernstein", _config_echo(cfg), ["sign", "k", "value", "bound", "pass"],
                            rows, summary, ok)


def run_bandwidth(cfg: dict) -> ExperimentReport:
    grid, algebra, params = _setup(cfg)
    f = _make_field(cfg, grid, algebra)
    bw = bandwidth_estimate(f, params, cfg["p"], cfg["kmax"])
    dxi = max(grid.freq_steps)
    tol = dxi if cfg["p"] == 2.0 else 3.0 * dxi
    rows = []
    rows_ok = True
    for k, a_k in bw.entries:
        if cfg["p"] == 2.0:
            row_ok = a_k <= bw.oracle_radius * (1 + 1e-10)
            rows_ok &= row_ok
            rows.append((k, a_k, bw.oracle_radius, row_ok))
        else:
            rows.append((k, a_k, None, True))
    estimate_ok = abs(bw.limit_estimate - bw.oracle_radius) <= tol
    summary = {
        "estimate": bw.limit_estimate,
        "oracle_radius": bw.oracle_radius,
        "delta_xi": dxi,
        "tolerance": tol,
        "estimate_within_tolerance": bool(estimate_ok),
        "seed": cfg["seed"],
        "grid": list(grid.sizes),
    }
    return ExperimentReport("bandwidth", _config_echo(cfg), ["k", "value", "bound", "pass"],
                            rows, summary, bool(estimate_ok and rows_ok))


def run_exp_type(cfg: dict) -> ExperimentReport:
    grid, algebra, params = _setup(cfg)
    f = _make_field(cfg, grid, algebra)
    profile = exp_type_profile(f, params, cfg["p"], cfg["x0"])
    pointwise = pointwise_exp_type(f, params, cfg["x0"], radius=profile.radius)
    bound = profile.fitted_constant * profile.boundary_norm
    rows = []
    ok = True
    for x0, val in profile.rows:
        row_ok = val <= bound * (1 + 1e-8)
        ok &= row_ok
        rows.append((x0, val, bound, row_ok))
    ok &= not pointwise.divergence_suspected
    summary = {
        "fitted_constant": profile.fitted_constant,
        "oracle_radius": profile.radius,
        "boundary_norm": profile.boundary_norm,
        "pointwise_sup": pointwise.value,
        "divergence_suspected": pointwise.divergence_suspected,
        "seed": cfg["seed"],
        "grid": list(grid.sizes),
    }
    return ExperimentReport("exp-type", _config_echo(cfg), ["x0", "value", "bound", "pass"],
                            rows, summary, ok)


def run_radial_pw(cfg: dict) -> ExperimentReport:
    grid, algebra, params = _setup(cfg)
    bump = make_urysohn_bump(grid, algebra, cfg["R"], cfg["eps"])
    target = (cfg["R"] + cfg["eps"]) ** params.alpha
    rows = []
    summary = {"target_rate": target, "grid": list(grid.sizes), "seed": cfg["seed"]}
    ok = True
    for m in (0, 1):
        rep = radial_pw_bound(bump, params.alpha, m, cfg["kmax"])
        roots = dict(rep.growth_roots)
        for k, s_k in rep.entries:
            rows.append((m, k, s_k, roots.get(k), target, None))
        final_root = rep.growth_roots[-1][1]
        within = abs(final_root / target - 1.0) <= 0.02
        ok &= within
        summary[f"m{m}_root_at_kmax"] = final_root
        summary[f"m{m}_within_2pct"] = bool(within)
        summary[f"m{m}_fitted_constant"] = rep.fitted_constant
        summary[f"m{m}_oracle_radius"] = rep.oracle_radius
        summary[f"m{m}_side_condition_from_k"] = rep.side_condition_from_k
    return ExperimentReport("radial-pw", _config_echo(cfg),
                            ["m", "k", "value", "growth_root", "target_rate", "pass"],
                            rows, summary, ok)


def run_lks(cfg: dict) -> ExperimentReport:
    grid, algebra, params = _setup(cfg)
    rows = []
    ok = True
    for trial in range(cfg["trials"]):
        spec = BandlimitSpec(R=cfg["R"], seed=cfg["seed"] + trial, mode="random-ball")
        f = make_bandlimited(grid, algebra, spec)
        for k, ell in ((1, 2), (1, 3), (2, 3)):
            res = lks_check(f, params, cfg["p"], k, ell)
            ok &= res.passed
            rows.append((trial, k, ell, res.lhs, res.rhs, res.passed))
    summary = {
        "trials": cfg["trials"],
        "favard": {f"K{j}": favard_constant(j).value for j in range(4)},
        "seed": cfg["seed"],
        "grid": list(grid.sizes),
    }
    return ExperimentReport("lks", _config_echo(cfg), ["trial", "k", "l", "lhs", "rhs", "pass"],
                            rows, summary, ok)


def run_evolve(cfg: dict) -> ExperimentReport:
    grid, algebra, params = _setup(cfg)
    f = _make_field(cfg, grid, algebra)
    if any(v < 0 for v in cfg["x0"]) and not params.cauchy_admissible:
        raise ValueError(
            f"negative x0 schedule requires |1 - theta| < alpha/2; "
            f"got theta = {cfg['theta']}, alpha = {cfg['alpha']}"
        )
    rows = evolve_schedule(f, params, cfg["x0"], p=cfg["p"])
    summary = {"seed": cfg["seed"], "grid": list(grid.sizes), "boundary_norm": lp_norm(f, cfg["p"])}
    ok = True
    if cfg["save_fields"]:
        os.makedirs(cfg["save_fields"], exist_ok=True)
        for x0 in cfg["x0"]:
            snap = solve_cauchy(f, x0, params)
            save_field(snap.field, os.path.join(cfg["save_fields"], f"u_x0_{x0:+.6g}.rfb"))
    if params.alpha == 1.0:
        # at alpha = 1 the evolved kernel has a closed form; report the match
        t = max((abs(v) for v in cfg["x0"] if v != 0), default=0.5)
        rel = _kernel_relerr(grid, algebra, t, which="cauchy")
        summary["kernel_rel_err_alpha1"] = rel
        summary["kernel_t"] = t
        ok = rel <= 1e-2
    return ExperimentReport("evolve", _config_echo(cfg),
                            ["x0", "norm", "residual", "wall_time_ms"], rows, summary, ok)


def _central_window(grid: GridSpec):
    return tuple(slice(N // 4, 3 * N // 4) for N in grid.sizes)


def _kernel_relerr(grid: GridSpec, algebra: CliffordAlgebra, t: float, which: str) -> float:
    """Relative L-inf error on the central half-window, FFT kernel vs closed form."""
    window = _central_window(grid)
    if which == "poisson":
        approx = kernel_K(grid, algebra, t, 1.0)
        exact = poisson_kernel_closed_field(grid, algebra, t)
    else:
        approx = cauchy_kernel_pm(grid, algebra, t, 1.0, +1)
        exact = cauchy_kernel_closed_field(grid, algebra, t)
    diff = (approx - exact).norm0()[window]
    ref = exact.norm0()[window]
    return float(diff.max() / ref.max())


def run_kernel_compare(cfg: dict) -> ExperimentReport:
    grid, algebra, _ = _setup(cfg)
    rows = []
    ok = True
    for t in cfg["x0"]:
        if t <= 0:
            raise ValueError(f"kernel comparison needs t > 0, got {t}")
        for which in ("poisson", "cauchy"):
            rel = _kernel_relerr(grid, algebra, t, which)
            domain_ok = min(N * h for N, h in zip(grid.sizes, grid.spacing)) >= 40 * t
            row_ok = rel <= 1e-2
            ok &= row_ok
            rows.append((cfg["n"], t, which, rel, 1e-2, domain_ok, row_ok))
    summary = {"grid": list(grid.sizes), "spacing": list(grid.spacing)}
    return ExperimentReport("kernel-compare", _config_echo(cfg),
                            ["n", "t", "kernel", "rel_err", "tolerance", "domain_ok", "pass"],
                            rows, summary, ok)


def run_dump_symbol(cfg: dict) -> ExperimentReport:
    if not cfg.get("kind"):
        raise ValueError(f"dump-symbol needs --kind (one of {sorted(SYMBOL_KINDS)})")
    grid, algebra, _ = _setup(cfg)
    kind = cfg["kind"]
    params = {
        "alpha": cfg["alpha"],
        "theta": cfg["theta"],
        "axis": cfg["axis"],
        "k": cfg["k"],
        "z": complex(cfg["x0"][0]),
    }
    blade_cols = []
    for idx in range(algebra.dim):
        gens = "".join(str(j + 1) for j in range(algebra.n) if idx >> j & 1) or "0"
        blade_cols += [f"e{gens}_re", f"e{gens}_im"]
    rows = []
    if cfg["xi"] is not None:
        xi = np.asarray(cfg["xi"], dtype=float)
        mv = eval_symbol(kind, xi, algebra,
                         **{k: v for k, v in params.items() if k in SYMBOL_KINDS[kind]})
        row = list(map(float, xi))
        for c in mv.coeffs:
            row += [c.real, c.imag]
        rows.append(tuple(row))
        columns = [f"xi{a + 1}" for a in range(algebra.n)] + blade_cols
    else:
        wanted = {k: v for k, v in params.items() if k in SYMBOL_KINDS[kind]}
        sym = build_symbol(kind, grid, algebra.n, **wanted)
        mesh = grid.xi_mesh()
        for idx in np.ndindex(*grid.shape):
            row = [float(m[idx]) for m in mesh]
            for c in sym[idx]:
                row += [float(c.real), float(c.imag)]
            rows.append(tuple(row))
        columns = [f"xi{a + 1}" for a in range(algebra.n)] + blade_cols
    summary = {"kind": kind, "grid": list(grid.sizes)}
    return ExperimentReport("dump-symbol", _config_echo(cfg), columns, rows, summary, True)


_HANDLERS = {
    "verify": run_verify,
    "bernstein": run_bernstein,
    "bandwidth": run_bandwidth,
    "exp-type": run_exp_type,
    "radial-pw": run_radial_pw,
    "lks": run_lks,
    "evolve": run_evolve,
    "kernel-compare": run_kernel_compare,
    "dump-symbol": run_dump_symbol,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = parse_config(args)
    except (ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3

    start = time.perf_counter()
    try:
        report = _HANDLERS[args.subcommand](cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    if args.subcommand != "verify":
        # verify reports stay byte-identical across runs; timing lives elsewhere
        report.wall_time_s = time.perf_counter() - start

    try:
        written = report.write(cfg["out"], cfg["format"])
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3

    if args.subcommand == "verify":
        for name, value, tol, ok in report.rows:
            print(f"[{'PASS' if ok else 'FAIL'}] {name}: value={value:.3e} tol={tol:.3e}")
    for path in written:
        print(f"wrote {path}")
    print(f"{args.subcommand}: {'PASS' if report.passed else 'FAIL'}")
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
