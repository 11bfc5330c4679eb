"""Riesz-Feller Dirac operator calculus over Clifford algebras on periodic grids.

Layers:

- `algebra`: the complexified Clifford algebra Cl(0,n) and its Banach norm
- `grid`: periodic lattices, the scaled DFT pair, multipliers, L^p norms
- `operators`: Dirac / Riesz-Hilbert / Riesz-Feller symbols, Hardy projections
- `kernels`: stable kernels, Cauchy kernels, semigroups, the Cauchy solver
- `radial`: Bessel quadrature for radial transforms and the Bessel operator
- `lab`: band-limited fields, Bernstein ratios, bandwidth estimation,
  exponential-type and Landau-Kolmogorov-Stein checks
- `cli`: the `rieszfeller` experiment runner
"""

__version__ = "0.1.0"

from .algebra import (
    CliffordAlgebra,
    Multivector,
    blade_product,
    mv_dagger,
    mv_inner,
    mv_multiply,
    mv_norm0,
)
from .grid import (
    CliffordField,
    GridSpec,
    SpectralField,
    apply_multiplier,
    dft_forward,
    dft_inverse,
    left_multiply,
    load_field,
    lp_norm,
    pairing0,
    save_field,
)
from .kernels import (
    CauchySolution,
    ComplexEvolutionTime,
    cauchy_kernel_closed,
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
    exp_type_profile,
    favard_constant,
    lks_check,
    make_bandlimited,
    make_urysohn_bump,
    pairing_bound,
    pointwise_exp_type,
    radial_pw_bound,
    support_radius,
)
from .operators import (
    FellerParams,
    apply_dirac,
    apply_riesz_feller,
    apply_riesz_hilbert,
    eval_symbol,
    hardy_project,
    riesz_feller_power,
    riesz_kernel_eval,
)
from .radial import bessel_operator_apply, make_bessel_radial, radial_fourier

__all__ = [
    "__version__",
    "CliffordAlgebra",
    "Multivector",
    "blade_product",
    "mv_multiply",
    "mv_dagger",
    "mv_norm0",
    "mv_inner",
    "GridSpec",
    "CliffordField",
    "SpectralField",
    "dft_forward",
    "dft_inverse",
    "apply_multiplier",
    "lp_norm",
    "left_multiply",
    "pairing0",
    "save_field",
    "load_field",
    "FellerParams",
    "eval_symbol",
    "apply_dirac",
    "apply_riesz_hilbert",
    "apply_riesz_feller",
    "hardy_project",
    "riesz_feller_power",
    "riesz_kernel_eval",
    "ComplexEvolutionTime",
    "CauchySolution",
    "kernel_K",
    "cauchy_kernel_closed",
    "cauchy_kernel_pm",
    "semigroup_apply",
    "solve_cauchy",
    "pde_residual",
    "BandlimitSpec",
    "make_bandlimited",
    "make_urysohn_bump",
    "make_bessel_radial",
    "support_radius",
    "bernstein_ratios",
    "bandwidth_estimate",
    "exp_type_profile",
    "pointwise_exp_type",
    "radial_pw_bound",
    "radial_fourier",
    "bessel_operator_apply",
    "favard_constant",
    "lks_check",
    "pairing_bound",
]
