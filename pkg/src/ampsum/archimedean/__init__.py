"""Archimedean analysis: test functions, Mellin transforms, Bessel functions, oscillatory integrals."""

from .bessel import (
    BesselValue,
    RegimeCrossCheck,
    bessel_J,
    bessel_J_array,
    bessel_J_info,
    bessel_Y0,
    bigarg_leading,
    boundary_points,
    hankel1,
    regime_crosscheck,
)
from .contour import ContourSpec, GammaRatioReport, MellinBarnesReport, gamma_ratio_decay, mellin_barnes_check
from .hintegral import (
    DBoundReport,
    DFactorReport,
    HGrid,
    LimitReport,
    PairIntegralReport,
    bessel_K,
    bessel_pair_integral,
    bracket,
    d_factor,
    d_factor_bound_check,
    geometry_AB,
    h_grid,
    h_integral,
    h_integral_literal,
    h_integral_quad,
    w0_limit_check,
)
from .poisson import (
    PoissonReport,
    PoissonWeight,
    character_weight,
    constant_weight,
    fourier_transform,
    kloosterman_weight,
    poisson_twisted_check,
    quadratic_root_weight,
    table_weight,
)
from .spectral import (
    DecayAudit,
    OscValue,
    SpectralTag,
    B_kernel,
    kuznetsov_h,
    m_decay_audit,
    n_decay_audit,
    oscillatory_I,
)
from .testfunc import (
    Bump,
    DyadicBlock,
    MellinValue,
    PartitionSpec,
    QuadratureSpec,
    SmoothStep,
    TestFunction,
    integrate_fn,
    integrate_panels,
    mellin,
    partition_unity,
    smooth_cutoff,
)
