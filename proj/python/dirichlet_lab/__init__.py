"""Dirichlet polynomial norms: exact moments, energy counts, lower bounds and torus Monte Carlo."""

from ._core import (
    DirichletPolynomial,
    McEstimate,
    acz_constant,
    acz_main_term,
    clt_ratio_curve,
    convolution_coefficients,
    estimate_torus_norm,
    finite_time_norm,
    fourth_moment,
    gaussian_modulus_mean,
    helson_bound,
    interpolation_lower_bound,
    lacunary_limit,
    lacunary_ratio,
    lcm_sum_bound,
    montgomery_theta,
    multiplicative_energy,
    multiplicative_energy_bruteforce,
    moment_bound,
    second_moment,
    steinhaus_limit,
)

__all__ = [name for name in dir() if not name.startswith("_")]
