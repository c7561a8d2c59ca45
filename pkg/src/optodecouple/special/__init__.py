from .accuracy import SeriesAccuracy, DEFAULT_ACCURACY, csum
from .bessel import bessel_i, bessel_i_scaled, log_bessel_i, bessel_order_cutoff
from .laguerre import laguerre, laguerre_all, hyp1f1_negint, displacement_element, laguerre_generating_sum
from .poisson import poisson_log_pmf, poisson_pmf, poisson_tail, poisson_cutoff
from .identities import identity_suite, IdentityReport, IdentityCheck, IdentityGrid

__all__ = [
    "SeriesAccuracy",
    "DEFAULT_ACCURACY",
    "csum",
    "bessel_i",
    "bessel_i_scaled",
    "log_bessel_i",
    "bessel_order_cutoff",
    "laguerre",
    "laguerre_all",
    "hyp1f1_negint",
    "displacement_element",
    "laguerre_generating_sum",
    "poisson_log_pmf",
    "poisson_pmf",
    "poisson_tail",
    "poisson_cutoff",
    "identity_suite",
    "IdentityReport",
    "IdentityCheck",
    "IdentityGrid",
]
