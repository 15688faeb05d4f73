"""Capacity upper bounds for the amplitude-constrained scalar AWGN channel.

Modules
-------
specfun      normal density, Gaussian tail Q, tail-moment function g, binary entropy
bounds       Shannon, McKellips, Thangaraj and refined (optimised tail variance) bounds
testdensity  uniform/Gaussian-tail test densities, divergence in closed form and by quadrature
oracle       Blahut-Arimoto capacity on a discretised channel
verify       property suites shared by the CLI and the tests
cli          ``awgnbound bounds|sweep|verify|gap-report``
"""
from .bounds import (
    BoundPoint,
    Regime,
    beta_star,
    mckellips_bound,
    r_of_p,
    shannon_bound,
    sigma2_star,
    thangaraj_bound,
    theorem_bound,
    w_term,
)
from .oracle import CapacityEstimate, blahut_arimoto, build_grid, capacity_nats, eb_n0_db
from .specfun import binary_entropy, g, g_derivatives, pdf_std_normal, q_function
from .testdensity import (
    TestDensityParams,
    kl_conditional_closed,
    kl_conditional_numeric,
    lemma_gap,
    minmax_bound_numeric,
    q_density,
)

__version__ = "0.1.0"
