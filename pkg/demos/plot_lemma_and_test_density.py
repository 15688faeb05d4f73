"""
The tail-moment function and the uniform/Gaussian test density
==============================================================

g(u) = u^2 Q(u) - u psi(u) controls how much a Gaussian-tailed test density
pays for its tails. Its sub-additivity gap g(2a) - g(a-x) - g(a+x) is never
negative, which is what makes the edge input x = A the costly one.
"""

import numpy as np

from awgnbound.specfun import g, g_derivatives
from awgnbound.testdensity import (
    TestDensityParams, kl_conditional_closed, kl_conditional_numeric, lemma_gap, minmax_solve,
)
from awgnbound import bounds

# g is negative and vanishes fast
u = np.array([0.5, 1.0, 2.0, 4.0, 8.0])
print("g(u)   ", g(u))
print("g'(u)  ", g_derivatives(u, 1))

# the gap over a small grid, smallest at x = a where it is exactly zero
a = 1.5
x = np.linspace(0, a, 7)
print("gap    ", lemma_gap(a, x))

# closed form vs quadrature for the divergence from the test density
params = TestDensityParams(a, bounds.beta_star(a * a), bounds.sigma2_star(a * a))
for xi in (0.0, 0.75, 1.5):
    print(f"D at x={xi}: closed {kl_conditional_closed(xi, params):.12f}  "
          f"quad {kl_conditional_numeric(xi, params):.12f}")

# searching over (beta, sigma2) numerically lands on the closed-form choice
res = minmax_solve(a)
print(f"numeric min-max {res.value:.10f} at beta={res.beta:.6f}, sigma2={res.sigma2:.6f}")
print(f"closed form     {bounds.theorem_bound(a * a).theorem_nats:.10f} at "
      f"beta={params.beta:.6f}, sigma2={params.sigma2:.6f}")
