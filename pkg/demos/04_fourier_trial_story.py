"""The Fourier-character lower bound and its ingredients.

The trial family exp(i p x_1) exp(-(sigma/2)|x|^2) has exactly computable
H^n norms.  Sandwiching them (a Bernoulli-inequality lower estimate, a
Gaussian-integral upper estimate) gives a fully explicit (p, sigma)
bound; the choice p = sqrt((n+a)/lam), sigma = (mu/lam)/(n+a) with
lam = a - d/2, mu = d/2 collapses it to the closed form

    K >= R(a, d) v(n, a, d) 2^n / (n + a)^(a/2 + d/4),

which grows like 2^n and drives the large-n behaviour of the interval.
"""

import math

from sobprod import GaussianTrial, fourier_bound_at, fourier_lower, gaussian_norm_sq
from sobprod.fourier_lb import (
    fourier_lower_scan,
    fourier_lower_weak,
    optimal_trial_parameters,
    r_const,
    v_coeff,
)

n, a, d = 2.0, 2.0, 2
print(f"ingredients at (n, a, d) = ({n:g}, {a:g}, {d}):")
print(f"  R(a, d)    = {r_const(a, d):.8f}")
print(f"  v(n, a, d) = {v_coeff(n, a, d):.8f}   (tends to 1 as n grows)")
print(f"  bound      = {fourier_lower(n, a, d):.8f}")
print(f"  weak form  = {fourier_lower_weak(n, a, d):.8f}")

p, sigma = optimal_trial_parameters(n, a, d)
print(f"\nthe closed form is the parametric bound at p = {p:.6f}, sigma = {sigma:.6f}:")
print(f"  fourier_bound_at = {fourier_bound_at(p, sigma, n, a, d):.12f}")
print(f"  fourier_lower    = {fourier_lower(n, a, d):.12f}")

print("\nnorm sandwich at (p, sigma) = (3, 0.5), d = 2, n = 2:")
val = gaussian_norm_sq(GaussianTrial(3.0, 0.5, 2), 2.0)
lo = math.pi * 3.0**4 / 0.5
sn = 2.0 * 0.5 / 9.0
hi = lo * math.exp(4.0 * 0.5 / 9.0 / (1.0 - sn) + 2.0 / 9.0) / (1.0 - sn)
print(f"  {lo:.4f} <= {val:.4f} <= {hi:.4f}")

print("\nscanning the trial parameterization never beats the closed choice by much:")
for trip in ((1.0, 1.0, 1), (2.0, 2.0, 2), (20.0, 2.0, 2)):
    best, ps, ss = fourier_lower_scan(*trip)
    print(f"  (n,a,d)={trip}: scan/closed = {best / fourier_lower(*trip):.6f}")

print("\nv(n, a, d) -> 1:")
for nn in (2, 10, 100, 10000):
    print(f"  v({nn}, 2, 2) = {v_coeff(float(nn), 2.0, 2):.8f}")
