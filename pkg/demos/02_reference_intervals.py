"""The eight reference intervals for d = 1, 2, 3 and a = [d/2] + 1.

Each row aggregates:
  - the lattice upper bound (binomial sum with imbedding coefficients),
  - the ground bound S(a, d),
  - the Bessel-trial bound (high regime, maximized over the rescale factor),
  - the Fourier-character bound (n >= 1/2),
into one certified interval, printed with conservative two-decimal
rounding (lower down, upper up) so the printed brackets remain valid.
"""

import math

from sobprod import BoundQuery, best_bounds

ROWS = [(1, 1.0, n) for n in (0.0, 1.0)] + [
    (2, 2.0, n) for n in (0.0, 1.0, 2.0)
] + [(3, 2.0, n) for n in (0.0, 1.0, 2.0)]

print(f"{'d':>2} {'a':>4} {'n':>4}   {'interval':<22} {'method':<8} detail")
for d, a, n in ROWS:
    rep = best_bounds(BoundQuery(n, a, d))
    lo = math.floor(rep.lower * 100) / 100
    hi = math.ceil(rep.upper * 100) / 100
    if rep.sharp:
        desc = f"K = {rep.lower:.6f} (sharp)"
        print(f"{d:2d} {a:4.1f} {n:4.1f}   {desc:<22} {'exact':<8}")
        continue
    bracket = f"{lo:.2f} < K < {hi:.2f}"
    extra = ""
    if rep.lower_bessel is not None:
        extra = f"lam* = {rep.metadata.get('bessel_lambda_star'):.4f}"
    print(
        f"{d:2d} {a:4.1f} {n:4.1f}   {bracket:<22} {rep.method_of_best_lower:<8} "
        f"[{rep.lower:.6f}, {rep.upper:.6f}] {extra}"
    )
