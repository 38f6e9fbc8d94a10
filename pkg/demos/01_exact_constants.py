"""Exact constants at n = 0 and the ground lower bound.

At n = 0 the product inequality is |fg|_0 <= K |f|_a |g|_0, and the
n-independent lower bound S(a, d) meets the general upper bound, so the
sharp constant is known in closed form:

    K(0, a, d) = S(a, d) = (4 pi)^(-d/4) sqrt(Gamma(a - d/2) / Gamma(a)).

For n > 0 the same S(a, d) still bounds K from below ("ground" bound),
which already pins K(n, a, d) into a narrow interval for small n.
"""

import math

from sobprod import BoundQuery, best_bounds, ground_lower, s_const, upper_bound

CASES = [(1.0, 1), (2.0, 2), (2.0, 3), (1.5, 2), (3.0, 3)]

print("sharp constants at n = 0")
print(f"{'a':>5} {'d':>3} {'K(0,a,d)':>12}")
for a, d in CASES:
    rep = best_bounds(BoundQuery(0.0, a, d))
    assert rep.sharp and rep.lower == rep.upper
    print(f"{a:5.2f} {d:3d} {rep.lower:12.8f}")

print("\nclosed forms for the three reference cases:")
print(f"  K(0,1,1) = 1/sqrt(2)      = {1.0 / math.sqrt(2.0):.10f}  "
      f"(computed {s_const(1.0, 1):.10f})")
print(f"  K(0,2,2) = 1/(2 sqrt(pi)) = {1.0 / (2.0 * math.sqrt(math.pi)):.10f}  "
      f"(computed {s_const(2.0, 2):.10f})")
print(f"  K(0,2,3) = 1/(2 sqrt(2pi))= {1.0 / (2.0 * math.sqrt(2.0 * math.pi)):.10f}  "
      f"(computed {s_const(2.0, 3):.10f})")

print("\nthe ground bound squeezes small n hard: at n = 1, a = 2, d = 2")
lo = ground_lower(2.0, 2)
hi = upper_bound(1.0, 2.0, 2)
print(f"  {lo:.6f} <= K(1,2,2) <= {hi:.6f}   (interval width {hi - lo:.6f})")
