"""Large-n behaviour: log2 K(n, a, d) / n tends to 1.

The upper bound behaves like 2^n and the Fourier lower bound like
2^n / (n + a)^(a/2 + d/4), so (1/n) log2 of both tends to 1 and the
normalized bracket between them shrinks like log(n)/n.
"""

from sobprod import BoundQuery, best_bounds

for d, a in ((1, 1.0), (2, 2.0), (3, 2.0)):
    print(f"\nd = {d}, a = {a:g}")
    print(f"{'n':>4} {'log2(lower)/n':>14} {'log2(upper)/n':>14} {'bracket/n':>11} {'best lower':>11}")
    prev = None
    for n in (5.0, 10.0, 20.0, 40.0, 60.0):
        rep = best_bounds(BoundQuery(n, a, d))
        width = rep.log2_upper_over_n - rep.log2_lower_over_n
        print(
            f"{n:4.0f} {rep.log2_lower_over_n:14.4f} {rep.log2_upper_over_n:14.4f} "
            f"{width:11.4f} {rep.method_of_best_lower:>11}"
        )
        if prev is not None:
            assert width < prev, "normalized bracket should shrink with n"
        prev = width
