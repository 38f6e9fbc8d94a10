"""Self-contained real special functions and Sobolev imbedding constants.

Everything here is pure double-precision scalar math with no external
dependencies beyond numpy (used only to block-sum hypergeometric series).
Libraries such as scipy/mpmath appear solely in the test suite as
independent references.

Contents:
  ln_gamma            log Gamma via a Lanczos approximation (g=7, 9 terms)
  beta                Beta function in log space
  e_power             E(s) = s^s with E(0) = 1
  erf                 error function (series + Lentz continued fraction)
  hyp2f1              Gauss 2F1 for z < 1, negative z through the Pfaff map
  bessel_k            Macdonald function K_nu (Temme series + continued
                      fraction, upward recurrence in the order)
  imbedding_constant  sharp-form H^n -> L^r imbedding constants
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, NonConvergenceError

__all__ = [
    "ln_gamma",
    "beta",
    "e_power",
    "erf",
    "hyp2f1",
    "bessel_k",
    "imbedding_constant",
]


# ---------------------------------------------------------------------------
# log Gamma
# ---------------------------------------------------------------------------

# Lanczos coefficients, g = 7, 9 terms. Relative error of exp(ln_gamma)
# is a few ulp over the whole positive axis.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_LN_SQRT_2PI = 0.9189385332046727417803297364056176


def ln_gamma(x: float) -> float:
    """log Gamma(x) for x > 0."""
    if not x > 0.0 or math.isnan(x):
        raise DomainError(f"ln_gamma requires x > 0, got {x}")
    if x < 0.5:
        # recurrence keeps the Lanczos sum on its accurate range
        return ln_gamma(x + 1.0) - math.log(x)
    acc = _LANCZOS[0]
    for i, c in enumerate(_LANCZOS[1:], start=1):
        acc += c / (x + i - 1.0)
    t = x + _LANCZOS_G - 0.5
    return _LN_SQRT_2PI + (x - 0.5) * math.log(t) - t + math.log(acc)


def beta(z: float, w: float) -> float:
    """Beta function B(z, w) = Gamma(z) Gamma(w) / Gamma(z + w), z, w > 0."""
    if not (z > 0.0 and w > 0.0):
        raise DomainError(f"beta requires z, w > 0, got ({z}, {w})")
    return math.exp(ln_gamma(z) + ln_gamma(w) - ln_gamma(z + w))


def e_power(s: float) -> float:
    """E(s) = s^s for s > 0, with the continuous endpoint value E(0) = 1."""
    if s < 0.0 or math.isnan(s):
        raise DomainError(f"e_power requires s >= 0, got {s}")
    if s == 0.0:
        return 1.0
    return math.exp(s * math.log(s))


# ---------------------------------------------------------------------------
# error function
# ---------------------------------------------------------------------------

_TWO_OVER_SQRT_PI = 1.1283791670955125738961589031215452


def erf(x: float) -> float:
    """Error function, absolute error below 1e-14.

    Power series for |x| <= 2.5, a backward-evaluated continued fraction
    for the complementary function beyond; erf(x) = 1 to machine
    precision for x >= 6.5.
    """
    if x < 0.0:
        return -erf(-x)
    if x == 0.0:
        return 0.0
    if x >= 6.5:
        return 1.0
    if x <= 2.5:
        # sum_k (-1)^k x^(2k+1) / (k! (2k+1))
        x2 = x * x
        term = x
        acc = x
        k = 0
        while True:
            k += 1
            term *= -x2 / k
            acc += term / (2 * k + 1)
            if abs(term) < 1e-18 * abs(acc) * (2 * k + 1):
                break
            if k > 400:  # unreachable on this range
                raise NonConvergenceError("erf series stalled")
        return _TWO_OVER_SQRT_PI * acc
    # erfc(x) = exp(-x^2)/sqrt(pi) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    # Backward evaluation with fixed depth; 200 levels is ample for x >= 2.5.
    t = 0.0
    for m in range(200, 0, -1):
        t = (m / 2.0) / (x + t)
    erfc = math.exp(-x * x) / math.sqrt(math.pi) / (x + t)
    return 1.0 - erfc


# ---------------------------------------------------------------------------
# Gauss hypergeometric
# ---------------------------------------------------------------------------

_HYP_BLOCK = 4096


def _pochhammer_terminates(x: float) -> int | None:
    """Return m >= 0 if (x)_k vanishes for all k > m (x a non-positive integer)."""
    if x > 0.0:
        return None
    r = round(x)
    if abs(x - r) <= 1e-12 * max(1.0, abs(x)):
        return int(-r)
    return None


def _hyp_series(
    a: float, b: float, c: float, w: float, rtol: float, max_terms: int
) -> tuple[float, float]:
    """Sum F(a, b, c; w) = sum_k (a)_k (b)_k / ((c)_k k!) w^k for 0 <= w <= 1.

    Returns (value, abs_error_bound).  The bound combines a truncation
    tail (geometric when the term ratio is below one, else the algebraic
    bound 4 |t_K| K / delta valid for delta = c - a - b > 0, since
    |t_k| ~ C k^(-1-delta)) with a roundoff term proportional to the sum
    of absolute terms, which is what detects catastrophic cancellation.
    """
    nterm = _pochhammer_terminates(a)
    nterm_b = _pochhammer_terminates(b)
    if nterm is None or (nterm_b is not None and nterm_b < nterm):
        nterm = nterm_b
    delta = c - a - b

    total = 1.0
    absum = 1.0
    term = 1.0
    k0 = 0
    tail = math.inf
    block_size = 64  # grows geometrically; short series stay cheap
    while k0 < max_terms:
        block = min(block_size, max_terms - k0)
        block_size = min(4 * block_size, _HYP_BLOCK)
        if nterm is not None:
            block = min(block, nterm - k0 + 1)
        k = np.arange(k0, k0 + block, dtype=float)
        ratios = (a + k) * (b + k) / ((c + k) * (1.0 + k)) * w
        terms = term * np.cumprod(ratios)
        total += float(terms.sum())
        absum += float(np.abs(terms).sum())
        term = float(terms[-1])
        k0 += block
        if not math.isfinite(term) or absum > 1e290:
            return total, math.inf
        if (nterm is not None and k0 > nterm) or term == 0.0:
            tail = 0.0
            break
        rho = abs(ratios[-1])
        if rho < 1.0:
            tail = abs(term) * rho / (1.0 - rho)
        elif delta > 0.0 and k0 > max(64, 4.0 * (abs(a) + abs(b))):
            tail = 4.0 * abs(term) * k0 / delta
        else:
            tail = math.inf
        if tail <= rtol * max(abs(total), 1e-300):
            break
    roundoff = 32.0 * 2.220446049250313e-16 * absum
    return total, tail + roundoff


def hyp2f1_with_error(
    a: float,
    b: float,
    c: float,
    z: float,
    rel_tol: float = 1e-12,
    max_terms: int = 500_000,
) -> tuple[float, float]:
    """F(a, b, c; z) for z < 1, returned as (value, abs_error_bound).

    For 0 <= z < 1 the defining series is summed directly.  For z < 0 the
    Pfaff transformation F(a,b,c;z) = (1-z)^(-b) F(c-a, b, c; z/(z-1))
    maps the argument into [0, 1); both Pfaff branches are candidates.
    A terminating branch is preferred, but a branch is only accepted when
    its error bound (which includes cancellation roundoff) meets rel_tol;
    otherwise the better of the two is returned with its honest bound.
    """
    if math.isnan(z) or z >= 1.0:
        raise DomainError(f"hyp2f1 requires z < 1, got z={z}")
    if _pochhammer_terminates(c) is not None:
        raise DomainError(f"hyp2f1: c must not be a non-positive integer, got c={c}")
    if z == 0.0:
        return 1.0, 0.0
    if 0.0 < z < 1.0:
        return _hyp_series(a, b, c, z, rel_tol, max_terms)
    w = z / (z - 1.0)
    candidates = [((c - a, b), -b), ((c - b, a), -a)]
    # a terminating transformed series is exact arithmetic; try it first
    if _pochhammer_terminates(c - b) is not None and _pochhammer_terminates(c - a) is None:
        candidates.reverse()
    best: tuple[float, float] | None = None
    for (alpha, kept), neg_exp in candidates:
        val, err = _hyp_series(alpha, kept, c, w, rel_tol, max_terms)
        # assemble prefactor in log space; (1-z)^neg_exp alone can under/overflow
        ln_pref = neg_exp * math.log1p(-z)
        if val != 0.0 and math.isfinite(val):
            val = math.copysign(math.exp(ln_pref + math.log(abs(val))), val)
        else:
            val = 0.0
        if err != 0.0 and math.isfinite(err):
            err = math.exp(ln_pref + math.log(err))
        if err <= rel_tol * max(abs(val), 1e-300):
            return val, err
        if best is None or err < best[1]:
            best = (val, err)
    assert best is not None
    return best


def hyp2f1(
    a: float,
    b: float,
    c: float,
    z: float,
    rel_tol: float = 1e-12,
    max_terms: int = 500_000,
) -> float:
    """Gauss hypergeometric F(a, b, c; z) for z < 1.

    Negative arguments are evaluated through the Pfaff transformation so
    the series converges; raises NonConvergenceError when the requested
    relative tolerance cannot be certified within max_terms.
    """
    val, err = hyp2f1_with_error(a, b, c, z, rel_tol, max_terms)
    if err > rel_tol * max(abs(val), 1e-300):
        raise NonConvergenceError(
            f"hyp2f1 not converged to rel_tol={rel_tol} for "
            f"(a,b,c,z)=({a},{b},{c},{z}); error bound {err:.3g} on value {val:.6g}"
        )
    return val


# ---------------------------------------------------------------------------
# Macdonald function K_nu
# ---------------------------------------------------------------------------

_EULER_GAMMA = 0.5772156649015328606065120900824024


def _temme_gam12(mu: float) -> tuple[float, float]:
    """gam1 = (1/Gamma(1-mu) - 1/Gamma(1+mu))/(2 mu) and
    gam2 = (1/Gamma(1-mu) + 1/Gamma(1+mu))/2 for |mu| <= 1/2."""
    if abs(mu) > 0.02:
        rp = math.exp(-ln_gamma(1.0 + mu))
        rm = math.exp(-ln_gamma(1.0 - mu))
        return (rm - rp) / (2.0 * mu), (rm + rp) / 2.0
    # small-mu Taylor of gam1 (even series; coefficients from 1/Gamma(1+x))
    m2 = mu * mu
    gam1 = -_EULER_GAMMA + m2 * (
        0.0420026350340952355
        + m2 * (0.0421977345555443367 - m2 * 0.0072189432466630995)
    )
    rp = math.exp(-ln_gamma(1.0 + mu))
    rm = math.exp(-ln_gamma(1.0 - mu)) if mu != 0.0 else 1.0
    return gam1, (rm + rp) / 2.0


def _bessel_k_pair_small(mu: float, x: float) -> tuple[float, float]:
    """Temme's series: (K_mu(x), K_{mu+1}(x)) for |mu| <= 1/2, 0 < x <= 2."""
    x2 = 0.5 * x
    pimu = math.pi * mu
    fact = 1.0 if abs(pimu) < 1e-15 else pimu / math.sin(pimu)
    d = -math.log(x2)
    e = mu * d
    fact2 = 1.0 if abs(e) < 1e-15 else math.sinh(e) / e
    gam1, gam2 = _temme_gam12(mu)
    ff = fact * (gam1 * math.cosh(e) + gam2 * fact2 * d)
    total = ff
    ee = math.exp(e)
    p = 0.5 * ee * math.exp(ln_gamma(1.0 + mu))
    q = 0.5 / ee * math.exp(ln_gamma(1.0 - mu))
    cfac = 1.0
    x2sq = x2 * x2
    total1 = p
    mu2 = mu * mu
    for i in range(1, 1000):
        ff = (i * ff + p + q) / (i * i - mu2)
        cfac *= x2sq / i
        p /= i - mu
        q /= i + mu
        dl = cfac * ff
        total += dl
        dl1 = cfac * (p - i * ff)
        total1 += dl1
        if abs(dl) < abs(total) * 1e-17:
            return total, total1 * 2.0 / x
    raise NonConvergenceError(f"bessel_k Temme series stalled at x={x}")


def _bessel_k_pair_cf(mu: float, x: float) -> tuple[float, float]:
    """Thompson-Barnett CF2: (K_mu(x), K_{mu+1}(x)) for |mu| <= 1/2, x > 2."""
    mu2 = mu * mu
    b = 2.0 * (1.0 + x)
    d = 1.0 / b
    h = delh = d
    q1, q2 = 0.0, 1.0
    a1 = 0.25 - mu2
    q = cc = a1
    a = -a1
    s = 1.0 + q * delh
    for i in range(2, 10000):
        a -= 2 * (i - 1)
        cc = -a * cc / i
        qnew = (q1 - b * q2) / a
        q1, q2 = q2, qnew
        q += cc * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels / s) < 1e-16:
            break
    else:
        raise NonConvergenceError(f"bessel_k continued fraction stalled at x={x}")
    h = a1 * h
    kmu = math.sqrt(math.pi / (2.0 * x)) * math.exp(-x) / s
    k1 = kmu * (mu + x + 0.5 - h) / x
    return kmu, k1


def bessel_k(nu: float, x: float) -> float:
    """Modified Bessel function of the third kind (Macdonald) K_nu(x).

    nu >= 0, x > 0.  Relative error is well below 1e-10 for nu in [0, 5]
    and x in (0, 50].  Values exceeding the double range raise
    OverflowError (the x -> 0+ singularity for nu > 0).
    """
    if math.isnan(nu) or nu < 0.0:
        raise DomainError(f"bessel_k requires nu >= 0, got {nu}")
    if not x > 0.0 or math.isnan(x):
        raise DomainError(f"bessel_k requires x > 0, got {x}")
    nl = int(nu + 0.5)
    mu = nu - nl  # in [-1/2, 1/2]
    if x <= 2.0:
        kmu, k1 = _bessel_k_pair_small(mu, x)
    else:
        kmu, k1 = _bessel_k_pair_cf(mu, x)
    for i in range(nl):
        kmu, k1 = k1, (mu + i + 1.0) * 2.0 / x * k1 + kmu
    if math.isinf(kmu) or math.isnan(kmu):
        raise OverflowError(f"bessel_k({nu}, {x}) exceeds double range")
    return kmu


# ---------------------------------------------------------------------------
# Imbedding constants S_{r, n, d}
# ---------------------------------------------------------------------------


def _imbedding_admissible(r: float, n: float, d: int) -> bool:
    if n == 0.0:
        return r == 2.0
    if n < d / 2.0:
        return 2.0 <= r < d / (d / 2.0 - n)
    if n == d / 2.0:
        return 2.0 <= r < math.inf
    return 2.0 <= r  # n > d/2 admits r = inf too


def imbedding_constant(r: float, n: float, d: int) -> float:
    """Sharp-form imbedding constant S_{r, n, d} of H^n into L^r.

    r may be any real in [2, inf] (math.inf accepted).  Outside the
    admissible (n, r) pairs a DomainError is raised.
    """
    if d < 1 or int(d) != d:
        raise DomainError(f"dimension must be a positive integer, got {d}")
    if n < 0.0 or math.isnan(n):
        raise DomainError(f"imbedding_constant requires n >= 0, got {n}")
    if r < 2.0 or math.isnan(r):
        raise DomainError(f"imbedding_constant requires r >= 2, got {r}")
    if r == 2.0:
        return 1.0
    if math.isinf(r):
        if n <= d / 2.0:
            raise DomainError(f"r = inf requires n > d/2 (n={n}, d={d})")
        return math.exp(
            -(d / 4.0) * math.log(4.0 * math.pi)
            + 0.5 * (ln_gamma(n - d / 2.0) - ln_gamma(n))
        )
    if not _imbedding_admissible(r, n, d):
        raise DomainError(f"(n={n}, r={r}, d={d}) outside the admissible imbedding range")
    g = n / (1.0 - 2.0 / r)
    val = (
        -(d / 4.0 - d / (2.0 * r)) * math.log(4.0 * math.pi)
        + (0.5 - 1.0 / r) * (ln_gamma(g - d / 2.0) - ln_gamma(g))
    )
    e_ratio = (d / 2.0) * (
        math.log(e_power(1.0 / r)) - math.log(e_power(1.0 - 1.0 / r))
    )
    return math.exp(val + e_ratio)
