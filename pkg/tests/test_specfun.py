import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sobprod import specfun
from sobprod.errors import DomainError, NonConvergenceError
from sobprod.numerics import integrate_semiline

from conftest import assert_abs, assert_rel, rel_err


# ---------------------------------------------------------------------------
# ln_gamma / beta / e_power
# ---------------------------------------------------------------------------


class TestLnGamma:
    @pytest.mark.parametrize(
        "x,expected",
        [
            (0.5, math.log(math.sqrt(math.pi))),
            (1.0, 0.0),
            (5.0, math.log(24.0)),
        ],
    )
    def test_reference_points(self, x, expected):
        assert_abs(specfun.ln_gamma(x), expected, 1e-13)

    def test_gamma_accuracy_over_range(self):
        # rel error of exp(ln_gamma) stays at the 1e-13 level wherever
        # Gamma itself is representable; beyond that log Gamma exceeds 700
        # and a double return value is ulp-limited, so allow two ulp
        for x in [1e-3, 0.01, 0.1, 0.37, 1.5, 2.0, 10.0, 50.0, 100.0]:
            assert rel_err(math.exp(specfun.ln_gamma(x)), math.gamma(x)) < 1e-13
        for x in [150.0, 170.0, 250.0, 1000.0]:
            ref = math.lgamma(x)
            assert_abs(specfun.ln_gamma(x), ref, max(1e-13, 4.5e-16 * ref))

    def test_recurrence(self):
        # Gamma(x + 1) = x Gamma(x) across half-integers up to 20.5
        for k in range(21):
            x = 0.5 + k
            lhs = math.exp(specfun.ln_gamma(x + 1.0))
            rhs = x * math.exp(specfun.ln_gamma(x))
            assert_rel(lhs, rhs, 1e-12, f"recurrence at x={x}")

    def test_domain(self):
        with pytest.raises(DomainError):
            specfun.ln_gamma(0.0)
        with pytest.raises(DomainError):
            specfun.ln_gamma(-1.5)


class TestBeta:
    @pytest.mark.parametrize(
        "z,w,expected",
        [(1.0, 1.0, 1.0), (0.5, 0.5, math.pi), (2.0, 3.0, 1.0 / 12.0)],
    )
    def test_reference_points(self, z, w, expected):
        assert_rel(specfun.beta(z, w), expected, 1e-13)

    def test_domain(self):
        with pytest.raises(DomainError):
            specfun.beta(0.0, 1.0)
        with pytest.raises(DomainError):
            specfun.beta(1.0, -2.0)


class TestEPower:
    def test_endpoint(self):
        assert specfun.e_power(0.0) == 1.0

    def test_values(self):
        assert specfun.e_power(1.0) == 1.0
        assert_rel(specfun.e_power(0.5), 1.0 / math.sqrt(2.0), 1e-15)

    def test_domain(self):
        with pytest.raises(DomainError):
            specfun.e_power(-1e-9)


# ---------------------------------------------------------------------------
# erf
# ---------------------------------------------------------------------------


class TestErf:
    def test_zero_and_saturation(self):
        assert specfun.erf(0.0) == 0.0
        assert abs(specfun.erf(10.0) - 1.0) < 1e-15

    def test_against_stdlib(self):
        for i in range(1, 140):
            x = 0.05 * i
            assert_abs(specfun.erf(x), math.erf(x), 1e-14, f"erf({x})")

    @given(st.floats(min_value=1e-6, max_value=6.0))
    @settings(max_examples=60, deadline=None)
    def test_odd_symmetry(self, x):
        assert specfun.erf(-x) == -specfun.erf(x)


# ---------------------------------------------------------------------------
# hyp2f1
# ---------------------------------------------------------------------------


class TestHyp2f1:
    @pytest.mark.parametrize("a,b,c", [(0.3, 1.7, 2.1), (2.0, 2.0, 3.5), (5.0, 1.0, 1.2)])
    def test_empty_series(self, a, b, c):
        assert specfun.hyp2f1(a, b, c, 0.0) == 1.0

    def test_log_identity(self):
        # F(1, 1, 2; z) = -log(1 - z)/z
        assert_rel(specfun.hyp2f1(1.0, 1.0, 2.0, -1.0), math.log(2.0), 1e-12)

    def test_worked_closed_form_value(self):
        assert_rel(specfun.hyp2f1(3.0, 2.0, 2.5, -1.0), 0.19294341565786653, 1e-11)

    def test_pfaff_argument_symmetry(self):
        # same function via the two Pfaff branches (swapped parameter slots)
        for a, b, c in [(3.0, 2.0, 2.5), (1.3, 0.7, 2.2), (4.5, 2.0, 3.1)]:
            for z in [-0.1, -1.0, -7.5, -49.9]:
                assert_rel(
                    specfun.hyp2f1(a, b, c, z),
                    specfun.hyp2f1(b, a, c, z),
                    1e-9,
                    f"pfaff symmetry ({a},{b},{c};{z})",
                )

    def test_square_norm_parameter_family(self, mp):
        import mpmath

        for n, d in [(1, 1), (2, 2), (2, 3), (7.5, 2), (20, 3), (20, 2)]:
            a, b, c = 2 * n - d / 2, n, n + 0.5
            for s in (0.3, 1.0, 5.0, 30.0):
                ref = float(mpmath.hyp2f1(a, b, c, -s * s))
                got = specfun.hyp2f1(a, b, c, -s * s, rel_tol=1e-10)
                assert_rel(got, ref, 1e-10, f"2F1 family (n={n}, d={d}, s={s})")

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            specfun.hyp2f1(1.0, 1.0, 2.0, 1.0)
        with pytest.raises(DomainError):
            specfun.hyp2f1(1.0, 1.0, 2.0, 1.5)
        with pytest.raises(DomainError):
            specfun.hyp2f1(1.0, 1.0, -2.0, 0.5)

    def test_nonconvergence_is_flagged(self):
        # small parameter gap and a huge argument cannot be certified in few terms
        with pytest.raises(NonConvergenceError):
            specfun.hyp2f1(1.3, 1.0, 1.5, -1e12, rel_tol=1e-12, max_terms=2000)

    @given(
        st.floats(min_value=0.1, max_value=10.0),
        st.floats(min_value=0.1, max_value=10.0),
        st.floats(min_value=0.6, max_value=12.0),
        st.floats(min_value=-30.0, max_value=0.8),
    )
    @settings(max_examples=80, deadline=None)
    def test_against_scipy_random_parameters(self, a, b, c, z):
        scipy_special = pytest.importorskip("scipy.special")
        ref = float(scipy_special.hyp2f1(a, b, c, z))
        if not math.isfinite(ref) or abs(ref) < 1e-290:
            return
        got = specfun.hyp2f1(a, b, c, z, rel_tol=1e-11)
        assert_rel(got, ref, 2e-9, f"2F1({a},{b},{c};{z})")


# ---------------------------------------------------------------------------
# bessel_k
# ---------------------------------------------------------------------------


def _k_half(x: float) -> float:
    return math.sqrt(math.pi / (2.0 * x)) * math.exp(-x)


def _k_three_halves(x: float) -> float:
    return _k_half(x) * (1.0 + 1.0 / x)


class TestBesselK:
    def test_half_integer_closed_forms(self):
        for x in [0.05, 0.3, 1.0, 2.0, 2.5, 7.0, 20.0, 50.0]:
            assert_rel(specfun.bessel_k(0.5, x), _k_half(x), 1e-10, f"K_1/2({x})")
            assert_rel(specfun.bessel_k(1.5, x), _k_three_halves(x), 1e-10, f"K_3/2({x})")

    def test_k_half_at_one(self):
        assert_rel(specfun.bessel_k(0.5, 1.0), 0.46106850444789456, 1e-12)

    def test_k1_at_one_vs_cosh_integral(self):
        # independent oracle: K_1(x) = int_0^inf exp(-x cosh t) cosh t dt
        def integrand(t):
            if t > 300.0:
                return 0.0
            c = math.cosh(t)
            return math.exp(-c) * c if c < 700.0 else 0.0

        res = integrate_semiline(integrand, rel_tol=1e-12)
        assert res.converged
        assert_rel(specfun.bessel_k(1.0, 1.0), res.value, 1e-11)
        assert_rel(specfun.bessel_k(1.0, 1.0), 0.60190723019723457, 1e-12)

    def test_against_scipy_grid(self):
        scipy_special = pytest.importorskip("scipy.special")
        for nu in [0.0, 0.2, 0.5, 1.0, 1.7, 2.5, 3.0, 4.4, 5.0]:
            for x in [1e-3, 0.1, 0.9, 2.0, 2.1, 5.0, 15.0, 50.0]:
                assert_rel(
                    specfun.bessel_k(nu, x),
                    float(scipy_special.kv(nu, x)),
                    1e-10,
                    f"K_{nu}({x})",
                )

    def test_overflow_signal(self):
        with pytest.raises(OverflowError):
            specfun.bessel_k(2.0, 1e-200)

    @given(
        st.floats(min_value=0.0, max_value=5.0),
        st.floats(min_value=0.01, max_value=50.0),
    )
    @settings(max_examples=80, deadline=None)
    def test_against_scipy_random_orders(self, nu, x):
        scipy_special = pytest.importorskip("scipy.special")
        assert_rel(
            specfun.bessel_k(nu, x), float(scipy_special.kv(nu, x)), 1e-10,
            f"K_{nu}({x})",
        )

    def test_domain(self):
        with pytest.raises(DomainError):
            specfun.bessel_k(1.0, 0.0)
        with pytest.raises(DomainError):
            specfun.bessel_k(1.0, -1.0)
        with pytest.raises(DomainError):
            specfun.bessel_k(-0.5, 1.0)


# ---------------------------------------------------------------------------
# imbedding constants
# ---------------------------------------------------------------------------


class TestImbedding:
    def test_r_two_is_one(self):
        for n in [0.0, 0.5, 1.0, 3.7]:
            assert specfun.imbedding_constant(2.0, n, 2) == 1.0

    def test_r_inf_low_dim(self):
        assert_rel(
            specfun.imbedding_constant(math.inf, 1.0, 1), 1.0 / math.sqrt(2.0), 1e-13
        )

    def test_square_identity_spot(self):
        # S(4, a/2, d)^2 = (16/27)^(d/4) S_inf(a, d) at a = 2, d = 2
        assert_rel(specfun.imbedding_constant(4.0, 1.0, 2), 0.46600072098319043, 1e-12)

    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_square_identity_grid(self, d):
        from sobprod.bounds import s_const

        for a in [d / 2.0 + 0.6, math.floor(d / 2) + 1.0, 3.0]:
            lhs = specfun.imbedding_constant(4.0, a / 2.0, d) ** 2
            rhs = (16.0 / 27.0) ** (d / 4.0) * s_const(a, d)
            assert_rel(lhs, rhs, 1e-10, f"S4 identity a={a}, d={d}")

    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_product_identity_grid(self, d):
        # S(2a/l, a-l, d) S(2a/(a-l), l, d) = E(l, a, d) S(a, d)
        from sobprod.bounds import e_const, s_const

        for a in [d / 2.0 + 0.6, math.floor(d / 2) + 1.0, 3.0]:
            for ell in [0.0, a / 4.0, a / 2.0, 3.0 * a / 4.0, a]:
                r1 = math.inf if ell == 0.0 else 2.0 * a / ell
                r2 = math.inf if ell == a else 2.0 * a / (a - ell)
                lhs = specfun.imbedding_constant(r1, a - ell, d) * specfun.imbedding_constant(
                    r2, ell, d
                )
                rhs = e_const(ell, a, d) * s_const(a, d)
                assert_rel(lhs, rhs, 1e-10, f"product identity (l={ell}, a={a}, d={d})")

    def test_inadmissible(self):
        with pytest.raises(DomainError):
            specfun.imbedding_constant(4.0, 0.0, 2)  # n = 0 admits only r = 2
        with pytest.raises(DomainError):
            specfun.imbedding_constant(math.inf, 1.0, 2)  # r = inf needs n > d/2
        with pytest.raises(DomainError):
            # 0 < n < d/2 requires r < d/(d/2 - n) = 4 here
            specfun.imbedding_constant(4.0, 0.5, 2)
        with pytest.raises(DomainError):
            specfun.imbedding_constant(1.5, 1.0, 2)  # r < 2
