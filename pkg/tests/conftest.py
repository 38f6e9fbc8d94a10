import math

import pytest


def rel_err(got: float, ref: float) -> float:
    return abs(got - ref) / max(abs(ref), 1e-300)


@pytest.fixture(scope="session")
def mp():
    mpmath = pytest.importorskip("mpmath")
    mpmath.mp.dps = 30
    return mpmath.mp


def assert_rel(got: float, ref: float, tol: float, label: str = "") -> None:
    err = rel_err(got, ref)
    assert err <= tol, f"{label} rel error {err:.3e} > {tol:.1e} (got {got!r}, ref {ref!r})"


def assert_abs(got: float, ref: float, tol: float, label: str = "") -> None:
    err = abs(got - ref)
    assert err <= tol, f"{label} abs error {err:.3e} > {tol:.1e} (got {got!r}, ref {ref!r})"


def log2(x: float) -> float:
    return math.log2(x)
