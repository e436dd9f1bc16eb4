import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qhtoeplitz.mellin import MellinTransform, RadialSymbol, parse_symbol
from qhtoeplitz.operators import QHOperator, apply_bergman, apply_harmonic
from qhtoeplitz.oracle import (KernelEvaluator, QuadratureError, adaptive_gauss_legendre,
                               basis_value, kernel_coefficient, kernel_projection_value,
                               quad_mellin, quad_projection_coeff)


def test_gauss_legendre_polynomial_exact():
    val, err = adaptive_gauss_legendre(lambda x: x ** 7, 0.0, 2.0)
    assert val == pytest.approx(2 ** 8 / 8, rel=1e-14)


def test_gauss_legendre_endpoint_singularity():
    val, _ = adaptive_gauss_legendre(lambda x: 1 / np.sqrt(x), 1e-14, 1.0, tol=1e-10)
    assert val == pytest.approx(2.0, abs=1e-6)


@pytest.mark.parametrize("text, z", [("r^-1.9", 2.0), ("r^-1*log", 2.5), ("3*r^-1 - r^3", 2.0), ("r^5*log", 30.0)])
def test_quad_mellin_hard_cases(text, z):
    sym = parse_symbol(text)
    assert quad_mellin(sym, z) == pytest.approx(MellinTransform.of(sym)(z), rel=1e-9)


def test_quad_mellin_rejects_nonintegrable():
    with pytest.raises(QuadratureError):
        quad_mellin(parse_symbol("r^-1.5"), 0.4)


def test_kernel_coefficients():
    assert [kernel_coefficient("harmonic", j) for j in (-2, 0, 3)] == [3, 1, 4]
    assert [kernel_coefficient("bergman", j) for j in (-2, 0, 3)] == [0, 1, 4]


@settings(max_examples=40, deadline=None)
@given(st.integers(-5, 5), st.integers(-8, 8),
       st.sampled_from(["1", "r^2", "3*r^-1 - r^3", "r^-1.5 + r", "-r*log"]))
def test_projection_matches_harmonic_action(k, l, text):
    sym = parse_symbol(text)
    want = apply_harmonic(QHOperator.of("h", k, sym), l)[1]
    assert quad_projection_coeff(k, sym, l) == pytest.approx(want, rel=1e-9, abs=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.integers(-5, 5), st.integers(0, 8), st.sampled_from(["1", "r^2", "2*r + r^4"]))
def test_projection_matches_bergman_action(k, n, text):
    sym = parse_symbol(text)
    target, want = apply_bergman(QHOperator.of("a", k, sym), n)
    got = quad_projection_coeff(k, sym, n, space="bergman")
    assert got == pytest.approx(want, rel=1e-9, abs=1e-12)
    assert (target is None) == (got == 0.0)


@pytest.mark.parametrize("space, k, l, text", [
    ("harmonic", 1, 0, "r"), ("harmonic", -2, 1, "1 + r^2"), ("harmonic", 2, -3, "r^3"),
    ("bergman", 1, 2, "r"), ("bergman", -1, 2, "r^2"),
])
def test_full_kernel_integral(space, k, l, text):
    """Evaluate T e_l at a point by the 2D kernel integral and compare with lambda e_{l+k}(z)."""
    sym = parse_symbol(text)
    z = 0.3 + 0.2j
    T = QHOperator.of(space, k, sym)
    target, lam = T.apply(l)
    want = 0.0 if target is None else lam * basis_value(target, z)
    got = kernel_projection_value(k, sym, l, z, space)
    assert abs(got - want) <= 1e-9 * max(1.0, abs(want))


def test_kernel_evaluator_domain():
    with pytest.raises(ValueError):
        KernelEvaluator("harmonic", 1.0)
