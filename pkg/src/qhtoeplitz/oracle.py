"""Independent numerical checks built from quadrature and reproducing kernels.

Nothing here calls the closed-form Mellin evaluator or the basis-action
formulas; the only shared code is pointwise evaluation of radial symbols.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

from .mellin import RadialSymbol

GL_ORDER = 40
R_FLOOR = 1e-14
_NODES, _WEIGHTS = leggauss(GL_ORDER)


class QuadratureError(RuntimeError):
    pass


def _panel(f, a: float, b: float) -> float:
    half = 0.5 * (b - a)
    return half * float(np.dot(_WEIGHTS, f(half * _NODES + 0.5 * (a + b))))


def adaptive_gauss_legendre(f, a: float, b: float, tol: float = 1e-12,
                            max_panels: int = 20_000) -> tuple[float, float]:
    """Bisection-adaptive Gauss-Legendre; returns (value, error estimate).

    A panel is accepted when its 40-point value agrees with the sum over its
    two halves to within its share of ``tol``.
    """
    total, err = 0.0, 0.0
    stack = [(a, b, _panel(f, a, b))]
    count = 0
    while stack:
        lo, hi, whole = stack.pop()
        mid = 0.5 * (lo + hi)
        left, right = _panel(f, lo, mid), _panel(f, mid, hi)
        diff = abs(left + right - whole)
        if diff <= max(tol * (hi - lo) / (b - a), 1e-16 * abs(left + right)) or hi - lo < 1e-15:
            total += left + right
            err += diff
            continue
        count += 1
        if count > max_panels:
            raise QuadratureError(f"no convergence on [{a}, {b}] after {max_panels} splits")
        stack.append((lo, mid, left))
        stack.append((mid, hi, right))
    return total, err


def quad_mellin(phi: RadialSymbol, z: float, tol: float = 1e-11) -> float:
    """int_0^1 phi(r) r^(z-1) dr by adaptive Gauss-Legendre.

    Negative powers are tamed with r = t**q, which turns the endpoint
    singularity r**e (e > -1) into t**(q(e+1)-1) with a nonnegative exponent;
    the t-range starts at the floor 1e-14.
    """
    if phi.is_zero:
        return 0.0
    lowest = min(p for _, p, _ in phi.terms) + z - 1.0
    if lowest <= -1.0:
        raise QuadratureError("integrand not integrable at r=0")
    q = 1 if lowest >= 1.0 else math.ceil(2.0 / (lowest + 1.0))
    terms = [(c, p, e) for c, p, e in phi.terms]

    def integrand(t):
        logt = np.log(t)
        out = np.zeros_like(t)
        for c, p, e in terms:
            piece = q * np.exp((q * (z + p) - 1.0) * logt)
            if e:
                piece = piece * q * logt
            out += c * piece
        return out

    value, err = adaptive_gauss_legendre(integrand, R_FLOOR, 1.0, tol)
    if err > 10 * tol * max(1.0, abs(value)):
        raise QuadratureError(f"error estimate {err} above tolerance")
    return value


def kernel_coefficient(space: str, j: int) -> float:
    """Coefficient of e_j(z) conj(e_j(w)) in the reproducing kernel, e_j = r^|j| e^{ij theta}.

    Harmonic: sum (n+1)(z conj w)^n + sum (n+1)(conj z w)^n - 1 gives |j|+1
    for every j (the j = 0 terms give 1 + 1 - 1). Bergman keeps j >= 0 only.
    """
    if space.startswith("h"):
        return abs(j) + 1.0
    return j + 1.0 if j >= 0 else 0.0


def quad_projection_coeff(k: int, phi: RadialSymbol, l: int, space: str = "harmonic",
                          tol: float = 1e-12) -> float:
    """lambda with T_{e^{ik theta} phi} e_l = lambda e_{l+k}, by projecting with the kernel.

    f = e^{i(k+l)theta} phi(r) r^|l|; only the e_{k+l} mode survives the
    angular integral, so the coefficient is kernel_coefficient * <f, e_j>
    with <f, e_j> = 2 int_0^1 phi(r) r^(|l|+|j|+1) dr (dA normalized).
    """
    j = k + l
    if space.startswith("b") and l < 0:
        raise ValueError("Bergman basis index must be >= 0")
    weight = kernel_coefficient(space, j)
    if weight == 0.0:
        return 0.0
    inner = 2.0 * quad_mellin(phi, abs(l) + abs(j) + 2.0, tol)
    return weight * inner


@dataclass(frozen=True)
class KernelEvaluator:
    """Reproducing kernel at a point z of the open disk."""

    space: str
    z: complex

    def __post_init__(self):
        if abs(self.z) >= 1:
            raise ValueError("z must lie in the open unit disk")

    def K(self, w):
        return 1.0 / (1.0 - w * np.conj(self.z)) ** 2

    def __call__(self, w):
        if self.space.startswith("b"):
            return self.K(w)
        k = self.K(w)
        return k + np.conj(k) - 1.0

    def inner(self, h, n_radial: int = 2, n_angle: int = 256) -> complex:
        """<h, kernel> = int_D h(w) conj(kernel(w)) dA(w) by polar product rules."""
        edges = np.linspace(0.0, 1.0, n_radial + 1)
        theta = 2 * np.pi * np.arange(n_angle) / n_angle
        total = 0.0 + 0.0j
        for a, b in zip(edges[:-1], edges[1:]):
            rho = 0.5 * (b - a) * _NODES + 0.5 * (a + b)
            wts = 0.5 * (b - a) * _WEIGHTS
            w = rho[:, None] * np.exp(1j * theta[None, :])
            vals = h(w) * np.conj(self(w))
            total += np.sum(wts[:, None] * rho[:, None] * vals) * (2 * np.pi / n_angle)
        return total / np.pi


def kernel_projection_value(k: int, phi: RadialSymbol, l: int, z: complex,
                            space: str = "harmonic") -> complex:
    """(T_{e^{ik theta} phi} e_l)(z) as a full 2D kernel integral.

    Only usable for symbols that are smooth enough on the closed disk after
    the r dr weight (powers >= -1).
    """
    ev = KernelEvaluator(space, z)

    def f(w):
        r = np.abs(w)
        ang = np.angle(w)
        return np.exp(1j * (k + l) * ang) * phi(r) * r ** abs(l)

    return ev.inner(f)


def basis_value(j: int, z: complex) -> complex:
    return abs(z) ** abs(j) * np.exp(1j * j * np.angle(z))
