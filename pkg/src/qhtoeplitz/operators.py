"""Quasihomogeneous Toeplitz operators acting on monomial bases.

On the harmonic Bergman space the basis is e_l = r^|l| e^{il theta}, l in Z;
on the Bergman space it is z^n, n >= 0. T_{e^{ik theta} phi} is a weighted
shift l -> l + k in both cases, so products, commutators and generalized
semicommutators are again weighted shifts and are stored as one coefficient
per source index.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .mellin import MellinTransform, RadialSymbol, Transformable
from .support import BERGMAN, COMMUTATOR, GENSEMI, HARMONIC, SupportWindow, normalize_space

DEFAULT_MARGIN = 20


class WindowTooSmall(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class QHOperator:
    space: str
    degree: int
    radial: MellinTransform
    label: str = ""

    @classmethod
    def of(cls, space: str, degree: int, symbol: Transformable, label: str | None = None) -> "QHOperator":
        radial = MellinTransform.of(symbol)
        return cls(normalize_space(space), int(degree), radial,
                   label if label is not None else f"e^{{{degree}i}}({radial})")

    @property
    def witness(self) -> RadialSymbol | None:
        return self.radial.witness

    def apply(self, index: int) -> tuple[int | None, float]:
        if self.space == HARMONIC:
            return apply_harmonic(self, index)
        return apply_bergman(self, index)


def apply_harmonic(T: QHOperator, l: int) -> tuple[int, float]:
    """T e_l = lambda e_{l+k}."""
    k, phi = T.degree, T.radial
    if l >= 0:
        if l >= -k:
            lam = 2 * (l + k + 1) * phi(2 * l + k + 2)
        else:
            lam = 2 * (-l - k + 1) * phi(-k + 2)
    else:
        if -l >= k:
            lam = 2 * (-l - k + 1) * phi(-2 * l - k + 2)
        else:
            lam = 2 * (l + k + 1) * phi(k + 2)
    return l + k, lam


def apply_bergman(T: QHOperator, n: int) -> tuple[int | None, float]:
    """T z^n = lambda z^{n+k}, or (None, 0.0) when n < -k."""
    if n < 0:
        raise ValueError("Bergman basis index must be >= 0")
    k = T.degree
    if n < -k:
        return None, 0.0
    return n + k, 2 * (n + k + 1) * T.radial(2 * n + k + 2)


def compose(A: QHOperator, B: QHOperator, index: int) -> tuple[int | None, float]:
    """Coefficient of AB on one basis vector, by two single applications."""
    mid, lb = B.apply(index)
    if mid is None:
        return None, 0.0
    out, la = A.apply(mid)
    if out is None:
        return None, 0.0
    return out, la * lb


@dataclass(frozen=True)
class CoeffMap:
    """One coefficient per source index of a weighted shift with net degree k1+k2.

    ``scales`` holds the magnitude of the terms that were subtracted, which
    sets the yardstick for the zero test.
    """

    space: str
    kind: str
    k1: int
    k2: int
    window: tuple[int, int]
    entries: dict = field(default_factory=dict)
    scales: dict = field(default_factory=dict)

    @property
    def net_degree(self) -> int:
        return self.k1 + self.k2

    def target(self, source: int) -> int:
        return source + self.net_degree

    def is_zero_at(self, source: int, tol: float = 1e-10) -> bool:
        c = self.entries.get(source, 0.0)
        return abs(c) <= tol * max(1.0, self.scales.get(source, 0.0))

    def nonzero(self, tol: float = 1e-10) -> dict[int, float]:
        return {l: c for l, c in sorted(self.entries.items()) if not self.is_zero_at(l, tol)}

    def to_json(self) -> dict:
        return {"space": self.space, "kind": self.kind, "k1": self.k1, "k2": self.k2,
                "window": list(self.window),
                "entries": {str(l): c for l, c in sorted(self.entries.items())}}


def _window(space: str, kind: str, k1: int, k2: int, window, margin: int) -> tuple[int, int]:
    W = SupportWindow(k1, k2)
    need = W.window(kind, space, margin)
    if window is None:
        return need
    lo, hi = int(window[0]), int(window[1])
    if space == BERGMAN:
        lo = max(lo, 0)
    if lo > need[0] or hi < need[1]:
        raise WindowTooSmall(f"window {window} does not cover support plus margin {need}")
    return lo, hi


def _check_pair(T1: QHOperator, T2: QHOperator) -> str:
    if T1.space != T2.space:
        raise ValueError("operators live on different spaces")
    return T1.space


def commutator_map(T1: QHOperator, T2: QHOperator, window=None,
                   margin: int = DEFAULT_MARGIN) -> CoeffMap:
    """[T1, T2] = T1 T2 - T2 T1 on every source in the window."""
    space = _check_pair(T1, T2)
    lo, hi = _window(space, COMMUTATOR, T1.degree, T2.degree, window, margin)
    entries, scales = {}, {}
    for l in range(lo, hi + 1):
        _, a = compose(T1, T2, l)
        _, b = compose(T2, T1, l)
        entries[l] = a - b
        scales[l] = max(abs(a), abs(b))
    return CoeffMap(space, COMMUTATOR, T1.degree, T2.degree, (lo, hi), entries, scales)


def gen_semicommutator_map(T1: QHOperator, T2: QHOperator, psi: Transformable, window=None,
                           margin: int = DEFAULT_MARGIN) -> CoeffMap:
    """T1 T2 - T_{e^{i(k1+k2)theta} psi} on every source in the window."""
    space = _check_pair(T1, T2)
    Tpsi = QHOperator.of(space, T1.degree + T2.degree, psi)
    lo, hi = _window(space, GENSEMI, T1.degree, T2.degree, window, margin)
    entries, scales = {}, {}
    for l in range(lo, hi + 1):
        _, a = compose(T1, T2, l)
        _, p = Tpsi.apply(l)
        entries[l] = a - p
        scales[l] = max(abs(a), abs(p))
    return CoeffMap(space, GENSEMI, T1.degree, T2.degree, (lo, hi), entries, scales)


@dataclass(frozen=True)
class LamreResult:
    passed: bool
    lhs: float
    rhs: float


def lamre_check(k: int, phi: Transformable, l: int, tol: float = 1e-11) -> LamreResult:
    """(|l|+1) lambda_{k,l} == (|l+k|+1) lambda_{k,-l-k}."""
    T = QHOperator.of(HARMONIC, k, phi)
    lhs = (abs(l) + 1) * apply_harmonic(T, l)[1]
    rhs = (abs(l + k) + 1) * apply_harmonic(T, -l - k)[1]
    ok = abs(lhs - rhs) <= tol * max(1.0, abs(lhs), abs(rhs))
    return LamreResult(ok, lhs, rhs)
