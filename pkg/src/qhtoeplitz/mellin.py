"""Radial symbols on [0, 1], their Mellin transforms, and Gamma-ratio transforms.

A radial symbol is a finite sum of terms ``c * r**p * log(r)**e`` with
``p > -2`` and ``e`` in {0, 1}. On the Mellin side every such term is a pole:

    r**p          ->   1 / (z + p)
    r**p * log r  ->  -1 / (z + p)**2

so symbol arithmetic, Mellin convolution and the inversion of telescoping
Gamma ratios all reduce to partial fractions.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Union

import numpy as np
from numpy.polynomial import Polynomial
from scipy import special

INTEGRALITY_TOL = 1e-9
_POWER_DIGITS = 12
_DROP_REL = 1e-13


class SymbolError(ValueError):
    """A radial symbol violates the integrability or term-shape invariants."""


class UnsupportedTermError(ValueError):
    """An operation would need log powers above one."""


class SymbolParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class MellinPoleError(ArithmeticError):
    def __init__(self, z: float):
        super().__init__(f"Mellin transform has a pole at z={z}")
        self.z = z


def is_integer(x: float, tol: float = INTEGRALITY_TOL) -> bool:
    return abs(x - round(x)) <= tol


# ---------------------------------------------------------------------------
# Radial symbols
# ---------------------------------------------------------------------------

Term = tuple[float, float, int]


@dataclass(frozen=True)
class RadialSymbol:
    """Finite sum of ``coeff * r**power * log(r)**logexp`` terms.

    Terms are merged on (power, logexp), tiny coefficients are dropped and
    the result is sorted by power. Construction fails with SymbolError when a
    surviving power is ``<= -2``.
    """

    terms: tuple[Term, ...] = ()

    def __post_init__(self):
        merged: dict[tuple[float, int], float] = {}
        for c, p, e in self.terms:
            e = int(e)
            if e not in (0, 1):
                raise UnsupportedTermError(f"log exponent {e} not supported")
            key = (round(float(p), _POWER_DIGITS) + 0.0, e)
            merged[key] = merged.get(key, 0.0) + float(c)
        big = max((abs(c) for c in merged.values()), default=0.0)
        kept = []
        for (p, e), c in sorted(merged.items()):
            if c == 0.0 or abs(c) <= _DROP_REL * big:
                continue
            if not p > -2:
                raise SymbolError(f"power {p} is not > -2; symbol not in L1(r dr)")
            kept.append((c, p, e))
        object.__setattr__(self, "terms", tuple(kept))

    # constructors
    @classmethod
    def monomial(cls, power: float, coeff: float = 1.0, log: int = 0) -> "RadialSymbol":
        return cls(((coeff, power, log),))

    @classmethod
    def constant(cls, c: float) -> "RadialSymbol":
        return cls(((c, 0.0, 0),))

    @classmethod
    def parse(cls, text: str) -> "RadialSymbol":
        return parse_symbol(text)

    # algebra
    def __add__(self, other):
        other = _as_symbol(other)
        if other is None:
            return NotImplemented
        return RadialSymbol(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return RadialSymbol(tuple((-c, p, e) for c, p, e in self.terms))

    def __sub__(self, other):
        other = _as_symbol(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RadialSymbol):
            out = []
            for c1, p1, e1 in self.terms:
                for c2, p2, e2 in other.terms:
                    if e1 + e2 > 1:
                        raise UnsupportedTermError("product would contain log(r)**2")
                    out.append((c1 * c2, p1 + p2, e1 + e2))
            return RadialSymbol(tuple(out))
        if isinstance(other, (int, float, Fraction)):
            return RadialSymbol(tuple((c * float(other), p, e) for c, p, e in self.terms))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, float, Fraction)):
            return self * (1.0 / float(other))
        return NotImplemented

    def shift(self, d: float) -> "RadialSymbol":
        """Multiply by r**d."""
        return RadialSymbol(tuple((c, p + d, e) for c, p, e in self.terms))

    # evaluation
    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        out = np.zeros_like(r)
        for c, p, e in self.terms:
            out = out + c * r ** p * (np.log(r) if e else 1.0)
        return out if out.ndim else float(out)

    def mellin(self, z):
        """Closed-form Mellin transform at z."""
        total = 0.0
        for c, p, e in self.terms:
            total += -c / (z + p) ** 2 if e else c / (z + p)
        return total

    # predicates
    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return all(p == 0.0 and e == 0 for _, p, e in self.terms)

    @property
    def has_log(self) -> bool:
        return any(e for _, _, e in self.terms)

    @property
    def min_power(self) -> float | None:
        return min((p for _, p, _ in self.terms), default=None)

    def coefficient(self, power: float, log: int = 0) -> float:
        key = round(float(power), _POWER_DIGITS)
        for c, p, e in self.terms:
            if p == key and e == log:
                return c
        return 0.0

    def ratio_to(self, other: "RadialSymbol", tol: float = 1e-10) -> float | None:
        """Return C with self == C * other, or None."""
        if other.is_zero:
            return 0.0 if self.is_zero else None
        if len(self.terms) != len(other.terms):
            return None
        ratio = None
        for (c1, p1, e1), (c2, p2, e2) in zip(self.terms, other.terms):
            if p1 != p2 or e1 != e2:
                return None
            q = c1 / c2
            if ratio is None:
                ratio = q
            elif abs(q - ratio) > tol * max(1.0, abs(ratio)):
                return None
        return ratio

    def approx_equal(self, other: "RadialSymbol", tol: float = 1e-10) -> bool:
        diff = self - other
        scale = max([abs(c) for c, _, _ in self.terms + other.terms], default=1.0)
        return all(abs(c) <= tol * max(1.0, scale) for c, _, _ in diff.terms)

    # serialization
    def to_json(self) -> dict:
        return {"terms": [[c, p, e] for c, p, e in self.terms], "text": str(self)}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for i, (c, p, e) in enumerate(self.terms):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = []
            if p != 0.0 or e:
                if mag != 1.0:
                    body.append(_fmt(mag))
                if p != 0.0:
                    body.append("r" if p == 1.0 else f"r^{_fmt(p)}")
                if e:
                    body.append("log")
            else:
                body.append(_fmt(mag))
            text = "*".join(body)
            if i == 0:
                parts.append(("-" if sign == "-" else "") + text)
            else:
                parts.append(f" {sign} {text}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"RadialSymbol({str(self)!r})"


def _fmt(x: float) -> str:
    if float(x).is_integer():
        return str(int(x))
    return format(x, ".15g")


def _as_symbol(x) -> RadialSymbol | None:
    if isinstance(x, RadialSymbol):
        return x
    if isinstance(x, (int, float, Fraction)):
        return RadialSymbol.constant(float(x))
    return None


# ---------------------------------------------------------------------------
# Symbol grammar:  expr := ['+'|'-'] term (('+'|'-') term)*
#                  term := factor ('*' factor)*
#                  factor := number | 'r' ['^' exponent] | 'log'
# numbers are decimals or p/q fractions; exponents may be signed or
# parenthesized, e.g. r^-1, r^(1/2).
# ---------------------------------------------------------------------------

_NUM = re.compile(r"(\d+\.?\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)(?:/(\d+\.?\d*|\.\d+))?")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def number(self) -> float:
        self.skip()
        m = _NUM.match(self.text, self.pos)
        if not m:
            raise SymbolParseError("expected a number", self.pos)
        self.pos = m.end()
        value = float(m.group(1))
        if m.group(2) is not None:
            den = float(m.group(2))
            if den == 0:
                raise SymbolParseError("zero denominator", m.start(2))
            value /= den
        return value

    def exponent(self) -> float:
        self.skip()
        sign = 1.0
        if self.peek() in ("+", "-"):
            sign = -1.0 if self.text[self.pos] == "-" else 1.0
            self.pos += 1
        if self.peek() == "(":
            self.pos += 1
            inner_sign = 1.0
            if self.peek() in ("+", "-"):
                inner_sign = -1.0 if self.text[self.pos] == "-" else 1.0
                self.pos += 1
            value = inner_sign * self.number()
            if self.peek() != ")":
                raise SymbolParseError("expected ')'", self.pos)
            self.pos += 1
            return sign * value
        return sign * self.number()

    def factor(self, acc: list):
        self.skip()
        if self.text.startswith("log", self.pos):
            self.pos += 3
            acc[2] += 1
        elif self.peek() == "r":
            self.pos += 1
            if self.peek() == "^":
                self.pos += 1
                acc[1] += self.exponent()
            else:
                acc[1] += 1.0
        else:
            acc[0] *= self.number()

    def term(self, sign: float) -> Term:
        acc = [sign, 0.0, 0]
        self.factor(acc)
        while self.peek() == "*":
            self.pos += 1
            self.factor(acc)
        if acc[2] > 1:
            raise SymbolParseError("log power above one", self.pos)
        return (acc[0], acc[1], acc[2])

    def parse(self) -> RadialSymbol:
        terms = []
        sign = 1.0
        if self.peek() in ("+", "-"):
            sign = -1.0 if self.text[self.pos] == "-" else 1.0
            self.pos += 1
        terms.append(self.term(sign))
        while self.peek() in ("+", "-"):
            sign = -1.0 if self.text[self.pos] == "-" else 1.0
            self.pos += 1
            terms.append(self.term(sign))
        if self.peek() != "":
            raise SymbolParseError(f"unexpected {self.peek()!r}", self.pos)
        return RadialSymbol(tuple(terms))


def parse_symbol(text: str) -> RadialSymbol:
    """Parse e.g. ``"3*r^-1 - r^3"`` or ``"r^2*log"``."""
    if not text.strip():
        raise SymbolParseError("empty symbol", 0)
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# Pole sums: {(a, order): c} meaning sum c / (z + a)**order
# ---------------------------------------------------------------------------

PoleSum = dict


def _pole_key(a: float) -> float:
    return round(float(a), _POWER_DIGITS) + 0.0


def symbol_poles(sym: RadialSymbol) -> PoleSum:
    out: PoleSum = {}
    for c, p, e in sym.terms:
        key = (p, 2 if e else 1)
        out[key] = out.get(key, 0.0) + (-c if e else c)
    return out


def symbol_from_poles(poles: Mapping[tuple[float, int], float]) -> RadialSymbol:
    terms = []
    for (a, order), c in poles.items():
        if c == 0.0:
            continue
        if order == 1:
            terms.append((c, a, 0))
        elif order == 2:
            terms.append((-c, a, 1))
        else:
            raise UnsupportedTermError(f"pole of order {order} needs log(r)**{order - 1}")
    return RadialSymbol(tuple(terms))


def _series_div(p: np.ndarray, q: np.ndarray, n: int) -> list[float]:
    """First n Taylor coefficients of p/q at 0 (coefficient arrays low->high)."""
    p = list(p) + [0.0] * n
    q = list(q) + [0.0] * n
    out = []
    for t in range(n):
        acc = p[t] - sum(q[i] * out[t - i] for i in range(1, t + 1))
        out.append(acc / q[0])
    return out


def partial_fractions(numer: Polynomial, poles: Iterable[tuple[float, int]]) -> PoleSum:
    """Expand numer(z) / prod (z+a)**mult into a pole sum.

    Requires deg numer < total multiplicity.
    """
    poles = list(poles)
    total = sum(m for _, m in poles)
    numer = numer.trim()
    if not (len(numer.coef) == 1 and numer.coef[0] == 0.0) and numer.degree() >= total:
        raise ValueError("improper rational function")
    out: PoleSum = {}
    for a, mult in poles:
        others = Polynomial([1.0])
        for b, mb in poles:
            if b != a:
                others = others * Polynomial([b, 1.0]) ** mb
        shift = Polynomial([-a, 1.0])
        series = _series_div(numer(shift).coef, others(shift).coef, mult)
        for t, s in enumerate(series):
            if s != 0.0:
                out[(a, mult - t)] = out.get((a, mult - t), 0.0) + s
    return out


def _multiply_poles(x: PoleSum, y: PoleSum) -> PoleSum:
    out: PoleSum = {}
    for (a, i), ca in x.items():
        for (b, j), cb in y.items():
            if _pole_key(a) == _pole_key(b):
                piece = {(a, i + j): 1.0}
            else:
                piece = partial_fractions(Polynomial([1.0]), [(a, i), (b, j)])
            for key, v in piece.items():
                out[key] = out.get(key, 0.0) + ca * cb * v
    return out


def mellin_convolve(f: RadialSymbol, g: RadialSymbol) -> RadialSymbol:
    """Mellin convolution (f*g)(r) = int_r^1 f(r/t) g(t) dt/t, in closed form."""
    if f.has_log and g.has_log:
        raise UnsupportedTermError("both operands carry log terms")
    return symbol_from_poles(_multiply_poles(symbol_poles(f), symbol_poles(g)))


# ---------------------------------------------------------------------------
# Gamma ratios
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NotRational:
    """Marker returned when a Gamma ratio has no radial-symbol inverse."""

    reason: str

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class _Reduced:
    lin_num: tuple[float, ...]   # factors (z + c) / s
    lin_den: tuple[float, ...]
    gam_num: tuple[float, ...]   # Gamma((z + a) / s)
    gam_den: tuple[float, ...]

    @property
    def telescopes(self) -> bool:
        return not self.gam_num and not self.gam_den


@dataclass(frozen=True)
class GammaRatioTransform:
    """prefactor * prod Gamma((z+a_i)/s) / prod Gamma((z+b_j)/s)."""

    num_offsets: tuple[float, ...]
    den_offsets: tuple[float, ...]
    scale: float
    prefactor: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "num_offsets", tuple(float(a) for a in self.num_offsets))
        object.__setattr__(self, "den_offsets", tuple(float(b) for b in self.den_offsets))
        object.__setattr__(self, "scale", float(self.scale))
        object.__setattr__(self, "prefactor", float(self.prefactor))
        if len(self.num_offsets) != len(self.den_offsets):
            raise ValueError("numerator and denominator need the same number of Gammas")
        if not self.scale > 0:
            raise ValueError("scale must be positive")

    @classmethod
    def commutator_family(cls, k1: int, k2: int, m: float) -> "GammaRatioTransform":
        """phi-hat making [T_{e^{ik1 t} r^m}, T_{e^{ik2 t} phi}] finite rank (k1 > 0)."""
        if k1 <= 0:
            raise ValueError("normalize to k1 > 0 first")
        return cls((k2, m + k1 - k2), (2 * k1 - k2, m + k1 + k2), 2 * k1)

    @classmethod
    def gensemi_family(cls, k1: int, k2: int, m: float) -> "GammaRatioTransform":
        """psi-hat matching commutator_family in T_{r^m} T_phi - T_psi (k1 > 0)."""
        if k1 <= 0:
            raise ValueError("normalize to k1 > 0 first")
        return cls((k1 + k2, m - k2), (k1 - k2, m + 2 * k1 + k2), 2 * k1)

    def __call__(self, z: float) -> float:
        return gamma_ratio_eval(self, z)

    def scaled(self, c: float) -> "GammaRatioTransform":
        return GammaRatioTransform(self.num_offsets, self.den_offsets, self.scale, self.prefactor * c)

    @cached_property
    def reduced(self) -> _Reduced:
        s = self.scale
        den_left = list(self.den_offsets)
        lin_num: list[float] = []
        lin_den: list[float] = []
        gam_num: list[float] = []
        for a in self.num_offsets:
            best = None
            for j, b in enumerate(den_left):
                q = (a - b) / s
                if is_integer(q) and (best is None or abs(round(q)) < abs(best[1])):
                    best = (j, round(q))
            if best is None:
                gam_num.append(a)
                continue
            j, n = best
            b = den_left.pop(j)
            # Gamma(y + n) / Gamma(y) with y = (z + b)/s
            if n > 0:
                lin_num.extend(b + t * s for t in range(n))
            elif n < 0:
                lin_den.extend(a + t * s for t in range(-n))
        for c in list(lin_num):
            for i, d in enumerate(lin_den):
                if abs(c - d) <= INTEGRALITY_TOL * s:
                    lin_den.pop(i)
                    lin_num.remove(c)
                    break
        return _Reduced(tuple(lin_num), tuple(lin_den), tuple(gam_num), tuple(den_left))

    @property
    def telescopes(self) -> bool:
        return self.reduced.telescopes

    def poles(self, lo: float = 2.0, hi: float = math.inf) -> list[float]:
        """Real poles z in [lo, hi] that survive cancellation."""
        red, s = self.reduced, self.scale
        cands = {-c for c in red.lin_den}
        for a in red.gam_num:
            j = 0
            while -a - j * s <= hi and j < 10_000:
                cands.add(-a - j * s)
                j += 1
        return sorted(z for z in cands if lo <= z <= hi and _eval_parts(self, z)[0] > 0)

    def to_json(self) -> dict:
        return {"prefactor": self.prefactor, "scale": self.scale,
                "num_offsets": list(self.num_offsets), "den_offsets": list(self.den_offsets)}


def _nonpos_int(x: float) -> int | None:
    n = round(x)
    if n <= 0 and abs(x - n) <= 1e-12:
        return -n
    return None


def _eval_parts(G: GammaRatioTransform, z: float) -> tuple[int, float, float]:
    """(pole order, sign, log magnitude) of G at z.

    Singular factors are expanded to first order in eps = dz/scale, which is
    common to all of them, so a zero of one factor can cancel a pole of
    another.
    """
    red, s = G.reduced, G.scale
    order, sign, logmag = 0, 1.0, 0.0
    for c in red.lin_num:
        v = (z + c) / s
        if abs(v) <= 1e-12:
            order -= 1
        else:
            sign *= math.copysign(1.0, v)
            logmag += math.log(abs(v))
    for c in red.lin_den:
        v = (z + c) / s
        if abs(v) <= 1e-12:
            order += 1
        else:
            sign *= math.copysign(1.0, v)
            logmag -= math.log(abs(v))
    for a in red.gam_num:
        x = (z + a) / s
        n = _nonpos_int(x)
        if n is not None:
            order += 1
            sign *= (-1.0) ** n
            logmag -= math.lgamma(n + 1)
        else:
            sign *= special.gammasgn(x)
            logmag += special.gammaln(x)
    for b in red.gam_den:
        x = (z + b) / s
        n = _nonpos_int(x)
        if n is not None:
            order -= 1
            sign *= (-1.0) ** n
            logmag += math.lgamma(n + 1)
        else:
            sign *= special.gammasgn(x)
            logmag -= special.gammaln(x)
    return order, sign, logmag


def gamma_ratio_eval(G: GammaRatioTransform, z: float) -> float:
    """Value of G at real z via log-Gamma with sign tracking."""
    if G.prefactor == 0.0:
        return 0.0
    order, sign, logmag = _eval_parts(G, z)
    if order > 0:
        raise MellinPoleError(z)
    if order < 0:
        return 0.0
    return G.prefactor * sign * math.exp(logmag)


def gamma_ratio_to_partial_fractions(G: GammaRatioTransform) -> RadialSymbol | NotRational:
    """Invert a telescoping Gamma ratio to the radial symbol it transforms from."""
    red, s = G.reduced, G.scale
    if not red.telescopes:
        return NotRational("Gamma factors do not telescope")
    if G.prefactor == 0.0:
        return RadialSymbol()
    if len(red.lin_num) >= len(red.lin_den):
        return NotRational("improper rational function")
    numer = Polynomial([G.prefactor * s ** (len(red.lin_den) - len(red.lin_num))])
    for c in red.lin_num:
        numer = numer * Polynomial([c, 1.0])
    groups: list[list] = []
    for d in red.lin_den:
        for g in groups:
            if abs(g[0] - d) <= INTEGRALITY_TOL * s:
                g[1] += 1
                break
        else:
            groups.append([d, 1])
    poles = partial_fractions(numer, [(g[0], g[1]) for g in groups])
    big = max(abs(v) for v in poles.values())
    kept = {}
    for (a, order), c in poles.items():
        if abs(c) <= 1e-12 * big:
            continue
        if order > 2:
            return NotRational(f"pole of order {order} at z={-a}")
        if not a > -2:
            return NotRational(f"non-integrable power r^{_fmt(a)}")
        kept[(a, order)] = c
    return symbol_from_poles(kept)


# ---------------------------------------------------------------------------
# Mellin transforms as evaluators
# ---------------------------------------------------------------------------

Transformable = Union[RadialSymbol, GammaRatioTransform, "MellinTransform", str, int, float]


class MellinTransform:
    """Sum of a closed-form part and Gamma-ratio parts, evaluable for z >= 2.

    ``variant`` is "closed" when a radial-symbol witness exists (directly or
    through partial fractions), otherwise "gamma".
    """

    def __init__(self, closed: RadialSymbol | None = None,
                 gammas: Iterable[GammaRatioTransform] = ()):
        self.closed = closed if closed is not None else RadialSymbol()
        self.gammas = tuple(gammas)
        self._cache: dict[float, float] = {}

    @classmethod
    def of(cls, obj: Transformable) -> "MellinTransform":
        if isinstance(obj, MellinTransform):
            return obj
        if isinstance(obj, RadialSymbol):
            return cls(closed=obj)
        if isinstance(obj, GammaRatioTransform):
            return cls(gammas=(obj,))
        if isinstance(obj, str):
            return cls(closed=parse_symbol(obj))
        if isinstance(obj, (int, float, Fraction)):
            return cls(closed=RadialSymbol.constant(float(obj)))
        raise TypeError(f"cannot build a Mellin transform from {type(obj).__name__}")

    def __call__(self, z: float) -> float:
        hit = self._cache.get(z)
        if hit is None:
            hit = self.closed.mellin(z) + sum(gamma_ratio_eval(g, z) for g in self.gammas)
            self._cache[z] = hit
        return hit

    @cached_property
    def witness(self) -> RadialSymbol | None:
        total = self.closed
        for g in self.gammas:
            inv = gamma_ratio_to_partial_fractions(g)
            if isinstance(inv, NotRational):
                return None
            total = total + inv
        return total

    @property
    def variant(self) -> str:
        return "closed" if self.witness is not None else "gamma"

    def poles(self, lo: float = 2.0, hi: float = math.inf) -> list[float]:
        return sorted({z for g in self.gammas for z in g.poles(lo, hi)})

    def __add__(self, other):
        other = MellinTransform.of(other)
        return MellinTransform(self.closed + other.closed, self.gammas + other.gammas)

    __radd__ = __add__

    def __mul__(self, c):
        if not isinstance(c, (int, float, Fraction)):
            return NotImplemented
        return MellinTransform(self.closed * c, tuple(g.scaled(float(c)) for g in self.gammas))

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def __sub__(self, other):
        return self + (-MellinTransform.of(other))

    def ratio_to(self, other: "MellinTransform", points=range(2, 14), tol: float = 1e-9) -> float | None:
        """C with self == C * other on sample points, or None."""
        ratio = None
        for z in points:
            a, b = self(z), other(z)
            if abs(b) <= 1e-300:
                if abs(a) > 1e-300:
                    return None
                continue
            q = a / b
            if ratio is None:
                ratio = q
            elif abs(q - ratio) > tol * max(1.0, abs(ratio)):
                return None
        return ratio

    def to_json(self) -> dict:
        w = self.witness
        return {"variant": self.variant,
                "symbol": w.to_json() if w is not None else None,
                "gamma": [g.to_json() for g in self.gammas]}

    def __str__(self) -> str:
        w = self.witness
        if w is not None:
            return str(w)
        parts = [] if self.closed.is_zero else [str(self.closed)]
        parts += [f"Gamma-ratio{g.to_json()}" for g in self.gammas]
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"MellinTransform({str(self)!r})"


def mellin_of_symbol(sym: RadialSymbol) -> MellinTransform:
    return MellinTransform(closed=sym)


# ---------------------------------------------------------------------------
# T-function case classifiers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TFunctionCase:
    """Which condition makes the Gamma-ratio family a T-function.

    family "phi" is the commutator family, "psi" the generalized
    semicommutator family; case is 1, 2, 3 or None.
    """

    family: str
    k1: int
    k2: int
    m: float
    case: int | None
    n: int | None = None

    def __bool__(self) -> bool:
        return self.case is not None


_FAMILY_ALIASES = {"phi": "phi", "harmonic": "phi", "psi": "psi", "bergman-psi": "psi", "bergman": "psi"}


def odd_multiple_index(m: float, k: int) -> int | None:
    """n >= 0 with m == (2n+1) k, or None."""
    q = (m / k - 1.0) / 2.0
    if is_integer(q) and round(q) >= 0:
        return int(round(q))
    return None


def t_function_classify(family: str, k1: int, k2: int, m: float) -> TFunctionCase:
    fam = _FAMILY_ALIASES.get(family.lower())
    if fam is None:
        raise ValueError(f"unknown family {family!r}")
    if k1 <= 0:
        raise ValueError("k1 must be positive")
    if m < -1 - INTEGRALITY_TOL:
        raise ValueError("m must be >= -1")
    shift = 0 if fam == "phi" else -k1      # psi conditions sit k1 lower
    top = m + k1 + 2 if fam == "phi" else m + 2
    if k2 <= -2 + shift and abs(m + k1) <= INTEGRALITY_TOL:
        return TFunctionCase(fam, k1, k2, m, 1)
    if -2 + shift < k2 < top:
        return TFunctionCase(fam, k1, k2, m, 2)
    if k2 >= top:
        n = odd_multiple_index(m, k1)
        if n is not None:
            return TFunctionCase(fam, k1, k2, m, 3, n)
    return TFunctionCase(fam, k1, k2, m, None)


def family_transform(family: str, k1: int, k2: int, m: float) -> GammaRatioTransform:
    fam = _FAMILY_ALIASES[family.lower()]
    if fam == "phi":
        return GammaRatioTransform.commutator_family(k1, k2, m)
    return GammaRatioTransform.gensemi_family(k1, k2, m)


# ---------------------------------------------------------------------------
# Monotonicity of the Gamma quotients F and G
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MonotonicityCertificate:
    kind: str
    a: float
    b: float
    interval: tuple[float, float]
    samples: int
    direction: str                 # "increasing" or "decreasing"
    passed: bool
    violation: tuple[float, float] | None = None
    derivative_ok: bool = True

    def __bool__(self) -> bool:
        return self.passed


def _log_F(x, a, b):
    return special.gammaln(x) + special.gammaln(x + b - a) - special.gammaln(x - a) - special.gammaln(x + b)


def _dlog_F(x, a, b):
    return special.digamma(x) + special.digamma(x + b - a) - special.digamma(x - a) - special.digamma(x + b)


def _log_G(x, a, b):
    y = -x
    return (special.gammaln(y + a) + special.gammaln(y + b + 1)
            - special.gammaln(y + 1) - special.gammaln(y + b + a))


def _dlog_G(x, a, b):
    y = -x
    return -(special.digamma(y + a) + special.digamma(y + b + 1)
             - special.digamma(y + 1) - special.digamma(y + b + a))


def monotonicity_certificate(kind: str, params: tuple[float, float],
                             interval: tuple[float, float], samples: int = 200) -> MonotonicityCertificate:
    """Check strict monotonicity of F or G on a sample grid.

    F(x) = G(x)G(x+b-a) / (G(x-a)G(x+b)): increasing on (a, inf) for a > 0,
    decreasing on (0, inf) for a < 0.
    G(x) = G(-x+a)G(-x+b+1) / (G(-x+1)G(-x+b+a)): increasing on (-inf, a)
    for 0 < a < 1, decreasing on (-inf, 1) for a > 1.
    (G inside the formulas is the Gamma function.)
    """
    a, b = map(float, params)
    lo, hi = map(float, interval)
    if not b > 0:
        raise ValueError("b must be positive")
    if not lo < hi:
        raise ValueError("empty interval")
    kind = kind.upper()
    if kind == "F":
        if a > 0:
            direction, ok = "increasing", lo > a
        elif a < 0:
            direction, ok = "decreasing", lo > 0
        else:
            raise ValueError("F is constant when a == 0")
        logf, dlogf = _log_F, _dlog_F
    elif kind == "G":
        if 0 < a < 1:
            direction, ok = "increasing", hi < a
        elif a > 1:
            direction, ok = "decreasing", hi < 1
        else:
            raise ValueError("G needs a in (0, 1) or a > 1")
        logf, dlogf = _log_G, _dlog_G
    else:
        raise ValueError(f"unknown kind {kind!r}")
    if not ok:
        raise ValueError("interval outside the monotonicity domain")
    xs = np.linspace(lo, hi, samples)
    vals = logf(xs, a, b)
    steps = np.diff(vals)
    sign = 1.0 if direction == "increasing" else -1.0
    bad = np.nonzero(sign * steps <= 0)[0]
    deriv_ok = bool(np.all(sign * dlogf(xs, a, b) > 0))
    violation = (float(xs[bad[0]]), float(xs[bad[0] + 1])) if bad.size else None
    return MonotonicityCertificate(kind, a, b, (lo, hi), samples, direction,
                                   passed=violation is None and deriv_ok,
                                   violation=violation, derivative_ok=deriv_ok)
