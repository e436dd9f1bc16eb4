"""Executable classification theorems for commutators and generalized semicommutators.

Each classifier takes the degrees and the exponent of the distinguished
monomial r^m, decides which finite-rank condition holds, builds the symbols
that condition requires and predicts rank, range and (where the theory pins
it down) the canonical coefficients. ``cross_validate`` then builds the
operators and compares the prediction with what the coefficient maps say.

Degrees with k1 < 0 are reduced to k1 > 0 by taking adjoints: the radial
symbols are unchanged and only the sign of k2 flips.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable

from .mellin import (INTEGRALITY_TOL, GammaRatioTransform, MellinTransform, RadialSymbol,
                     SymbolError, Transformable, mellin_convolve, odd_multiple_index,
                     t_function_classify)
from .operators import DEFAULT_MARGIN, QHOperator, commutator_map, gen_semicommutator_map
from .rank import (DEFAULT_TOL, RankReport, detect_rank, pairing_check, rank_bound,
                   rank_equivalence_check, svd_rank, symmetry_check)
from .support import BERGMAN, COMMUTATOR, GENSEMI, HARMONIC, SupportWindow

H_COMMUTE = "h-commute"
H_GENSEMI = "h-gensemi"
B_COMMUTE = "b-commute"
B_GENSEMI = "b-gensemi"

#: stands in for "any radial phi" when a condition places no constraint on it
REPRESENTATIVE_PHI = RadialSymbol.parse("1 + r^2")

_ANY = None


def _zero(x: float) -> bool:
    return abs(x) <= INTEGRALITY_TOL


def _mono(p: float, c: float = 1.0) -> MellinTransform:
    return MellinTransform.of(RadialSymbol.monomial(p, c))


def _normalize(k1: int, k2: int) -> tuple[int, int]:
    """(|k1|, sign(k1) k2): the degrees seen after taking adjoints."""
    return abs(k1), (k2 if k1 > 0 else -k2)


def _cgk(k1: int, k2: int, m: float) -> MellinTransform:
    a, b = _normalize(k1, k2)
    return MellinTransform.of(GammaRatioTransform.commutator_family(a, b, m))


def _psigk(k1: int, k2: int, m: float) -> MellinTransform:
    a, b = _normalize(k1, k2)
    return MellinTransform.of(GammaRatioTransform.gensemi_family(a, b, m))


def commutator_rank_formula(k1: int, k2: int) -> int:
    s = abs(k1) + abs(k2)
    return s - 1 if (k1 + k2) % 2 else s - 2


def gensemi_rank_formula(k1: int, k2: int) -> int:
    return max(abs(k1) - 1, abs(k2) - 1, abs(k1 + k2) - 1)


# ---------------------------------------------------------------------------
# Verdicts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Condition:
    """One finite-rank condition: the phi it forces (None = any) and how psi follows.

    psi maps the template phi to its psi; both scale together, so a given
    phi = C * template needs C * psi(template).
    """

    number: int
    phi: MellinTransform | None
    psi: Callable[[MellinTransform], MellinTransform] | None = None
    rank: int = 0
    range: frozenset | None = None
    canonical: Callable[[MellinTransform], dict] | None = None


@dataclass(frozen=True)
class TheoremVerdict:
    theorem: str
    params: dict
    conditions: tuple[int, ...]
    space: str
    kind: str
    factors: tuple | None                  # ((k1, MellinTransform), (k2, MellinTransform))
    psi: MellinTransform | None = None
    predicted_rank: int | None = None      # None means not finite rank
    predicted_range: frozenset | None = None
    predicted_canonical: dict | None = None
    notes: tuple[str, ...] = ()
    rank_is_bound: bool = False            # predicted_rank is an upper bound only

    @property
    def principal(self) -> int | None:
        return self.conditions[0] if self.conditions else None

    @property
    def finite(self) -> bool:
        return self.predicted_rank is not None

    @property
    def constructible(self) -> bool:
        return self.factors is not None

    @property
    def phi(self) -> MellinTransform | None:
        return self.factors[1][1] if self.factors else None

    def scaled(self, c: float) -> "TheoremVerdict":
        """Scale phi (and psi) by c; canonical coefficients scale with them."""
        if not self.factors:
            return self
        (a, f1), (b, f2) = self.factors
        canon = None
        if self.predicted_canonical is not None:
            canon = {i: c * v for i, v in self.predicted_canonical.items()}
        return replace(self, factors=((a, f1), (b, f2 * c)),
                       psi=None if self.psi is None else self.psi * c,
                       predicted_canonical=canon)

    def with_phi(self, phi: Transformable) -> "TheoremVerdict":
        (a, f1), (b, _) = self.factors
        return replace(self, factors=((a, f1), (b, MellinTransform.of(phi))))

    def to_json(self) -> dict:
        out = {"theorem": self.theorem, "params": self.params,
               "conditions": list(self.conditions), "principal": self.principal,
               "space": self.space, "kind": self.kind,
               "predicted_rank": self.predicted_rank if self.finite else "not finite",
               "predicted_range": sorted(self.predicted_range) if self.predicted_range is not None else None,
               "predicted_canonical": ({str(k): v for k, v in sorted(self.predicted_canonical.items())}
                                       if self.predicted_canonical is not None else None),
               "notes": list(self.notes)}
        if self.rank_is_bound:
            out["rank_is_bound"] = True
        if self.factors:
            out["factors"] = [{"degree": k, "symbol": str(f)} for k, f in self.factors]
        if self.psi is not None:
            out["psi"] = str(self.psi)
        return out


def _verdict(theorem: str, params: dict, space: str, kind: str, conds: list[Condition],
             first: Transformable, k1: int, k2: int, notes=()) -> TheoremVerdict:
    if not conds:
        return TheoremVerdict(theorem, params, (), space, kind, None,
                              notes=tuple(notes) + ("no condition holds; no admissible phi",))
    c = conds[0]
    phi = c.phi if c.phi is not None else MellinTransform.of(REPRESENTATIVE_PHI)
    psi = c.psi(phi) if c.psi is not None else None
    canon = c.canonical(phi) if c.canonical is not None else None
    if c.phi is None:
        notes = tuple(notes) + ("phi unconstrained; representative 1 + r^2 used",)
    return TheoremVerdict(theorem, params, tuple(x.number for x in conds), space, kind,
                          ((k1, MellinTransform.of(first)), (k2, phi)), psi,
                          c.rank, c.range, canon, tuple(notes))


def _m_notes(m: float) -> tuple[str, ...]:
    return ("boundary exponent m = -1",) if _zero(m + 1) else ()


def _check_m(m: float):
    if m < -1 - INTEGRALITY_TOL:
        raise ValueError("m must be >= -1")


# ---------------------------------------------------------------------------
# Harmonic Bergman space
# ---------------------------------------------------------------------------


def h_commutator_conditions(k1: int, k2: int, m: float) -> list[Condition]:
    _check_m(m)
    W = SupportWindow(k1, k2)
    out = []
    if k1 == 0 and _zero(m):
        out.append(Condition(1, _ANY))
    if k2 == 0:
        out.append(Condition(2, MellinTransform.of(1.0)))
    if k1 == 0 and k2 == 0:
        out.append(Condition(3, _ANY))
    if k1 == k2 != 0:
        out.append(Condition(4, _mono(m)))
    if k1 * k2 == -1:
        out.append(Condition(5, MellinTransform.of(
            RadialSymbol((((m + 1) / 2, -1, 0), (-(m - 1) / 2, 1, 0))))))
    big = commutator_rank_formula(k1, k2)
    if k1 * k2 < -1:
        if abs(k2) >= 2 and _zero(m + abs(k1)):
            out.append(Condition(6, _mono(abs(k2)), rank=big, range=W.Lambda1))
        if abs(k2) == 1:
            out.append(Condition(7, _cgk(k1, k2, m), rank=big, range=W.Lambda1))
    if k1 * k2 > 0 and k1 != k2:
        if abs(k2) < m + abs(k1) + 2:
            out.append(Condition(8, _cgk(k1, k2, m), rank=big, range=W.Lambda1))
        elif odd_multiple_index(m, abs(k1)) is not None:
            out.append(Condition(9, _cgk(k1, k2, m), rank=big, range=W.Lambda1))
    return out


def classify_h_commutator(k1: int, k2: int, m: float) -> TheoremVerdict:
    """Finite-rank classification of [T_{e^{ik1 t} r^m}, T_{e^{ik2 t} phi}] on L2h."""
    conds = h_commutator_conditions(k1, k2, m)
    notes = list(_m_notes(m))
    if not conds and k1 * k2 != 0 and abs(k1) != abs(k2):
        a, b = _normalize(k1, k2)
        notes.append(f"Gamma-ratio phi is not a T-function (case {t_function_classify('phi', a, b, m).case})")
    return _verdict(H_COMMUTE, {"k1": k1, "k2": k2, "m": m}, HARMONIC, COMMUTATOR,
                    conds, _mono(m), k1, k2, notes)


def _gensemi_cond3(m: float):
    def psi(phi: MellinTransform) -> MellinTransform:
        w = phi.witness
        if w is None:
            raise SymbolError("the integral formula needs a power/log symbol")
        return MellinTransform.of(w - m * mellin_convolve(RadialSymbol.monomial(m), w))
    return psi


def h_gensemi_conditions(k1: int, k2: int, m: float) -> list[Condition]:
    _check_m(m)
    W = SupportWindow(k1, k2)
    big = gensemi_rank_formula(k1, k2)
    out = []
    if k1 == 0 and _zero(m):
        out.append(Condition(1, _ANY, psi=lambda phi: phi))
    if k2 == 0:
        out.append(Condition(2, MellinTransform.of(1.0), psi=lambda phi, m=m: phi * 0 + _mono(m)))
    if k1 == 0 and k2 == 0:
        out.append(Condition(3, _ANY, psi=_gensemi_cond3(m)))
    if k1 * k2 == -1:
        out.append(Condition(4, MellinTransform.of(
            RadialSymbol((((m + 1) / 2, -1, 0), (-(m - 1) / 2, 1, 0)))),
            psi=lambda phi: MellinTransform.of(1.0)))
    if k1 * k2 < -1:
        if abs(k2) >= 2 and _zero(m + abs(k1)):
            out.append(Condition(5, _mono(abs(k2)), psi=lambda phi, p=abs(k2) - 1: _mono(p),
                                 rank=big, range=W.Lambda2))
        if abs(k2) == 1:
            out.append(Condition(6, _cgk(k1, k2, m), psi=lambda phi: _psigk(k1, k2, m),
                                 rank=big, range=W.Lambda2))
    if k1 * k2 > 0:
        if abs(k2) < m + 2:
            out.append(Condition(7, _cgk(k1, k2, m), psi=lambda phi: _psigk(k1, k2, m),
                                 rank=big, range=W.Lambda2))
        elif odd_multiple_index(m, abs(k1)) is not None:
            out.append(Condition(8, _cgk(k1, k2, m), psi=lambda phi: _psigk(k1, k2, m),
                                 rank=big, range=W.Lambda2))
    return out


def classify_h_gensemi(k1: int, k2: int, m: float) -> TheoremVerdict:
    """Finite-rank classification of T_{e^{ik1 t} r^m} T_{e^{ik2 t} phi} - T_{e^{i(k1+k2) t} psi} on L2h."""
    conds = h_gensemi_conditions(k1, k2, m)
    return _verdict(H_GENSEMI, {"k1": k1, "k2": k2, "m": m}, HARMONIC, GENSEMI,
                    conds, _mono(m), k1, k2, _m_notes(m))


# ---------------------------------------------------------------------------
# Bergman space
# ---------------------------------------------------------------------------


def _b_commutator_canonical(k1: int, k2: int, m: float, number: int):
    """Rank-one form C z^a (x) z^b of the commutator, returned as {a: C}.

    Computed for k1 > 0 and carried back through [A, B] = -([A*, B*])*.
    """
    a1, b2 = _normalize(k1, k2)

    def canon(phi: MellinTransform) -> dict:
        if number == 6:
            # only z^n, n = -k2-1, survives: -T2 T1 z^n, weighted by n+1
            c = -(-b2) * 4 * (1 - b2) * phi(2 - b2) / (1 - 2 * b2 + m)
            index, source = 0, -b2 - 1
        else:
            c = -4 * a1 * (a1 + 1) * phi(2 * a1 + 1) / (a1 + 2 + m)
            index, source = a1 - 1, 0
        if k1 > 0:
            return {index: c}
        return {source: -c}

    return canon


def b_commutator_conditions(k1: int, k2: int, m: float) -> list[Condition]:
    _check_m(m)
    out = []
    if k1 == 0 and _zero(m):
        out.append(Condition(1, _ANY))
    if k2 == 0:
        out.append(Condition(2, MellinTransform.of(1.0)))
    if k1 == 0 and k2 == 0:
        out.append(Condition(3, _ANY))
    if k1 * k2 > 0:
        if abs(k2) < m + abs(k1) + 2:
            out.append(Condition(4, _cgk(k1, k2, m)))
        elif odd_multiple_index(m, abs(k1)) is not None:
            out.append(Condition(5, _cgk(k1, k2, m)))
    rng = frozenset({max(k1, k2) - 1})
    if k1 * k2 < 0:
        if abs(k2) >= 2 and _zero(m + abs(k1)):
            out.append(Condition(6, _mono(abs(k2)), rank=1, range=rng,
                                 canonical=_b_commutator_canonical(k1, k2, m, 6)))
        if abs(k2) == 1:
            out.append(Condition(7, _cgk(k1, k2, m), rank=1, range=rng,
                                 canonical=_b_commutator_canonical(k1, k2, m, 7)))
    return out


def classify_b_commutator(k1: int, k2: int, m: float) -> TheoremVerdict:
    """Finite-rank classification of [T_{e^{ik1 t} r^m}, T_{e^{ik2 t} phi}] on L2a."""
    conds = b_commutator_conditions(k1, k2, m)
    return _verdict(B_COMMUTE, {"k1": k1, "k2": k2, "m": m}, BERGMAN, COMMUTATOR,
                    conds, _mono(m), k1, k2, _m_notes(m))


def bergman_psi(k1: int, m: float, k2: int, phi: RadialSymbol | str) -> RadialSymbol:
    """psi(r) = phi(r)/r^k1 - (m+k1) r^(m+k2) int_r^1 phi(t) t^-(m+k1+k2+1) dt, termwise."""
    if isinstance(phi, str):
        phi = RadialSymbol.parse(phi)
    a = m + k1
    q = m + k1 + k2
    out = []
    for c, p, e in phi.terms:
        s = p - q
        if e == 0:
            if _zero(s):
                out += [(c, p - k1, 0), (c * a, m + k2, 1)]
            else:
                out += [(c * (1 + a / s), p - k1, 0), (-c * a / s, m + k2, 0)]
        else:
            if _zero(s):
                if _zero(a):
                    out.append((c, p - k1, 1))
                    continue
                raise SymbolError("log^2 term would be needed (log phi term with s = 0)")
            out += [(c * (1 + a / s), p - k1, 1), (c * a / s ** 2, m + k2, 0),
                    (-c * a / s ** 2, p - k1, 0)]
    return RadialSymbol(tuple(out))


@dataclass(frozen=True)
class MonomialConditions:
    """Which T-function conditions the psi of T_{r^m1} T_{r^m2} - T_psi meets."""

    conditions: tuple[int, ...]
    rank: int | None
    range: frozenset | None
    bullet: int | None


def bergman_monomial_conditions(k1: int, m1: float, k2: int, m2: float) -> MonomialConditions:
    _check_m(m1)
    _check_m(m2)
    c = []
    if not _zero(k1 + m1) and not _zero(k2 - m2) and m1 + k2 >= -1 - INTEGRALITY_TOL \
            and m2 - k1 >= -1 - INTEGRALITY_TOL:
        c.append(1)
    if _zero(k1 + m1) and m2 - k1 >= -1 - INTEGRALITY_TOL:
        c.append(2)
    if _zero(k2 - m2) and m1 + k2 >= -1 - INTEGRALITY_TOL:
        c.append(3)
    if not c:
        return MonomialConditions((), None, None, None)
    K = k1 + k2
    if K >= 0 and k2 <= -2 and 1 in c:
        return MonomialConditions(tuple(c), -k2 - 1, frozenset(range(K, k1 - 1)), 1)
    if K >= 0 and k2 == -1 and (2 in c or 3 in c):
        return MonomialConditions(tuple(c), 1, frozenset({k1 - 1}), 2)
    if K < 0 and k1 >= 2 and 1 in c:
        return MonomialConditions(tuple(c), k1 - 1, frozenset(range(0, k1 - 1)), 3)
    if K < 0 and k1 == 1 and 2 in c:
        return MonomialConditions(tuple(c), 1, frozenset({0}), 4)
    return MonomialConditions(tuple(c), 0, frozenset(), None)


def classify_b_gensemi(k1: int, m1: float, k2: int, m2: float) -> TheoremVerdict:
    """T_{e^{ik1 t} r^m1} T_{e^{ik2 t} r^m2} - T_{e^{i(k1+k2) t} psi} on L2a."""
    mc = bergman_monomial_conditions(k1, m1, k2, m2)
    params = {"k1": k1, "m1": m1, "k2": k2, "m2": m2}
    notes = list(_m_notes(m1))
    try:
        psi = bergman_psi(k1, m1, k2, RadialSymbol.monomial(m2))
    except SymbolError as exc:
        return TheoremVerdict(B_GENSEMI, params, (), BERGMAN, GENSEMI, None,
                              notes=tuple(notes) + (f"psi not constructible: {exc}",))
    factors = ((k1, _mono(m1)), (k2, _mono(m2)))
    if not mc.conditions:
        notes.append("psi is not a T-function")
        return TheoremVerdict(B_GENSEMI, params, (), BERGMAN, GENSEMI, None, notes=tuple(notes))
    if mc.bullet is not None:
        notes.append(f"nonzero-rank case {mc.bullet}")
    return TheoremVerdict(B_GENSEMI, params, mc.conditions, BERGMAN, GENSEMI, factors,
                          MellinTransform.of(psi), mc.rank, mc.range, None, tuple(notes))


# ---------------------------------------------------------------------------
# Symbol-level classification
# ---------------------------------------------------------------------------

_CONDITIONS = {H_COMMUTE: (h_commutator_conditions, HARMONIC, COMMUTATOR),
               H_GENSEMI: (h_gensemi_conditions, HARMONIC, GENSEMI),
               B_COMMUTE: (b_commutator_conditions, BERGMAN, COMMUTATOR)}


def _match(given: MellinTransform, template: MellinTransform) -> float | None:
    c = given.ratio_to(template)
    return c if c is not None and abs(c) > 1e-12 else None


def classify_symbols(theorem: str, k1: int, k2: int, m: float, phi: Transformable,
                     psi: Transformable | None = None) -> TheoremVerdict:
    """Verdict for the concrete pair (r^m, phi) (and psi): finite iff some condition matches."""
    conds_fn, space, kind = _CONDITIONS[theorem]
    phi = MellinTransform.of(phi)
    psi = None if psi is None else MellinTransform.of(psi)
    hits = []
    for c in conds_fn(k1, k2, m):
        if c.phi is None:
            ratio = 1.0
        else:
            ratio = _match(phi, c.phi)
            if ratio is None:
                continue
        if kind == GENSEMI:
            if psi is None:
                raise ValueError("psi required")
            try:
                want = c.psi(phi) if c.phi is None else c.psi(c.phi) * ratio
            except SymbolError:
                continue
            if psi.ratio_to(want) is None or abs(psi.ratio_to(want) - 1.0) > 1e-9:
                continue
        hits.append((c, ratio))
    params = {"k1": k1, "k2": k2, "m": m}
    factors = ((k1, _mono(m)), (k2, phi))
    if not hits:
        return TheoremVerdict(theorem, params, (), space, kind, factors, psi,
                              notes=("given symbols meet no condition",))
    c, ratio = hits[0]
    canon = None
    if c.canonical is not None:
        canon = c.canonical(phi)
    return TheoremVerdict(theorem, params, tuple(h.number for h, _ in hits), space, kind,
                          factors, psi, c.rank, c.range, canon)


# ---------------------------------------------------------------------------
# Corollaries
# ---------------------------------------------------------------------------

COROLLARIES = ("cradial-a", "cradial-b", "cradial-c", "commonial-a", "commonial-b", "comr",
               "pradial-a", "pradial-b", "semianaly-a", "semianaly-b", "semimono", "semicom",
               "b-commonial-a", "b-commonial-b", "b-comr")


_ZERO_COROLLARIES = ("cradial-a", "cradial-b", "cradial-c", "pradial-a", "pradial-b")


def _cor(which, params, space, kind, finite, factors, psi=None, conds=(), notes=()):
    """Radial corollaries say the operator is zero; the rest only bound the rank."""
    base = which[2:] if which.startswith("b-") else which
    zero = base in _ZERO_COROLLARIES
    rank = rng = None
    if finite:
        k1, k2 = factors[0][0], factors[1][0]
        rank = 0 if zero else rank_bound(space, kind, k1, k2)
        rng = frozenset() if zero else None
    return TheoremVerdict(f"cor-{which}", params, tuple(conds), space, kind, factors,
                          None if psi is None else MellinTransform.of(psi), rank, rng, None,
                          tuple(notes), rank_is_bound=finite and not zero)


def _finite_rank_generic(theorem, k1, k2, m, phi, psi=None):
    return classify_symbols(theorem, k1, k2, m, phi, psi)


def classify_corollary(which: str, **p) -> TheoremVerdict:
    """Evaluate one corollary's iff-conditions for concrete symbols.

    cradial-a: k, phi1, phi2        [T_phi1, T_{e^{ik t} phi2}]
    cradial-b: k, phi1, phi2        [T_{e^{ik t} phi1}, T_{e^{ik t} phi2}], k != 0
    cradial-c: k, phi1, phi2        [T_{e^{ik t} phi1}, T_{e^{-ik t} phi2}], k != 0
    commonial-a/b: k1, k2, phi      [T_{e^{+-ik1 t} r^k1}, T_{e^{ik2 t} phi}]
    comr: k1, m1, k2, m2            [T_{e^{ik1 t} r^m1}, T_{e^{ik2 t} r^m2}]
    pradial-a: k, phi1, phi2, psi   T_phi1 T_{e^{ik t} phi2} - T_{e^{ik t} psi}
    pradial-b: k, phi1, phi2, psi   T_{e^{ik t} phi1} T_{e^{-ik t} phi2} - T_psi
    semianaly-a/b: k1, k2, phi, psi
    semimono: k1, m1, k2, m2, psi
    semicom: k1, k2, m, phi         semicommutator (psi = r^m phi)
    b-*: Bergman analogues of commonial and comr
    """
    space = BERGMAN if which.startswith("b-") else HARMONIC
    base = which[2:] if which.startswith("b-") else which
    sym = lambda x: MellinTransform.of(x)  # noqa: E731
    one = RadialSymbol.constant(1.0)

    if base == "cradial-a":
        k, f1, f2 = p["k"], sym(p["phi1"]), sym(p["phi2"])
        const = f1.witness is not None and f1.witness.is_constant
        return _cor(which, {"k": k}, space, COMMUTATOR, k == 0 or const, ((0, f1), (k, f2)))
    if base == "cradial-b":
        k, f1, f2 = p["k"], sym(p["phi1"]), sym(p["phi2"])
        if k == 0:
            raise ValueError("k must be nonzero")
        return _cor(which, {"k": k}, space, COMMUTATOR, f1.ratio_to(f2) is not None, ((k, f1), (k, f2)))
    if base == "cradial-c":
        k, f1, f2 = p["k"], sym(p["phi1"]), sym(p["phi2"])
        if k == 0:
            raise ValueError("k must be nonzero")
        target = MellinTransform.of(mellin_convolve(RadialSymbol.monomial(1), RadialSymbol.monomial(-1)))
        prod = MellinTransform.of(mellin_convolve(f1.witness, f2.witness)) if (
            f1.witness is not None and f2.witness is not None) else None
        ok = abs(k) == 1 and prod is not None and prod.ratio_to(target) is not None
        return _cor(which, {"k": k}, space, COMMUTATOR, ok, ((k, f1), (-k, f2)))
    if base in ("commonial-a", "commonial-b"):
        k1, k2, f = p["k1"], p["k2"], sym(p["phi"])
        if not (k1 > 0 or k1 == -1):
            raise ValueError("needs k1 > 0 or k1 = -1")
        if base == "commonial-a":
            ok = k2 > -2 and f.ratio_to(_mono(k2)) is not None
            factors = ((k1, _mono(k1)), (k2, f))
        else:
            ok = k2 < 2 and f.ratio_to(_mono(-k2)) is not None
            factors = ((-k1, _mono(k1)), (k2, f))
        return _cor(which, {"k1": k1, "k2": k2}, space, COMMUTATOR, ok, factors)
    if base == "comr":
        k1, m1, k2, m2 = p["k1"], p["m1"], p["k2"], p["m2"]
        if k1 * k2 == 0:
            raise ValueError("needs k1 k2 != 0")
        conds = [i for i, ok in ((1, k1 == k2 and _zero(m1 - m2)), (2, _zero(k1 - m1) and _zero(k2 - m2)),
                                 (3, _zero(k1 + m1) and _zero(k2 + m2))) if ok]
        return _cor(which, {"k1": k1, "m1": m1, "k2": k2, "m2": m2}, space, COMMUTATOR, bool(conds),
                    ((k1, _mono(m1)), (k2, _mono(m2))), conds=conds)
    if base == "pradial-a":
        k, f1, f2, ps = p["k"], sym(p["phi1"]), sym(p["phi2"]), sym(p["psi"])
        if f1.witness is not None and f1.witness.is_constant:
            raise ValueError("phi1 must be nonconstant")
        ok = False
        if k == 0 and all(x.witness is not None for x in (f1, f2, ps)):
            lhs = MellinTransform.of(mellin_convolve(one, ps.witness))
            rhs = MellinTransform.of(mellin_convolve(f1.witness, f2.witness))
            c = lhs.ratio_to(rhs)
            ok = c is not None and abs(c - 1) < 1e-9
        return _cor(which, {"k": k}, space, GENSEMI, ok, ((0, f1), (k, f2)), ps)
    if base == "pradial-b":
        k, f1, f2, ps = p["k"], sym(p["phi1"]), sym(p["phi2"]), sym(p["psi"])
        if k == 0:
            raise ValueError("k must be nonzero")
        ok = False
        if abs(k) == 1 and f1.witness is not None and f2.witness is not None:
            prod = MellinTransform.of(mellin_convolve(f1.witness, f2.witness))
            target = MellinTransform.of(mellin_convolve(RadialSymbol.monomial(1), RadialSymbol.monomial(-1)))
            c = prod.ratio_to(target)
            pc = ps.ratio_to(MellinTransform.of(1.0))
            ok = c is not None and pc is not None and abs(c - pc) <= 1e-9 * max(1, abs(c))
        return _cor(which, {"k": k}, space, GENSEMI, ok, ((k, f1), (-k, f2)), ps)
    if base in ("semianaly-a", "semianaly-b"):
        k1, k2, f, ps = p["k1"], p["k2"], sym(p["phi"]), sym(p["psi"])
        if not (k1 > 0 or k1 == -1):
            raise ValueError("needs k1 > 0 or k1 = -1")
        if base == "semianaly-a":
            c = f.ratio_to(_mono(k2)) if k2 > -2 else None
            ok = k2 > max(-2, -k1 - 2) and c is not None and _eq(ps.ratio_to(_mono(k1 + k2)), c)
            factors = ((k1, _mono(k1)), (k2, f))
        else:
            c = f.ratio_to(_mono(-k2)) if k2 < 2 else None
            ok = k2 < min(2, k1 + 2) and c is not None and _eq(ps.ratio_to(_mono(k1 - k2)), c)
            factors = ((-k1, _mono(k1)), (k2, f))
        return _cor(which, {"k1": k1, "k2": k2}, space, GENSEMI, ok, factors, ps)
    if base == "semimono":
        k1, m1, k2, m2, ps = p["k1"], p["m1"], p["k2"], p["m2"], sym(p["psi"])
        if k1 * k2 == 0:
            raise ValueError("needs k1 k2 != 0")
        conds = []
        a = abs(k1)
        if k1 == k2 and _zero(m1 - m2) and a < m1 + 2:
            want = MellinTransform.of(RadialSymbol((((m1 + a) / (2 * a), m1 + a, 0),
                                                    (-(m1 - a) / (2 * a), m1 - a, 0))))
            if _eq(ps.ratio_to(want), 1.0):
                conds.append(1)
        if _zero(k1 - m1) and _zero(k2 - m2) and k1 + k2 != -2 and _eq(ps.ratio_to(_mono(k1 + k2)), 1.0):
            conds.append(2)
        if _zero(k1 + m1) and _zero(k2 + m2) and k1 + k2 != 2 and _eq(ps.ratio_to(_mono(-k1 - k2)), 1.0):
            conds.append(3)
        return _cor(which, {"k1": k1, "m1": m1, "k2": k2, "m2": m2}, space, GENSEMI, bool(conds),
                    ((k1, _mono(m1)), (k2, _mono(m2))), ps, conds)
    if base == "semicom":
        k1, k2, m, f = p["k1"], p["k2"], p["m"], sym(p["phi"])
        if k1 * k2 == 0:
            raise ValueError("needs k1 k2 != 0")
        conds = []
        if _zero(m - k1) and k2 > max(-2, -k1 - 2) and _eq(f.ratio_to(_mono(k2)), 1.0):
            conds.append(1)
        if _zero(m + k1) and k2 < min(2, -k1 + 2) and _eq(f.ratio_to(_mono(-k2)), 1.0):
            conds.append(2)
        if f.witness is None:
            raise ValueError("semicommutator needs a power/log phi")
        ps = f.witness * RadialSymbol.monomial(m)
        return _cor(which, {"k1": k1, "k2": k2, "m": m}, space, GENSEMI, bool(conds),
                    ((k1, _mono(m)), (k2, f)), ps, conds)
    raise ValueError(f"unknown corollary {which!r}")


def _eq(x: float | None, y: float | None, tol: float = 1e-9) -> bool:
    return x is not None and y is not None and abs(x - y) <= tol * max(1.0, abs(y))


def corollary_consistency(v: TheoremVerdict) -> bool:
    """Does the generic classifier reach the same finite/not-finite verdict?"""
    which = v.theorem[4:]
    base = which[2:] if which.startswith("b-") else which
    (k1, f1), (k2, f2) = v.factors
    if base in ("commonial-a", "commonial-b", "comr"):
        m = f1.witness.terms[0][1]
        th = B_COMMUTE if which.startswith("b-") else H_COMMUTE
        return classify_symbols(th, k1, k2, m, f2).finite == v.finite
    if base in ("semianaly-a", "semianaly-b", "semimono", "semicom"):
        m = f1.witness.terms[0][1]
        return classify_symbols(H_GENSEMI, k1, k2, m, f2, v.psi).finite == v.finite
    if base == "cradial-a" and f1.witness is not None and f1.witness.is_constant:
        return v.finite
    return True


# ---------------------------------------------------------------------------
# Cross-validation against the operator computation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ValidationReport:
    verdict: TheoremVerdict
    report: RankReport | None
    checks: dict
    passed: bool
    mismatch: str = ""
    svd: int | None = None

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        return {"verdict": self.verdict.to_json(),
                "computed": self.report.to_json() if self.report else None,
                "checks": self.checks, "passed": self.passed, "mismatch": self.mismatch,
                "svd_rank": self.svd}


def operators_for(v: TheoremVerdict, space: str | None = None) -> tuple[QHOperator, QHOperator]:
    space = space or v.space
    (k1, f1), (k2, f2) = v.factors
    return QHOperator.of(space, k1, f1), QHOperator.of(space, k2, f2)


def compute_map(v: TheoremVerdict, space: str | None = None, margin: int = DEFAULT_MARGIN,
                reverse: bool = False):
    T1, T2 = operators_for(v, space)
    if reverse:
        T1, T2 = T2, T1
    if v.kind == COMMUTATOR:
        return commutator_map(T1, T2, margin=margin)
    return gen_semicommutator_map(T1, T2, v.psi, margin=margin)


def compare_canonical(expected: dict, got: dict, rel: float = 1e-9) -> str:
    """'' when the {range index: C} maps agree, else the first difference."""
    for i in sorted(set(expected) | set(got)):
        a, b = expected.get(i), got.get(i)
        if a is None or b is None or abs(a - b) > rel * max(abs(a), abs(b), 1e-300):
            return f"index {i}: expected {a}, computed {b}"
    return ""


def cross_validate(v: TheoremVerdict, margin: int = DEFAULT_MARGIN, tol: float = DEFAULT_TOL,
                   rel: float = 1e-9) -> ValidationReport:
    """Build the operators, compute the map and diff it against the prediction."""
    if not v.constructible:
        return ValidationReport(v, None, {"constructible": False}, False, "no symbols to build")
    M = compute_map(v, margin=margin)
    rep = detect_rank(M, tol=tol)
    checks: dict[str, bool] = {}
    mismatch = ""
    if not v.finite:
        checks["not_finite"] = not rep.finite
        ok = checks["not_finite"]
        return ValidationReport(v, rep, checks, ok, "" if ok else "map vanished on the margin")
    checks["finite"] = rep.finite
    checks["rank"] = rep.rank == v.predicted_rank
    if v.predicted_range is not None:
        checks["range"] = set(rep.range_indices) == set(v.predicted_range)
    checks["range_contained"] = rep.range_ok
    checks["bound"] = rep.bound_ok
    harmonic_comm = v.space == HARMONIC and v.kind == COMMUTATOR
    if harmonic_comm:
        checks["parity"] = bool(rep.parity_ok)
        checks["pairing"] = bool(pairing_check(rep.canonical, tol=1e-9))
        checks["symmetry"] = symmetry_check(M, tol)
    if v.kind == COMMUTATOR and v.finite and v.params.get("k1") is not None and \
            set(v.params) == {"k1", "k2", "m"} and v.predicted_rank:
        if v.space == HARMONIC:
            checks["rank_formula"] = rep.rank == commutator_rank_formula(v.params["k1"], v.params["k2"])
    if v.kind == GENSEMI and v.space == HARMONIC and v.predicted_rank and v.theorem == H_GENSEMI:
        checks["rank_formula"] = rep.rank == gensemi_rank_formula(v.params["k1"], v.params["k2"])
    if v.predicted_canonical is not None:
        mismatch = compare_canonical(v.predicted_canonical, rep.coefficients(), rel)
        checks["canonical"] = not mismatch
    s = svd_rank(M)
    checks["svd_rank"] = s == rep.rank
    ok = all(checks.values())
    if not ok and not mismatch:
        bad = [k for k, x in checks.items() if not x]
        mismatch = f"failed {bad}: predicted rank {v.predicted_rank}, computed {rep.rank}" \
                   f"{'' if rep.finite else ' (not finite at window)'}"
    return ValidationReport(v, rep, checks, ok, mismatch, s)


# ---------------------------------------------------------------------------
# Cross-space relations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CrossSpaceReport:
    params: dict
    harmonic_finite: bool
    bergman_finite: bool
    harmonic_rank: int | None
    bergman_rank: int | None
    passed: bool
    kind: str
    bergman_reverse_finite: bool | None = None
    note: str = ""

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        return {k: (v if not isinstance(v, float) else v) for k, v in self.__dict__.items()}


def cross_space_checks(v: TheoremVerdict, margin: int = DEFAULT_MARGIN,
                       tol: float = DEFAULT_TOL) -> CrossSpaceReport:
    """Run the same symbols on L2h and L2a.

    Commutators: finite on one space iff finite on the other.
    Generalized semicommutators: finite on L2h implies both orderings finite on L2a.
    """
    h = detect_rank(compute_map(v, HARMONIC, margin), tol=tol)
    b = detect_rank(compute_map(v, BERGMAN, margin), tol=tol)
    if v.kind == COMMUTATOR:
        ok = h.finite == b.finite
        return CrossSpaceReport(v.params, h.finite, b.finite, h.rank if h.finite else None,
                                b.rank if b.finite else None, ok, COMMUTATOR)
    br = detect_rank(compute_map(v, BERGMAN, margin, reverse=True), tol=tol)
    ok = (not h.finite) or (b.finite and br.finite)
    return CrossSpaceReport(v.params, h.finite, b.finite, h.rank if h.finite else None,
                            b.rank if b.finite else None, ok, GENSEMI, br.finite)


@dataclass(frozen=True)
class RankGapReport:
    m: float
    harmonic_commutator_rank: int
    harmonic_gensemi_rank: int
    bergman_commutator: dict
    bergman_gensemi: dict
    passed: bool

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        return {"m": self.m, "harmonic_commutator_rank": self.harmonic_commutator_rank,
                "harmonic_gensemi_rank": self.harmonic_gensemi_rank,
                "bergman_commutator": {str(k): v for k, v in self.bergman_commutator.items()},
                "bergman_gensemi": {str(k): v for k, v in self.bergman_gensemi.items()},
                "passed": self.passed}


def rank_gap_check(m: float = 0.0, margin: int = DEFAULT_MARGIN, tol: float = DEFAULT_TOL,
                         rel: float = 1e-12) -> RankGapReport:
    """T_{e^{it} r^m} and T_{e^{-it} phi}, phi = (m+1)/2 r^-1 - (m-1)/2 r.

    On L2h the commutator and T1 T2 - T_1 are zero. On L2a,
    T1 T2 - T_1 = -(1 (x) 1) and T2 T1 = I, so the commutator is -(1 (x) 1)
    as well; both have rank one.
    """
    phi = RadialSymbol((((m + 1) / 2, -1, 0), (-(m - 1) / 2, 1, 0)))
    out = {}
    for space in (HARMONIC, BERGMAN):
        T1, T2 = QHOperator.of(space, 1, RadialSymbol.monomial(m)), QHOperator.of(space, -1, phi)
        out[space] = (detect_rank(commutator_map(T1, T2, margin=margin), tol=tol),
                      detect_rank(gen_semicommutator_map(T1, T2, 1.0, margin=margin), tol=tol))
    hc, hg = out[HARMONIC]
    bc, bg = out[BERGMAN]
    exact = lambda got, want: compare_canonical(want, got, rel) == ""  # noqa: E731
    ok = (hc.finite and hc.rank == 0 and hg.finite and hg.rank == 0
          and bc.finite and bc.rank == 1 and bg.finite and bg.rank == 1
          and exact(bc.coefficients(), {0: -1.0})
          and exact({i: -c for i, c in bg.coefficients().items()}, {0: 1.0}))
    return RankGapReport(m, hc.rank, hg.rank, bc.coefficients(), bg.coefficients(), ok)


# ---------------------------------------------------------------------------
# Grid sweeps and the negative control
# ---------------------------------------------------------------------------

GRID_THEOREMS = (H_COMMUTE, H_GENSEMI, B_COMMUTE, B_GENSEMI, "equivalence", "cross-space")


@dataclass(frozen=True)
class GridSpec:
    k1: tuple[int, ...] = tuple(range(-6, 7))
    k2: tuple[int, ...] = tuple(range(-6, 7))
    m: tuple[float, ...] = tuple(float(x) for x in range(-1, 8))

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        """'k1=-6..6,k2=-6..6,m=-1..7'; single values and ';'-lists also work (m=0;0.5;2)."""
        vals = {}
        for part in filter(None, (p.strip() for p in text.split(","))):
            key, _, rhs = part.partition("=")
            key = key.strip()
            if key not in ("k1", "k2", "m"):
                raise ValueError(f"unknown grid key {key!r}")
            if ".." in rhs:
                lo, hi = rhs.split("..")
                seq = range(int(lo), int(hi) + 1)
            else:
                seq = [float(x) if key == "m" else int(x) for x in rhs.split(";")]
            vals[key] = tuple(float(x) for x in seq) if key == "m" else tuple(int(x) for x in seq)
        return cls(**vals)

    def cells(self):
        for k1 in self.k1:
            for k2 in self.k2:
                for m in self.m:
                    yield k1, k2, m


@dataclass(frozen=True)
class GridCell:
    theorem: str
    params: dict
    conditions: tuple[int, ...]
    predicted_rank: int | None
    computed_rank: int | None
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"theorem": self.theorem, "params": self.params, "conditions": list(self.conditions),
                "predicted_rank": self.predicted_rank, "computed_rank": self.computed_rank,
                "passed": self.passed, "detail": self.detail}


@dataclass(frozen=True)
class GridReport:
    theorem: str
    cells: tuple[GridCell, ...]
    skipped: int

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cells)

    @property
    def failures(self) -> list[GridCell]:
        return [c for c in self.cells if not c.passed]

    def to_json(self, cells: bool = True) -> dict:
        out = {"theorem": self.theorem, "checked": len(self.cells), "skipped": self.skipped,
               "failed": len(self.failures), "passed": self.passed}
        if cells:
            out["cells"] = [c.to_json() for c in self.cells]
        return out


def _cell(theorem, v: TheoremVerdict, r: ValidationReport) -> GridCell:
    comp = r.report.rank if (r.report is not None and r.report.finite) else None
    return GridCell(theorem, v.params, v.conditions, v.predicted_rank, comp, r.passed, r.mismatch)


def verify_grid(theorem: str, grid: GridSpec | None = None, margin: int = DEFAULT_MARGIN,
                tol: float = DEFAULT_TOL, m2_values: tuple[float, ...] | None = None) -> GridReport:
    """Sweep the grid, cross-validating every constructible verdict.

    For the Bergman monomial theorem m plays the role of m1 and m2 runs over
    ``m2_values`` (defaults to the m-range).
    """
    grid = grid or GridSpec()
    cells, skipped = [], 0
    if theorem == B_GENSEMI:
        m2s = m2_values if m2_values is not None else grid.m
        for k1, k2, m in grid.cells():
            for m2 in m2s:
                v = classify_b_gensemi(k1, m, k2, m2)
                if not v.constructible:
                    skipped += 1
                    continue
                cells.append(_cell(theorem, v, cross_validate(v, margin, tol)))
        return GridReport(theorem, tuple(cells), skipped)
    for k1, k2, m in grid.cells():
        if theorem in (H_COMMUTE, H_GENSEMI, B_COMMUTE):
            v = {H_COMMUTE: classify_h_commutator, H_GENSEMI: classify_h_gensemi,
                 B_COMMUTE: classify_b_commutator}[theorem](k1, k2, m)
            if not v.constructible:
                skipped += 1
                continue
            cells.append(_cell(theorem, v, cross_validate(v, margin, tol)))
        elif theorem == "equivalence":
            v = classify_h_gensemi(k1, k2, m)
            if not v.constructible:
                skipped += 1
                continue
            T1, T2 = operators_for(v)
            e = rank_equivalence_check(T1, T2, v.psi, margin, tol)
            cells.append(GridCell(theorem, v.params, v.conditions, v.predicted_rank,
                                  e.ranks[0] if e.ranks else None, e.passed,
                                  f"ranks {e.ranks}, relation {e.relation_ok}"))
        elif theorem == "cross-space":
            for v in (classify_h_commutator(k1, k2, m), classify_h_gensemi(k1, k2, m)):
                if not v.constructible:
                    skipped += 1
                    continue
                c = cross_space_checks(v, margin, tol)
                cells.append(GridCell(f"cross-space/{v.kind}", v.params, v.conditions,
                                      v.predicted_rank, c.harmonic_rank, c.passed,
                                      f"L2h finite {c.harmonic_finite}, L2a finite {c.bergman_finite}"
                                      + ("" if c.bergman_reverse_finite is None
                                         else f", L2a reversed finite {c.bergman_reverse_finite}")))
                if v.kind == COMMUTATOR and v.finite and v.phi.witness is not None:
                    bumped = v.with_phi(v.phi.witness + RadialSymbol.monomial(m + 1, 0.1))
                    c = cross_space_checks(bumped, margin, tol)
                    cells.append(GridCell("cross-space/perturbed", v.params, (), None, None, c.passed,
                                          f"L2h finite {c.harmonic_finite}, L2a finite {c.bergman_finite}"))
        else:
            raise ValueError(f"unknown grid theorem {theorem!r}")
    return GridReport(theorem, tuple(cells), skipped)


def parity_violations(report: GridReport) -> list[GridCell]:
    """Harmonic commutator cells whose computed rank is odd."""
    return [c for c in report.cells if c.computed_rank is not None and c.computed_rank % 2]


@dataclass(frozen=True)
class NegativeOutcome:
    theorem: str
    params: dict
    outcome: str          # "margin", "classifier" or "undetected"

    def to_json(self) -> dict:
        return {"theorem": self.theorem, "params": self.params, "outcome": self.outcome}


@dataclass(frozen=True)
class NegativeControlReport:
    outcomes: tuple[NegativeOutcome, ...]
    threshold: float

    @property
    def margin_fraction(self) -> float:
        return sum(o.outcome == "margin" for o in self.outcomes) / max(1, len(self.outcomes))

    @property
    def passed(self) -> bool:
        return (self.margin_fraction >= self.threshold
                and all(o.outcome != "undetected" for o in self.outcomes))

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        return {"draws": len(self.outcomes), "margin_fraction": self.margin_fraction,
                "threshold": self.threshold, "passed": self.passed,
                "outcomes": [o.to_json() for o in self.outcomes]}


def negative_pool(grid: GridSpec | None = None) -> list[tuple[str, TheoremVerdict]]:
    """Finite verdicts whose condition pins phi down and where phi is not a multiple of r^(m+1).

    Both exclusions are draws the perturbation cannot break: an unconstrained
    phi stays admissible, and c r^(m+1) + 0.1 r^(m+1) is still a multiple.
    """
    grid = grid or GridSpec()
    pool = []
    for theorem, conds_fn, fn in ((H_COMMUTE, h_commutator_conditions, classify_h_commutator),
                                  (H_GENSEMI, h_gensemi_conditions, classify_h_gensemi),
                                  (B_COMMUTE, b_commutator_conditions, classify_b_commutator)):
        for k1, k2, m in grid.cells():
            conds = conds_fn(k1, k2, m)
            if not conds or any(c.phi is None for c in conds):
                continue
            v = fn(k1, k2, m)
            if v.phi.ratio_to(_mono(m + 1)) is not None:
                continue
            pool.append((theorem, v))
    return pool


def negative_control(draws: int = 100, seed: int = 0, eps: float = 0.1, threshold: float = 0.95,
                     margin: int = DEFAULT_MARGIN, tol: float = DEFAULT_TOL) -> NegativeControlReport:
    """Perturb phi by eps r^(m+1) and require the computed map to stop vanishing on the margin."""
    import random

    pool = negative_pool()
    rng = random.Random(seed)
    outcomes = []
    for theorem, v in rng.sample(pool, min(draws, len(pool))):
        m = v.params["m"]
        w = v.with_phi(v.phi + RadialSymbol.monomial(m + 1, eps))
        rep = detect_rank(compute_map(w, margin=margin), tol=tol)
        if not rep.finite:
            outcome = "margin"
        elif not classify_symbols(theorem, v.params["k1"], v.params["k2"], m, w.phi, w.psi).finite:
            outcome = "classifier"
        else:
            outcome = "undetected"
        outcomes.append(NegativeOutcome(theorem, v.params, outcome))
    return NegativeControlReport(tuple(outcomes), threshold)


# ---------------------------------------------------------------------------
# Corollary sweep
# ---------------------------------------------------------------------------

_RADIAL_POOL = ("1", "r", "r^2", "r^3", "1 + r^2", "3*r^-1 - r^3", "r^-1", "2*r^2*log")


def _pow_pool(k: int) -> tuple[str, ...]:
    return (f"r^{k}", f"2*r^{k}", f"r^{k} + r^{abs(k) + 2}", "1 + r^2")


def _product_psi(a: float, b: float) -> RadialSymbol:
    """psi with z psi^(z) = r^a^(z) r^b^(z): (a r^a - b r^b) / (a - b), or (1 + a log r) r^a if a == b."""
    if _zero(a - b):
        return RadialSymbol(((1.0, a, 0), (a, a, 1)))
    return RadialSymbol(((a / (a - b), a, 0), (-b / (a - b), b, 0)))


def corollary_instances():
    """(name, params) pairs covering both sides of every iff."""
    for k in range(-3, 4):
        for f1 in ("1", "2", "r", "1 + r^2"):
            for f2 in ("r", "r^3", "3*r^-1 - r^3"):
                yield "cradial-a", {"k": k, "phi1": f1, "phi2": f2}
    for k in (-2, -1, 1, 2, 3):
        for f1 in ("r", "r^2", "1 + r^2"):
            for f2 in ("r", "3*r", "r^2", "2 + 2*r^2", "r^3"):
                yield "cradial-b", {"k": k, "phi1": f1, "phi2": f2}
        for f1, f2 in (("r", "r^-1"), ("2*r", "r^-1"), ("r^-1", "r"), ("r", "r"), ("r^2", "r^-1"),
                       ("1", "1"), ("r^3", "r^-1")):
            yield "cradial-c", {"k": k, "phi1": f1, "phi2": f2}
    for base, space in (("commonial-a", ""), ("commonial-b", ""), ("commonial-a", "b-"),
                        ("commonial-b", "b-")):
        for k1 in (-1, 1, 2, 3):
            for k2 in range(-4, 5):
                for f in _pow_pool(k2) + _pow_pool(-k2):
                    if f.startswith("r^-") and int(f.split("^")[1].split()[0]) <= -2:
                        continue
                    yield space + base, {"k1": k1, "k2": k2, "phi": f}
    for prefix in ("", "b-"):
        for k1 in (-2, -1, 1, 2, 3):
            for k2 in (-3, -1, 1, 2):
                for m1 in (-1.0, 0.0, 1.0, 2.0, 3.0):
                    for m2 in (-1.0, 1.0, 2.0, 3.0):
                        yield prefix + "comr", {"k1": k1, "m1": m1, "k2": k2, "m2": m2}
    for k in range(-2, 3):
        for a, b in ((1.0, 2.0), (0.0, 3.0), (2.0, 2.0)):
            right = _product_psi(a, b)
            for ps in (right, right * 2.0, RadialSymbol.monomial(a + 1)):
                yield "pradial-a", {"k": k, "phi1": RadialSymbol.monomial(a),
                                    "phi2": RadialSymbol.monomial(b), "psi": ps}
    for k in (-2, -1, 1, 2):
        for f1, f2 in (("r", "r^-1"), ("2*r", "r^-1"), ("r", "r"), ("r^2", "r^-1")):
            for ps in ("1", "2", "1 + r"):
                yield "pradial-b", {"k": k, "phi1": f1, "phi2": f2, "psi": ps}
    for base in ("semianaly-a", "semianaly-b"):
        for k1 in (-1, 1, 2, 3):
            for k2 in range(-4, 5):
                s = 1 if base == "semianaly-a" else -1
                for f in (f"r^{s * k2}", f"2*r^{s * k2}", "1 + r^2"):
                    for ps in (f"r^{k1 + s * k2}", f"2*r^{k1 + s * k2}", "1 + r"):
                        if min(s * k2, k1 + s * k2) <= -2:
                            continue
                        yield base, {"k1": k1, "k2": k2, "phi": f, "psi": ps}
    for k1 in (-2, -1, 1, 2):
        for k2 in (-2, -1, 1, 2):
            for m1 in (0.0, 1.0, 2.0, 3.0):
                for m2 in (0.0, 1.0, 2.0, 3.0):
                    a = abs(k1)
                    cands = [RadialSymbol.monomial(p) for p in (k1 + k2, -k1 - k2) if p > -2]
                    cands.append(RadialSymbol.parse("1 + r"))
                    if m1 - a > -2:
                        cands.append(RadialSymbol((((m1 + a) / (2 * a), m1 + a, 0),
                                                   (-(m1 - a) / (2 * a), m1 - a, 0))))
                    for ps in cands:
                        yield "semimono", {"k1": k1, "m1": m1, "k2": k2, "m2": m2, "psi": ps}
    for k1 in (-2, -1, 1, 2, 3):
        for k2 in (-3, -2, -1, 1, 2, 3):
            for m in (-1.0, 0.0, 1.0, 2.0, 3.0):
                for f in (f"r^{abs(k2)}", "r", "r^2 + r^4"):
                    yield "semicom", {"k1": k1, "k2": k2, "m": m, "phi": f}


def verify_corollaries(margin: int = DEFAULT_MARGIN, tol: float = DEFAULT_TOL) -> GridReport:
    """Compare each corollary verdict with the computed map.

    Finite verdicts must give a map that vanishes on the margin, with rank 0
    for the radial corollaries and within the bound otherwise. Instances whose
    symbols are not T-functions at the needed points are skipped.
    """
    cells, skipped = [], 0
    for which, params in corollary_instances():
        try:
            v = classify_corollary(which, **params)
            (_, f1), (_, f2) = v.factors
            lows = [f.witness.min_power for f in (f1, f2, v.psi) if f is not None and f.witness is not None]
            if any(p is not None and p <= -2 for p in lows):
                skipped += 1
                continue
            rep = detect_rank(compute_map(v, margin=margin), tol=tol)
        except (ValueError, ArithmeticError):
            skipped += 1
            continue
        agree = corollary_consistency(v)
        if v.finite:
            rank_ok = rep.rank <= v.predicted_rank if v.rank_is_bound else rep.rank == v.predicted_rank
            ok = rep.finite and rank_ok and agree
        else:
            ok = not rep.finite and agree
        shown = {k: (str(x) if not isinstance(x, (int, float)) else x) for k, x in params.items()}
        cells.append(GridCell(v.theorem, shown, v.conditions, v.predicted_rank,
                              rep.rank if rep.finite else None, ok,
                              "" if ok else f"predicted finite {v.finite} (rank {v.predicted_rank}), "
                                            f"computed finite {rep.finite} (rank {rep.rank}), "
                                            f"theorem agrees {agree}"))
    return GridReport("corollaries", tuple(cells), skipped)
