"""Finite-rank detection, canonical rank-one forms, and rank bounds."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .operators import (DEFAULT_MARGIN, CoeffMap, QHOperator, commutator_map,
                        gen_semicommutator_map)
from .mellin import Transformable
from .support import BERGMAN, COMMUTATOR, GENSEMI, HARMONIC, SupportWindow

DEFAULT_TOL = 1e-10


class MarginViolation(RuntimeError):
    pass


@dataclass(frozen=True)
class CanonicalTerm:
    """C * e_index (x) e_source, with e_j = r^|j| e^{ij theta} (or z^j on L2a)."""

    index: int
    coeff: float
    source: int
    partner: int | None = None

    def to_json(self) -> dict:
        return {"index": self.index, "coeff": self.coeff, "source": self.source,
                "partner": self.partner}


@dataclass(frozen=True)
class RankReport:
    space: str
    kind: str
    k1: int
    k2: int
    rank: int
    range_indices: tuple[int, ...]
    canonical: tuple[CanonicalTerm, ...]
    finite: bool
    margin_violations: tuple[tuple[int, float], ...]
    range_ok: bool
    parity_ok: bool | None
    bound_ok: bool
    window: tuple[int, int]
    margin: int
    tol: float
    notes: tuple[str, ...] = ()

    def require_finite(self) -> "RankReport":
        if not self.finite:
            raise MarginViolation(f"not finite rank at this window: {self.margin_violations[:3]}")
        return self

    def coefficients(self) -> dict[int, float]:
        return {t.index: t.coeff for t in self.canonical}

    def to_json(self) -> dict:
        return {"space": self.space, "kind": self.kind, "k1": self.k1, "k2": self.k2,
                "rank": self.rank, "finite": self.finite,
                "range_indices": list(self.range_indices),
                "canonical": [t.to_json() for t in self.canonical],
                "margin_violations": [[l, c] for l, c in self.margin_violations[:10]],
                "range_ok": self.range_ok, "parity_ok": self.parity_ok,
                "bound_ok": self.bound_ok, "window": list(self.window),
                "margin": self.margin, "tol": self.tol, "notes": list(self.notes)}


def extract_canonical_form(M: CoeffMap, tol: float = DEFAULT_TOL) -> tuple[CanonicalTerm, ...]:
    """Rank-one coefficients C = (|source|+1) C', C' the raw image coefficient."""
    K = M.net_degree
    paired = M.space == HARMONIC and M.kind == COMMUTATOR
    out = []
    for l, c in M.nonzero(tol).items():
        j = l + K
        out.append(CanonicalTerm(j, (abs(l) + 1) * c, l, (-j + K) if paired else None))
    return tuple(sorted(out, key=lambda t: t.index))


def synthesize(canonical, K: int) -> dict[int, float]:
    """Inverse of extract_canonical_form: source -> raw coefficient."""
    return {t.index - K: t.coeff / (abs(t.index - K) + 1) for t in canonical}


def rank_bound(space: str, kind: str, k1: int, k2: int) -> int:
    W = SupportWindow(k1, k2)
    if space == HARMONIC:
        if kind == COMMUTATOR:
            s = abs(k1) + abs(k2)
            return s - 1 if (k1 + k2) % 2 else max(0, s - 2)
        return max(0, abs(k1) - 1, abs(k2) - 1, abs(k1 + k2) - 1)
    lo, hi = W.sources(kind, space)
    return max(0, hi - lo + 1)


@dataclass(frozen=True)
class BoundsResult:
    parity_ok: bool | None
    bound_ok: bool
    bound: int

    @property
    def passed(self) -> bool:
        return self.bound_ok and self.parity_ok is not False

    def __bool__(self) -> bool:
        return self.passed


def parity_and_bounds(rank: int, k1: int, k2: int, kind: str, space: str = HARMONIC) -> BoundsResult:
    bound = rank_bound(space, kind, k1, k2)
    parity = (rank % 2 == 0) if (space == HARMONIC and kind == COMMUTATOR) else None
    return BoundsResult(parity, rank <= bound, bound)


def symmetry_check(M: CoeffMap, tol: float = DEFAULT_TOL) -> bool:
    """M(l) = 0 iff M(-l-k1-k2) = 0, and M vanishes at the symmetry index."""
    K = M.net_degree
    lo, hi = M.window
    for l in range(lo, hi + 1):
        mirror = -l - K
        if lo <= mirror <= hi and M.is_zero_at(l, tol) != M.is_zero_at(mirror, tol):
            return False
    s = SupportWindow(M.k1, M.k2).symmetry_index
    return s is None or not (lo <= s <= hi) or M.is_zero_at(s, tol)


def detect_rank(M: CoeffMap, W: SupportWindow | None = None, tol: float = DEFAULT_TOL) -> RankReport:
    """Count nonzero coefficients and check the margin outside the support set."""
    W = W or SupportWindow(M.k1, M.k2)
    lo_s, hi_s = W.sources(M.kind, M.space)
    lo, hi = M.window
    if M.space == BERGMAN:
        margin = hi - max(hi_s, -1)
    else:
        margin = min(min(lo_s, 0) - lo, hi - max(hi_s, 0))
    nz = M.nonzero(tol)
    violations = tuple((l, c) for l, c in nz.items() if not lo_s <= l <= hi_s)
    range_indices = tuple(sorted(M.target(l) for l in nz))
    canonical = extract_canonical_form(M, tol)
    allowed = W.allowed_range(M.kind, M.space)
    range_ok = set(range_indices) <= allowed
    rank = len(range_indices)
    b = parity_and_bounds(rank, M.k1, M.k2, M.kind, M.space)
    notes = []
    if violations:
        notes.append("not finite rank at this window")
    return RankReport(M.space, M.kind, M.k1, M.k2, rank, range_indices, canonical,
                      finite=not violations, margin_violations=violations,
                      range_ok=range_ok, parity_ok=b.parity_ok, bound_ok=b.bound_ok,
                      window=(lo, hi), margin=margin, tol=tol, notes=tuple(notes))


@dataclass(frozen=True)
class PairingResult:
    passed: bool
    failures: tuple = ()

    def __bool__(self) -> bool:
        return self.passed


def pairing_check(canonical, tol: float = DEFAULT_TOL) -> PairingResult:
    """C_k == -C_{partner} for every term carrying a partner index."""
    coeffs = {t.index: t.coeff for t in canonical}
    bad = []
    for t in canonical:
        if t.partner is None:
            continue
        other = coeffs.get(t.partner)
        if other is None or abs(t.coeff + other) > tol * max(1.0, abs(t.coeff)):
            bad.append((t.index, t.partner, t.coeff, other))
    return PairingResult(not bad, tuple(bad))


def svd_rank(M: CoeffMap, rel: float = 1e-9, restrict_to_support: bool = True) -> int:
    """Rank of the truncated matrix in the orthonormal basis, by singular values.

    Columns are source indices, rows all their images, so truncation drops
    no entries. The cutoff is rel times the larger of sigma_max and the size
    of the terms that were subtracted (floored at 1, as in the zero test),
    so cancellation noise in a zero map does not count.
    """
    lo, hi = M.window
    if restrict_to_support:
        lo_s, hi_s = SupportWindow(M.k1, M.k2).sources(M.kind, M.space)
        lo, hi = max(lo, lo_s), min(hi, hi_s)
    if lo > hi:
        return 0
    sources = list(range(lo, hi + 1))
    rows = {M.target(l): i for i, l in enumerate(sources)}
    A = np.zeros((len(rows), len(sources)))
    yardstick = 0.0
    for col, l in enumerate(sources):
        c = M.entries.get(l, 0.0)
        if M.space == HARMONIC:
            w = np.sqrt((abs(l) + 1) / (abs(l + M.net_degree) + 1))
        else:
            w = np.sqrt((l + 1) / (l + M.net_degree + 1)) if l + M.net_degree >= 0 else 0.0
        A[rows[M.target(l)], col] = c * w
        yardstick = max(yardstick, M.scales.get(l, 0.0) * w)
    s = np.linalg.svd(A, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > rel * max(s[0], yardstick, 1.0)))


@dataclass(frozen=True)
class EquivalenceResult:
    passed: bool
    ranks: tuple[int, int, int] | None
    relation_ok: bool | None = None
    skipped: bool = False
    note: str = ""

    def __bool__(self) -> bool:
        return self.passed


def rank_equivalence_check(T1: QHOperator, T2: QHOperator, psi: Transformable,
                           margin: int = DEFAULT_MARGIN, tol: float = DEFAULT_TOL) -> EquivalenceResult:
    """rank(T1T2 - T_psi) == rank(T2T1 - T_psi) and rank [T1,T2] <= twice that.

    Also checks the explicit relation between the two canonical forms:
    T2T1 - T_psi = sum C_j e_{K-k_j} (x) e_{-k_j}.
    """
    if T1.space != HARMONIC:
        return EquivalenceResult(True, None, skipped=True,
                                 note="rank equivalence is asserted on the harmonic space only")
    r12 = detect_rank(gen_semicommutator_map(T1, T2, psi, margin=margin), tol=tol)
    r21 = detect_rank(gen_semicommutator_map(T2, T1, psi, margin=margin), tol=tol)
    rc = detect_rank(commutator_map(T1, T2, margin=margin), tol=tol)
    K = T1.degree + T2.degree
    relation_ok = None
    if r12.finite and r21.finite:
        expected = {K - t.index: t.coeff for t in r12.canonical}
        got = r21.coefficients()
        relation_ok = set(expected) == set(got) and all(
            abs(expected[i] - got[i]) <= 1e-9 * max(1.0, abs(got[i])) for i in got)
    ranks = (r12.rank, r21.rank, rc.rank)
    if not (r12.finite and r21.finite):
        ok = r12.finite == r21.finite
        return EquivalenceResult(ok, ranks, None, note="not finite rank at this window")
    ok = r12.rank == r21.rank and (not rc.finite or rc.rank <= 2 * r12.rank) and rc.finite
    return EquivalenceResult(ok and bool(relation_ok), ranks, relation_ok)
