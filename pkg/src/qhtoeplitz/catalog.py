"""Worked examples with known canonical forms, run as a regression suite.

Each entry names the two quasihomogeneous factors by degree and radial
symbol and states the expected canonical coefficients as {range index: C},
where a term C e_j (x) e_l has range index j = l + k1 + k2 and
e_j = z^j, e_{-j} = conj(z)^j.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .mellin import RadialSymbol
from .operators import DEFAULT_MARGIN, QHOperator, commutator_map, gen_semicommutator_map
from .rank import DEFAULT_TOL, detect_rank, rank_bound
from .support import BERGMAN, COMMUTATOR, GENSEMI, HARMONIC
from .theorems import commutator_rank_formula, compare_canonical, gensemi_rank_formula


@dataclass(frozen=True)
class Example:
    name: str
    space: str
    kind: str
    k1: int
    sym1: str
    k2: int
    sym2: str
    expected: dict
    psi: str | None = None
    description: str = ""

    @property
    def rank(self) -> int:
        return len(self.expected)


@dataclass(frozen=True)
class ExampleResult:
    example: Example
    computed: dict
    rank: int
    finite: bool
    mismatch: str

    @property
    def passed(self) -> bool:
        return not self.mismatch

    def to_json(self) -> dict:
        e = self.example
        return {"name": e.name, "space": e.space, "kind": e.kind,
                "k1": e.k1, "sym1": e.sym1, "k2": e.k2, "sym2": e.sym2, "psi": e.psi,
                "expected": {str(k): v for k, v in sorted(e.expected.items())},
                "computed": {str(k): v for k, v in sorted(self.computed.items())},
                "rank": self.rank, "finite": self.finite, "passed": self.passed,
                "detail": self.mismatch}


def _sym(*terms) -> str:
    """Build a grammar string from (coefficient, power) pairs."""
    parts = []
    for c, p in terms:
        c = Fraction(c).limit_denominator(10**6) if isinstance(c, Fraction) else c
        parts.append(f"{c}*r^{p}")
    return " + ".join(parts).replace("+ -", "- ")


def _pair(c: float, k: int, partner: int) -> dict:
    return {k: c, partner: -c}


def commutator_m_example(m: float) -> Example:
    """[T_{e^{i theta} r^m}, T_{e^{2i theta} phi}] with phi = (m+1) r^(m+1) - (m-1) r^(m-1)."""
    if m <= -1:
        raise ValueError("needs m > -1")
    c = -192 * (m + 1) / ((m + 5) ** 2 * (m + 3) ** 2)
    return Example(f"h-commute-m({m:g})", HARMONIC, COMMUTATOR, 1, f"r^{m}", 2,
                   _sym((m + 1, m + 1), (-(m - 1), m - 1)), _pair(c, 1, 2),
                   description="one-parameter commutator family")


def gensemi_m_example(m: float) -> Example:
    """T_{e^{i theta} r^m} T_{e^{2i theta} phi} - T_{e^{3i theta} psi}, same phi, m > 0.

    The r^m term of psi carries -(m-1)(m+1)/2; a quarter of that only agrees at m = 1.
    """
    if m <= 0:
        raise ValueError("needs m > 0")
    c = -192 * (m + 1) / ((m + 7) * (m + 5) * (m + 3))
    psi = _sym(((m - 3) * (m - 1) / 4, m - 2), (-(m - 1) * (m + 1) / 2, m), ((m + 1) * (m + 3) / 4, m + 2))
    return Example(f"h-gensemi-m({m:g})", HARMONIC, GENSEMI, 1, f"r^{m}", 2,
                   _sym((m + 1, m + 1), (-(m - 1), m - 1)),
                   {1: c * 2 / (m + 3), 2: c / (m + 5)}, psi,
                   description="one-parameter generalized semicommutator family")


EXAMPLES: tuple[Example, ...] = (
    # harmonic commutators
    Example("h-commute-1", HARMONIC, COMMUTATOR, 1, "r^-1", -3, "r^3", _pair(0.5, 0, -2)),
    Example("h-commute-2", HARMONIC, COMMUTATOR, 2, "r^6", -1, "3*r^-1 - r^3", _pair(-19 / 30, 0, 1)),
    commutator_m_example(1.0),
    Example("h-commute-4", HARMONIC, COMMUTATOR, 1, "r^3", 6, "6*r^8 - 5*r^6",
            {**_pair(-5 / 24, 1, 6), **_pair(-27 / 196, 2, 5), **_pair(-1 / 21, 3, 4)}),
    # harmonic generalized semicommutators
    Example("h-gensemi-1", HARMONIC, GENSEMI, 1, "r^-1", -3, "r^3", {0: 1 / 2, -1: 1 / 6}, "r^2"),
    Example("h-gensemi-2", HARMONIC, GENSEMI, 2, "r^6", -1, "3*r^-1 - r^3", {1: 19 / 30}, "r + r^5"),
    gensemi_m_example(1.0),
    Example("h-gensemi-4", HARMONIC, GENSEMI, 1, "r^3", 6, "6*r^8 - 5*r^6",
            {1: -2 / 9, 6: -1 / 72, 2: -5 / 28, 5: -2 / 49, 3: -8 / 63, 4: -5 / 63}, "7*r^9 - 6*r^7"),
    # Bergman commutators
    Example("b-commute-1", BERGMAN, COMMUTATOR, 2, "r^6", -1, "3*r^-1 - r^3", {1: -1.5}),
    Example("b-commute-2", BERGMAN, COMMUTATOR, 1, "r^-1", -3, "r^3", {0: -1.0}),
    # Bergman generalized semicommutators
    Example("b-gensemi-1", BERGMAN, GENSEMI, 2, "r", -2, "r^2", {0: 2.0}, "4 - 3*r^-1"),
    Example("b-gensemi-2", BERGMAN, GENSEMI, 3, "r^5", -1, "r^-1", {2: -0.75}, "r^4"),
    Example("b-gensemi-3", BERGMAN, GENSEMI, 3, "r^5", -4, "r^3", {0: 4 / 3, 1: 4 / 5}, "8*r - 7",
            description="factors in the order that produces the stated form"),
    Example("b-gensemi-4", BERGMAN, GENSEMI, 1, "r^-1", -3, "r^3", {0: -1.0}, "r^2"),
)

INTRO_CASES: tuple[Example, ...] = tuple(
    Example(f"h-commute-z-z{2 * n}", HARMONIC, COMMUTATOR, 1, "r", 2 * n, f"r^{2 * n}", {},
            description=f"[T_z, T_z^{2 * n}] has rank {2 * n}") for n in (1, 2, 3)
) + (
    Example("b-semicommute-intro", BERGMAN, GENSEMI, 1, "r^-1", -1, "r", {0: -1.0}, "1",
            description="ordinary semicommutator, psi = product of the symbols"),
)


def _intro_rank(e: Example) -> int | None:
    if e.name.startswith("h-commute-z-z"):
        return int(e.name.rsplit("z", 1)[1])
    return None


def run_example(e: Example, margin: int = DEFAULT_MARGIN, tol: float = DEFAULT_TOL,
                rel: float = 1e-9) -> ExampleResult:
    T1 = QHOperator.of(e.space, e.k1, RadialSymbol.parse(e.sym1))
    T2 = QHOperator.of(e.space, e.k2, RadialSymbol.parse(e.sym2))
    if e.kind == COMMUTATOR:
        M = commutator_map(T1, T2, margin=margin)
    else:
        M = gen_semicommutator_map(T1, T2, RadialSymbol.parse(e.psi), margin=margin)
    rep = detect_rank(M, tol=tol)
    got = rep.coefficients()
    problems = []
    if not rep.finite:
        problems.append("not finite rank at this window")
    want_rank = _intro_rank(e)
    if want_rank is None:
        msg = compare_canonical(e.expected, got, rel)
        if msg:
            problems.append(msg)
        want_rank = e.rank
    if rep.rank != want_rank:
        problems.append(f"rank {rep.rank} != {want_rank}")
    if e.space == HARMONIC:
        formula = (commutator_rank_formula if e.kind == COMMUTATOR else gensemi_rank_formula)(e.k1, e.k2)
        if rep.rank != formula:
            problems.append(f"rank {rep.rank} != formula {formula}")
    elif rep.rank > rank_bound(e.space, e.kind, e.k1, e.k2):
        problems.append("rank above support bound")
    return ExampleResult(e, got, rep.rank, rep.finite, "; ".join(problems))


@dataclass(frozen=True)
class ExamplesReport:
    results: tuple[ExampleResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def summary(self) -> str:
        return f"{sum(r.passed for r in self.results)}/{len(self.results)}"

    def to_json(self) -> dict:
        return {"summary": self.summary, "passed": self.passed,
                "results": [r.to_json() for r in self.results]}


def run_examples(include_intro: bool = True, margin: int = DEFAULT_MARGIN,
                 tol: float = DEFAULT_TOL, rel: float = 1e-9) -> ExamplesReport:
    cases = EXAMPLES + (INTRO_CASES if include_intro else ())
    return ExamplesReport(tuple(run_example(e, margin, tol, rel) for e in cases))


def parametric_sweep(ms=(0.25, 0.5, 1.0, 2.0, 3.5, 7.0), rel: float = 1e-9) -> ExamplesReport:
    """Both one-parameter families across several m."""
    cases = [commutator_m_example(m) for m in (-0.5,) + tuple(ms)]
    cases += [gensemi_m_example(m) for m in ms]
    return ExamplesReport(tuple(run_example(e, rel=rel) for e in cases))
