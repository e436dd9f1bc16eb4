import pytest
from hypothesis import given, strategies as st

from qhtoeplitz.operators import QHOperator, commutator_map, gen_semicommutator_map
from qhtoeplitz.rank import (CanonicalTerm, MarginViolation, detect_rank, extract_canonical_form,
                             pairing_check, parity_and_bounds, rank_bound, rank_equivalence_check,
                             svd_rank, symmetry_check, synthesize)
from qhtoeplitz.support import SupportWindow


def _comm(space, k1, s1, k2, s2):
    return commutator_map(QHOperator.of(space, k1, s1), QHOperator.of(space, k2, s2))


def test_detects_rank_two_with_pairing():
    M = _comm("h", 1, "r^-1", -3, "r^3")
    rep = detect_rank(M)
    assert rep.finite and rep.rank == 2
    assert rep.coefficients() == {-2: pytest.approx(-0.5), 0: pytest.approx(0.5)}
    assert pairing_check(rep.canonical)
    assert symmetry_check(M)
    assert rep.parity_ok and rep.range_ok and rep.bound_ok


def test_not_finite_reports_violations():
    rep = detect_rank(_comm("h", 1, "r", -3, "r^3"))
    assert not rep.finite and rep.margin_violations
    with pytest.raises(MarginViolation):
        rep.require_finite()


def test_canonical_round_trip():
    M = _comm("h", 1, "r^3", 6, "6*r^8 - 5*r^6")
    canon = extract_canonical_form(M)
    raw = synthesize(canon, M.net_degree)
    assert raw == {l: pytest.approx(c) for l, c in M.nonzero().items()}


def test_pairing_failure_is_reported():
    bad = (CanonicalTerm(1, 1.0, 0, 2), CanonicalTerm(2, 0.5, 1, 1))
    res = pairing_check(bad)
    assert not res and res.failures


def test_bounds():
    assert rank_bound("harmonic", "commutator", 1, 6) == 6
    assert rank_bound("harmonic", "commutator", 2, 4) == 4
    assert rank_bound("harmonic", "gensemi", 1, 6) == 6
    b = parity_and_bounds(3, 1, 2, "commutator")
    assert b.parity_ok is False and not b


def test_svd_agrees_and_ignores_noise():
    M = _comm("h", 1, "r^3", 6, "6*r^8 - 5*r^6")
    assert svd_rank(M) == detect_rank(M).rank == 6
    Z = gen_semicommutator_map(QHOperator.of("a", 1, "r"), QHOperator.of("a", 1, "r"), "r^2")
    assert svd_rank(Z) == 0


def test_bergman_ranges():
    rep = detect_rank(_comm("a", 2, "r^6", -1, "3*r^-1 - r^3"))
    assert rep.rank == 1 and rep.coefficients() == {1: pytest.approx(-1.5)}


def test_equivalence_relation():
    T1, T2 = QHOperator.of("h", 1, "r^-1"), QHOperator.of("h", -3, "r^3")
    res = rank_equivalence_check(T1, T2, "r^2")
    assert res and res.ranks == (2, 2, 2) and res.relation_ok
    assert rank_equivalence_check(QHOperator.of("a", 1, "r"), QHOperator.of("a", 1, "r"), "r^2").skipped


@given(st.integers(-6, 6), st.integers(-6, 6))
def test_support_sets(k1, k2):
    W = SupportWindow(k1, k2)
    assert W.LambdaHalf <= W.Lambda1
    assert all(2 * k != k1 + k2 for k in W.Lambda1)
    lo, hi = W.sources("commutator", "h")
    assert {l + k1 + k2 for l in range(lo, hi + 1)} >= W.Lambda1


@given(st.integers(-5, 5), st.integers(-5, 5))
def test_analytic_commutators_even_rank(k1, k2):
    rep = detect_rank(_comm("h", k1, f"r^{abs(k1)}", k2, f"r^{abs(k2)}"))
    if rep.finite:
        assert rep.rank % 2 == 0
