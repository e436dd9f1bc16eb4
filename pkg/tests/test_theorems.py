import pytest
from hypothesis import given, settings, strategies as st

from qhtoeplitz.mellin import MellinTransform, RadialSymbol, parse_symbol
from qhtoeplitz.theorems import (B_COMMUTE, H_COMMUTE, H_GENSEMI, COROLLARIES, GridSpec,
                                 bergman_psi, classify_b_commutator, classify_b_gensemi,
                                 classify_corollary, classify_h_commutator, classify_h_gensemi,
                                 classify_symbols, rank_gap_check, commutator_rank_formula,
                                 cross_space_checks, cross_validate, gensemi_rank_formula,
                                 negative_control, negative_pool, verify_corollaries, verify_grid)

ms = st.sampled_from([-1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 3.0, 5.0, 7.0])
degrees = st.integers(-6, 6)


def same(mt, text):
    return MellinTransform.of(mt).ratio_to(MellinTransform.of(text)) == pytest.approx(1.0)


class TestHarmonicCommutator:
    @pytest.mark.parametrize("args, cond, rank, phi", [
        ((1, -3, -1.0), 6, 2, "r^3"),
        ((2, -1, 6.0), 7, 2, "6*r^-1 - 2*r^3"),
        ((1, 2, 1.0), 8, 2, "2*r^2"),
        ((1, 6, 3.0), 9, 6, "12*r^8 - 10*r^6"),
    ])
    def test_verdicts(self, args, cond, rank, phi):
        v = classify_h_commutator(*args)
        assert v.principal == cond and v.predicted_rank == rank and same(v.phi, phi)
        assert cross_validate(v)

    def test_unit_constant_convention(self):
        # the family symbols carry twice the unit-constant normalization
        v = classify_h_commutator(1, 6, 3.0).scaled(0.5)
        assert same(v.phi, "6*r^8 - 5*r^6")

    def test_no_condition(self):
        v = classify_h_commutator(1, 7, 2.0)
        assert not v.constructible and not v.finite and v.conditions == ()

    def test_trivial_degrees(self):
        v = classify_h_commutator(0, 0, 0.0)
        assert v.conditions == (1, 2, 3) and v.predicted_rank == 0

    def test_rejects_small_m(self):
        with pytest.raises(ValueError):
            classify_h_commutator(1, 1, -1.5)

    @settings(max_examples=80, deadline=None)
    @given(degrees, degrees, ms)
    def test_cross_validates(self, k1, k2, m):
        v = classify_h_commutator(k1, k2, m)
        if v.constructible:
            r = cross_validate(v)
            assert r, r.mismatch
            if v.predicted_rank:
                assert v.predicted_rank == commutator_rank_formula(k1, k2)


class TestHarmonicGensemi:
    @pytest.mark.parametrize("args, cond, rank, psi", [
        ((1, -3, -1.0), 5, 2, "r^2"),
        ((2, -1, 6.0), 6, 1, "2*r + 2*r^5"),
        ((1, 6, 3.0), 8, 6, "14*r^9 - 12*r^7"),
    ])
    def test_verdicts(self, args, cond, rank, psi):
        v = classify_h_gensemi(*args)
        assert v.principal == cond and v.predicted_rank == rank and same(v.psi, psi)
        assert cross_validate(v)

    @settings(max_examples=80, deadline=None)
    @given(degrees, degrees, ms)
    def test_cross_validates(self, k1, k2, m):
        v = classify_h_gensemi(k1, k2, m)
        if v.constructible:
            assert cross_validate(v)
            if v.predicted_rank:
                assert v.predicted_rank == gensemi_rank_formula(k1, k2)


class TestBergman:
    @pytest.mark.parametrize("args, canon", [((2, -1, 6.0), {1: -3.0}), ((1, -3, -1.0), {0: -1.0})])
    def test_commutator_canonical(self, args, canon):
        v = classify_b_commutator(*args)
        assert v.predicted_canonical == pytest.approx(canon) and cross_validate(v)

    @pytest.mark.parametrize("args, rank, psi", [
        ((2, 1, -2, 2), 1, "4 - 3*r^-1"), ((3, 5, -1, -1), 1, "r^4"),
        ((3, 5, -4, 3), 2, "8*r - 7"), ((1, -1, -3, 3), 1, "r^2"),
    ])
    def test_monomial_gensemi(self, args, rank, psi):
        v = classify_b_gensemi(*args)
        assert v.predicted_rank == rank and same(v.psi, psi) and cross_validate(v)

    def test_bergman_psi(self):
        assert bergman_psi(2, 1, -2, "r^2").approx_equal(parse_symbol("4 - 3*r^-1"))

    @settings(max_examples=60, deadline=None)
    @given(degrees, degrees, ms)
    def test_commutator_cross_validates(self, k1, k2, m):
        v = classify_b_commutator(k1, k2, m)
        if v.constructible:
            assert cross_validate(v)


class TestSymbolLevel:
    def test_matches_scaled_template(self):
        assert classify_symbols(H_COMMUTE, 2, -1, 6.0, "3*r^-1 - r^3").conditions == (7,)
        assert classify_symbols(H_COMMUTE, 2, -1, 6.0, "3*r^-1 - r^2").conditions == ()

    def test_gensemi_needs_matching_psi(self):
        assert classify_symbols(H_GENSEMI, 1, 1, 1.0, "r", "r^2").finite
        assert not classify_symbols(H_GENSEMI, 1, 1, 1.0, "r", "2*r^2").finite
        with pytest.raises(ValueError):
            classify_symbols(H_GENSEMI, 1, 1, 1.0, "r")

    def test_bergman(self):
        assert classify_symbols(B_COMMUTE, 1, -3, -1.0, "5*r^3").finite


class TestCorollaries:
    def test_radial_commutes_with_everything_only_if_constant(self):
        assert classify_corollary("cradial-a", k=2, phi1="3", phi2="r").finite
        assert not classify_corollary("cradial-a", k=2, phi1="r", phi2="r").finite
        assert classify_corollary("cradial-a", k=0, phi1="r", phi2="r^2").finite

    def test_monomial_commutators(self):
        assert classify_corollary("comr", k1=2, m1=2.0, k2=3, m2=3.0).conditions == (2,)
        assert not classify_corollary("comr", k1=2, m1=1.0, k2=3, m2=3.0).finite
        v = classify_corollary("commonial-a", k1=1, k2=2, phi="r^2")
        assert v.finite and v.rank_is_bound

    def test_unknown(self):
        with pytest.raises(ValueError):
            classify_corollary("nope")

    def test_every_corollary_is_swept(self):
        rep = verify_corollaries()
        assert rep.passed, [c.detail for c in rep.failures[:3]]
        assert {c.theorem[4:] for c in rep.cells} == set(COROLLARIES)


class TestCrossSpace:
    @pytest.mark.parametrize("m", [-1.0, 0.0, 2.5])
    def test_rank_gap(self, m):
        r = rank_gap_check(m)
        assert r and r.harmonic_commutator_rank == 0 and r.harmonic_gensemi_rank == 0
        assert r.bergman_commutator == pytest.approx({0: -1.0})
        assert r.bergman_gensemi == pytest.approx({0: -1.0})

    def test_commutator_finiteness_transfers(self):
        v = classify_h_commutator(2, -1, 6.0)
        c = cross_space_checks(v)
        assert c and c.harmonic_finite and c.bergman_finite and c.bergman_rank == 1
        bumped = v.with_phi(v.phi.witness + RadialSymbol.monomial(7.0, 0.1))
        c = cross_space_checks(bumped)
        assert c and not c.harmonic_finite and not c.bergman_finite


class TestGrid:
    def test_parse(self):
        g = GridSpec.parse("k1=1..2,k2=-1,m=0;0.5")
        assert g.k1 == (1, 2) and g.k2 == (-1,) and g.m == (0.0, 0.5)
        with pytest.raises(ValueError):
            GridSpec.parse("k3=1")

    def test_small_grid(self):
        g = GridSpec.parse("k1=-2..2,k2=-2..2,m=-1..2")
        for th in ("h-commute", "h-gensemi", "b-commute", "b-gensemi", "equivalence", "cross-space"):
            rep = verify_grid(th, g)
            assert rep.passed and rep.cells, th

    def test_negative_control_small(self):
        rep = negative_control(draws=20, seed=3)
        assert rep and len(rep.outcomes) == 20

    def test_negative_pool_excludes_stable_draws(self):
        for _, v in negative_pool(GridSpec.parse("k1=-3..3,k2=-3..3,m=-1..3")):
            m = v.params["m"]
            assert v.phi.ratio_to(MellinTransform.of(RadialSymbol.monomial(m + 1))) is None
