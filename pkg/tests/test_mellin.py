import math

import pytest
from hypothesis import given, settings, strategies as st

from qhtoeplitz.mellin import (GammaRatioTransform, MellinPoleError, MellinTransform, NotRational,
                               RadialSymbol, SymbolError, SymbolParseError, UnsupportedTermError,
                               family_transform, gamma_ratio_eval, gamma_ratio_to_partial_fractions,
                               mellin_convolve, monotonicity_certificate, parse_symbol,
                               t_function_classify)
from qhtoeplitz.oracle import quad_mellin

powers = st.floats(min_value=-1.9, max_value=6.0, allow_nan=False).map(lambda x: round(x, 3))
coeffs = st.floats(min_value=-5.0, max_value=5.0, allow_nan=False).filter(lambda c: abs(c) > 1e-3)
symbols = st.lists(st.tuples(coeffs, powers, st.integers(0, 1)), min_size=1, max_size=4).map(
    lambda ts: RadialSymbol(tuple(ts)))


class TestParse:
    @pytest.mark.parametrize("text, terms", [
        ("1", [(1.0, 0.0, 0)]),
        ("3*r^-1 - r^3", [(3.0, -1.0, 0), (-1.0, 3.0, 0)]),
        ("r^2*log", [(1.0, 2.0, 1)]),
        ("3/2*r^1/2", [(1.5, 0.5, 0)]),
        ("-r^-1.5 + 2", [(-1.0, -1.5, 0), (2.0, 0.0, 0)]),
        ("r + r", [(2.0, 1.0, 0)]),
        ("r - r", []),
    ])
    def test_accepts(self, text, terms):
        assert list(parse_symbol(text).terms) == terms

    @pytest.mark.parametrize("text, pos", [("", 0), ("r^", 2), ("2**r", 2), ("x", 0), ("1/0", 2)])
    def test_reports_position(self, text, pos):
        with pytest.raises(SymbolParseError) as exc:
            parse_symbol(text)
        assert exc.value.position == pos

    def test_rejects_nonintegrable_power(self):
        with pytest.raises(SymbolError):
            parse_symbol("r^-2")

    @given(symbols)
    def test_str_round_trip(self, sym):
        assert parse_symbol(str(sym)).approx_equal(sym, 1e-9)


class TestClosedForm:
    @pytest.mark.parametrize("text, z, value", [
        ("1", 2, 0.5), ("r^3", 5, 0.125), ("r^-1*log", 4, -1 / 9), ("r^2*log", 3, -0.04),
        ("3*r^-1 - r^3", 4, 6 / 7),
    ])
    def test_values(self, text, z, value):
        assert MellinTransform.of(text)(z) == pytest.approx(value, rel=1e-14)

    @settings(max_examples=60, deadline=None)
    @given(symbols, st.floats(2.0, 15.0))
    def test_matches_quadrature(self, sym, z):
        assert quad_mellin(sym, z) == pytest.approx(MellinTransform.of(sym)(z), rel=1e-8, abs=1e-8)

    @given(symbols, symbols, st.floats(-3, 3), st.floats(-3, 3), st.integers(2, 12))
    def test_linear(self, f, g, a, b, z):
        lhs = MellinTransform.of(f * a + g * b)(z)
        rhs = a * MellinTransform.of(f)(z) + b * MellinTransform.of(g)(z)
        assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)


class TestConvolution:
    def test_distinct_powers(self):
        assert mellin_convolve(parse_symbol("r"), parse_symbol("r^-1")).approx_equal(
            parse_symbol("0.5*r^-1 - 0.5*r"))

    def test_equal_powers(self):
        assert mellin_convolve(parse_symbol("r^2"), parse_symbol("r^2")).approx_equal(parse_symbol("-r^2*log"))

    def test_transform_value(self):
        c = mellin_convolve(parse_symbol("r"), parse_symbol("r^3"))
        assert MellinTransform.of(c)(3) == pytest.approx(1 / 24, rel=1e-14)

    def test_log_squared_unsupported(self):
        with pytest.raises(UnsupportedTermError):
            mellin_convolve(parse_symbol("1"), parse_symbol("log"))

    def test_double_log_unsupported(self):
        with pytest.raises(UnsupportedTermError):
            mellin_convolve(parse_symbol("r*log"), parse_symbol("r^2*log"))

    @given(powers, powers, st.integers(2, 12))
    def test_convolution_theorem(self, a, b, z):
        f, g = RadialSymbol.monomial(a), RadialSymbol.monomial(b)
        value = MellinTransform.of(f)(z) * MellinTransform.of(g)(z)
        got = MellinTransform.of(mellin_convolve(f, g))(z)
        assert abs(got - value) <= 1e-12 * (1 + abs(value)) * max(1.0, 1 / max(abs(a - b), 1e-3))

    @settings(max_examples=40, deadline=None)
    @given(symbols.filter(lambda s: not s.has_log), symbols.filter(lambda s: not s.has_log),
           st.integers(2, 12))
    def test_convolution_theorem_sums(self, f, g, z):
        value = MellinTransform.of(f)(z) * MellinTransform.of(g)(z)
        got = MellinTransform.of(mellin_convolve(f, g))(z)
        assert got == pytest.approx(value, rel=1e-8, abs=1e-8)


class TestGammaRatio:
    def test_recurrence_example(self):
        assert gamma_ratio_eval(GammaRatioTransform((-1,), (1,), 2, 1), 3) == pytest.approx(1.0)
        assert gamma_ratio_eval(GammaRatioTransform((-1,), (1,), 2, 2), 3) == pytest.approx(2.0)

    def test_boundary_collapse(self):
        G = GammaRatioTransform.commutator_family(1, -3, -1)
        assert G(2) == pytest.approx(2 / 5, rel=1e-13)
        assert gamma_ratio_to_partial_fractions(G).approx_equal(parse_symbol("2*r^3"))

    def test_odd_multiple_family_is_twice_the_unit_constant(self):
        S = gamma_ratio_to_partial_fractions(GammaRatioTransform.commutator_family(1, 6, 3))
        assert S.approx_equal(parse_symbol("12*r^8 - 10*r^6"))
        assert GammaRatioTransform.commutator_family(1, 6, 3)(8) == pytest.approx(2 * (6 / 16 - 5 / 14))

    def test_m_one(self):
        S = gamma_ratio_to_partial_fractions(GammaRatioTransform.commutator_family(1, 2, 1))
        assert S.approx_equal(parse_symbol("2*r^2"))

    def test_not_rational(self):
        out = gamma_ratio_to_partial_fractions(GammaRatioTransform.commutator_family(2, 1, 0.3))
        assert isinstance(out, NotRational) and not out

    def test_pole(self):
        G = GammaRatioTransform.commutator_family(1, 7, 2)
        assert G.poles(2, 40)
        with pytest.raises(MellinPoleError):
            gamma_ratio_eval(G, G.poles(2, 40)[0])

    # z on a dyadic grid so that z + scale is exact; otherwise rounding in z + scale
    # is amplified near Gamma poles and swamps the evaluator's own error
    @given(st.integers(1, 5), st.integers(-8, 8), st.floats(-1, 7).map(lambda m: round(m, 2)),
           st.integers(2 * 1024, 40 * 1024).map(lambda n: n / 1024))
    def test_recurrence(self, k1, k2, m, z):
        G = GammaRatioTransform.commutator_family(k1, k2, m)
        s = G.scale
        try:
            a, b = G(z), G(z + s)
        except MellinPoleError:
            return
        if a == 0 or not math.isfinite(a):
            return
        ratio = math.prod((z + x) / s for x in G.num_offsets) / math.prod((z + y) / s for y in G.den_offsets)
        assert b / a == pytest.approx(ratio, rel=1e-11)

    @given(st.integers(1, 4), st.integers(-6, 6), st.sampled_from([-1.0, 0.0, 1.0, 2.0, 3.0, 5.0, 7.0]),
           st.sampled_from(["phi", "psi"]))
    def test_partial_fraction_round_trip(self, k1, k2, m, fam):
        G = family_transform(fam, k1, k2, m)
        S = gamma_ratio_to_partial_fractions(G)
        if isinstance(S, NotRational):
            return
        for z in range(2, 31):
            try:
                v = G(z)
            except MellinPoleError:
                continue
            assert MellinTransform.of(S)(z) == pytest.approx(v, rel=1e-11, abs=1e-13)


class TestTFunction:
    @pytest.mark.parametrize("k1, k2, m, case, n", [
        (1, -3, -1, 1, None), (1, 1, 0, 2, None), (1, 6, 3, 3, 1), (1, 7, 2, None, None),
    ])
    def test_cases(self, k1, k2, m, case, n):
        c = t_function_classify("phi", k1, k2, m)
        assert c.case == case and c.n == n

    @settings(max_examples=150)
    @given(st.integers(1, 6), st.integers(-8, 12), st.sampled_from([-1.0, 0.0, 0.5, 1.0, 2.0, 3.0, 5.0]),
           st.sampled_from(["phi", "psi"]))
    def test_none_means_pole(self, k1, k2, m, fam):
        if t_function_classify(fam, k1, k2, m):
            return
        assert family_transform(fam, k1, k2, m).poles(2.0, 200.0)

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            t_function_classify("phi", 0, 1, 0)
        with pytest.raises(ValueError):
            t_function_classify("phi", 1, 1, -2)


class TestMonotonicity:
    @pytest.mark.parametrize("kind, params, interval, direction", [
        ("F", (2, 1), (2.1, 50), "increasing"),
        ("F", (-1, 0.5), (0.1, 50), "decreasing"),
        ("G", (0.5, 1), (-20, 0.4), "increasing"),
        ("G", (3, 2), (-20, 0.9), "decreasing"),
    ])
    def test_directions(self, kind, params, interval, direction):
        c = monotonicity_certificate(kind, params, interval, 200)
        assert c.passed and c.direction == direction and c.violation is None

    def test_interval_outside_domain(self):
        with pytest.raises(ValueError):
            monotonicity_certificate("F", (2, 1), (1.0, 5.0))

    def test_bad_b(self):
        with pytest.raises(ValueError):
            monotonicity_certificate("F", (2, 0), (3.0, 5.0))
