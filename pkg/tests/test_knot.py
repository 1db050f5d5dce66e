from __future__ import annotations

from math import gcd

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from torti.cfrac import build_graph, expand_even, Rational
from torti.errors import InputError, UnsupportedHypothesisError, UsageError
from torti.knot import (
    TortiKnot,
    alexander_knot,
    classify_genus_one,
    degree_formula,
    extreme_linking,
    gamma_series,
    genus,
    invariant_report,
    is_fibred,
    is_monic,
    is_unknot,
    reduce,
    satellite_invariants,
)
from torti.polynomial import UniLaurent, is_palindromic

t = UniLaurent.t()


def K(ta, b, r):
    return TortiKnot(ta, b, r)


@st.composite
def knots(draw, max_two_alpha=80, r_max=4):
    ta = 2 * draw(st.integers(2, max_two_alpha // 2))
    b = draw(st.integers(-ta + 1, ta - 1).filter(lambda b: b % 2 and gcd(b, ta) == 1))
    r = draw(st.integers(-r_max, r_max).filter(bool))
    return K(ta, b, r)


class TestKnotType:
    def test_rejects_bad_pair(self):
        with pytest.raises(InputError):
            K(18, 12, 1)

    def test_str(self):
        assert str(K(18, 13, 2)) == "K(18,13|2)"

    def test_ell(self):
        assert K(18, 13, 1).ell == 1
        assert K(48, 31, 1).ell == 0


class TestReduce:
    def test_double_mirror(self):
        assert reduce(K(4, -1, 3)) == (K(4, 3, 3), False)

    def test_14_9(self):
        red, _ = reduce(K(14, 9, 2))
        assert red == K(14, -5, 2)

    def test_identity(self):
        assert reduce(K(18, 13, 2)) == (K(18, 13, 2), False)

    def test_r_zero(self):
        with pytest.raises(UsageError):
            reduce(K(18, 13, 0))

    @given(knots())
    @settings(max_examples=80, deadline=None)
    def test_preserves_invariants(self, k):
        red, _ = reduce(k)
        assert red.ell >= 0 and red.r > 0
        assert alexander_knot(red) == alexander_knot(k)
        assert genus(red) == genus(k)
        assert is_fibred(red)[0] == is_fibred(k)[0]
        assert is_monic(red) == is_monic(k)
        assert is_unknot(red) == is_unknot(k)


class TestGamma:
    def test_48_31(self):
        assert gamma_series(48, 31).coeffs == -2 * t + 4 - 2 * t**-1

    def test_64_41(self):
        assert gamma_series(64, 41).coeffs.is_zero()

    def test_40_11(self):
        assert gamma_series(40, 11).coeffs == -(t**2) + t + t**-1 - t**-2

    def test_nonzero_linking(self):
        with pytest.raises(UsageError):
            gamma_series(18, 13)

    @pytest.mark.parametrize("b,ta,want", [(11, 40, (2, -1)), (31, 48, (1, -2)), (71, 112, (1, -2))])
    def test_extreme_linking(self, b, ta, want):
        assert extreme_linking(build_graph(expand_even(Rational(b, ta)))) == want

    def test_extreme_linking_rejects(self):
        with pytest.raises(UsageError):
            extreme_linking(build_graph(expand_even(Rational(13, 18))))


class TestAlexander:
    @pytest.mark.parametrize("r", range(1, 6))
    def test_48_31(self, r):
        assert alexander_knot(K(48, 31, r)) == 2 * r * (1 - t) ** 2 + t

    @pytest.mark.parametrize("r", range(1, 6))
    def test_40_11(self, r):
        assert alexander_knot(K(40, 11, r)) == r * (1 - t - t**3 + t**4) + t**2

    @pytest.mark.parametrize("r", range(1, 6))
    def test_64_41(self, r):
        assert alexander_knot(K(64, 41, r)) == 1

    def test_112_71(self):
        for r in range(1, 4):
            assert alexander_knot(K(112, 71, r)) == 2 * r * (1 - t) ** 2 + t

    def test_18_13(self):
        assert alexander_knot(K(18, 13, 1)) == -2 + 5 * t - 2 * t**2

    def test_unknot(self):
        assert alexander_knot(K(4, 3, 1)) == 1
        assert alexander_knot(K(6, 5, 0)) == 1

    @given(knots())
    @settings(max_examples=80, deadline=None)
    def test_normalized(self, k):
        d = alexander_knot(k)
        assert d.min_exp() == 0
        assert d.evaluate(1) == 1
        assert is_palindromic(d)
        assert d.evaluate(-1) % 2 == 1


class TestGenus:
    @pytest.mark.parametrize("r", range(1, 5))
    def test_table(self, r):
        assert genus(K(18, 13, r)) == r
        assert genus(K(482, 381, r)) == 3 * r
        assert genus(K(60, 47, r)) == 3 * r
        assert genus(K(1732, -671, r)) == 5 * r + 2
        assert genus(K(48, 31, r)) == 2
        assert genus(K(64, 41, r)) == 2
        assert genus(K(112, 71, r)) == 2

    def test_degree_formula(self):
        for r in range(1, 5):
            assert degree_formula(3, 1, 1, r) == 2 * r
            assert degree_formula(7, 3, 1, r) == 6 * r
            assert degree_formula(6, 0, 2, r) == 10 * r + 4

    def test_degree_formula_rejects_ell_zero(self):
        with pytest.raises(UsageError):
            degree_formula(4, 0, 0, 1)

    @given(knots())
    @settings(max_examples=80, deadline=None)
    def test_degree_matches(self, k):
        red, _ = reduce(k)
        d = alexander_knot(k).degree()
        if red.ell >= 1:
            assert d == 2 * genus(k)
        else:
            assert d <= 2 * genus(k)
        assert is_unknot(k) == (genus(k) == 0)


class TestFibred:
    def test_table(self):
        assert not is_fibred(K(18, 13, 1))[0]
        assert is_fibred(K(40, 11, 1))[0]
        for r in range(2, 5):
            assert is_fibred(K(18, 13, r))[0]
            assert not is_fibred(K(40, 11, r))[0]
            assert is_fibred(K(482, 381, r))[0]
        assert not is_fibred(K(482, 381, 1))[0]
        for r in range(1, 5):
            assert not is_fibred(K(48, 31, r))[0]
            assert is_fibred(K(60, 47, r))[0]
            assert is_fibred(K(1732, -671, r))[0]

    def test_certificate_text(self):
        ok, why = is_fibred(K(18, 13, 1))
        assert not ok and "b =" in why

    def test_monic(self):
        assert not is_monic(K(18, 13, 1))
        assert is_monic(K(64, 41, 2))
        assert is_monic(K(60, 47, 3))

    @given(knots())
    @settings(max_examples=80, deadline=None)
    def test_fibred_implies_monic(self, k):
        fib, _ = is_fibred(k)
        if fib:
            assert is_monic(k)
        if reduce(k)[0].ell != 0:
            assert fib == is_monic(k)


class TestUnknot:
    def test_examples(self):
        assert is_unknot(K(4, 3, 1))
        assert not is_unknot(K(4, 3, 2))
        assert not is_unknot(K(48, 31, 5))
        assert is_unknot(K(6, 5, 0))
        assert is_unknot(K(2, 1, 7))


class TestGenusOne:
    @pytest.mark.parametrize("r", [1, 2, -3])
    def test_a1(self, r):
        c = classify_genus_one(K(8, 5, r))
        assert c.case == "A1" and c.params["d"] == 1

    def test_b1(self):
        assert classify_genus_one(K(4, 3, 2)).case == "B1"

    def test_unknot_is_none(self):
        assert classify_genus_one(K(4, 3, 1)).is_none
        assert classify_genus_one(K(4, 3, 1)).to_json() is None

    def test_b4_satellite(self):
        c = classify_genus_one(K(46, 39, 1))
        assert c.case == "B4-satellite"
        assert (c.params["a"], c.params["b"]) == (2, 1)
        assert c.params["companion"] == [2, 3]
        assert c.params["pattern"] == [23, 12]
        assert UniLaurent.from_json(c.params["delta"]) == 6 * (t - 1) ** 2 + t
        assert alexander_knot(K(46, 39, 1)) == 6 - 11 * t + 6 * t**2

    @given(knots(60, 6))
    @settings(max_examples=100, deadline=None)
    def test_iff_genus_one(self, k):
        assert classify_genus_one(k).is_none == (genus(k) != 1)


class TestSatellite:
    def test_18_13(self):
        assert satellite_invariants(K(18, 13, 2), 1, True) == (3, True)

    @pytest.mark.parametrize("g", [1, 2, 5])
    def test_48_31(self, g):
        assert satellite_invariants(K(48, 31, 1), g, True) == (2, False)

    @pytest.mark.parametrize("g", [1, 2, 5])
    def test_unknot_pattern(self, g):
        assert satellite_invariants(K(4, 3, 1), g, True) == (2 * g, True)

    def test_needs_fibred(self):
        with pytest.raises(UnsupportedHypothesisError):
            satellite_invariants(K(18, 13, 2), 1, False)

    def test_trivial_companion(self):
        with pytest.raises(InputError):
            satellite_invariants(K(18, 13, 2), 0, True)

    def test_r_zero(self):
        with pytest.raises(UsageError):
            satellite_invariants(K(18, 13, 0), 1, True)


class TestReport:
    def test_18_13(self):
        rep = invariant_report(K(18, 13, 1))
        assert (rep.ell, rep.lam, rep.rho) == (1, 3, 1)
        assert rep.delta_K == -2 + 5 * t - 2 * t**2
        assert (rep.genus, rep.monic, rep.fibred, rep.unknot) == (1, False, False, False)

    def test_unknot(self):
        rep = invariant_report(K(4, 3, 1))
        assert rep.genus == 0 and rep.unknot and rep.fibred and rep.delta_K == 1

    def test_46_39(self):
        rep = invariant_report(K(46, 39, 1))
        assert rep.genus == 1 and rep.genus_one_class.case == "B4-satellite"

    def test_json_shape(self):
        js = invariant_report(K(18, 13, -1)).to_json()
        assert set(js) == {
            "input", "normalized", "ell", "lambda", "rho", "cfrac", "delta_K",
            "degree", "genus", "monic", "fibred", "unknot", "genus_one",
        }
        assert js["input"] == {"two_alpha": 18, "beta": 13, "r": -1}
        assert js["cfrac"] == [2, 2, 2, -2, -2] or all(c % 2 == 0 for c in js["cfrac"])

    @given(knots(40))
    @settings(max_examples=40, deadline=None)
    def test_runs(self, k):
        assume(k.r != 0)
        rep = invariant_report(k)
        assert rep.degree == rep.delta_K.degree()
