from __future__ import annotations

from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torti.cfrac import (
    CanonDecomp,
    ModifiedCFrac,
    Rational,
    StandardCFrac,
    build_graph,
    canonical_decomposition,
    dual,
    dual_by_blocks,
    evaluate,
    expand_even,
    linking_number,
    modify,
    parse_fraction,
    standardize,
)
from torti.errors import InputError, MalformedFractionError


def S(*entries):
    return StandardCFrac(tuple(entries))


def M(*entries):
    return ModifiedCFrac.from_entries(entries)


def cf_of(b, ta):
    return expand_even(Rational(b, ta))


@st.composite
def pairs(draw, max_two_alpha=300):
    ta = 2 * draw(st.integers(1, max_two_alpha // 2))
    b = draw(st.integers(-ta + 1, ta - 1).filter(lambda b: b % 2 and gcd(b, ta) == 1))
    return ta, b


class TestRational:
    @pytest.mark.parametrize("num,den", [(2, 6), (3, 9), (0, 4), (5, 4), (-5, 4), (1, 3), (1, 0)])
    def test_rejects(self, num, den):
        with pytest.raises(InputError):
            Rational(num, den)

    def test_parse(self):
        assert parse_fraction("21/34") == Rational(21, 34)
        assert parse_fraction(" -671/1732 ") == Rational(-671, 1732)

    @pytest.mark.parametrize("text", ["21", "a/b", "1/2/3", "", "12/18"])
    def test_parse_rejects(self, text):
        with pytest.raises(InputError):
            parse_fraction(text)

    def test_gcd_message(self):
        with pytest.raises(InputError, match="gcd/parity violation"):
            Rational(3, 18)


class TestExpand:
    @pytest.mark.parametrize(
        "b,ta,entries",
        [
            (21, 34, (1, 1, -1, -1, 1)),
            (13, 18, (1, 1, 1, -1, -1)),
            (1, 2, (1,)),
            (-671, 1732, (-1, 1, 2, 1, -1, 1, 1, 2, 1)),
            (31, 48, (1, 1, -2, 1, 1)),
            (41, 64, (1, 1, -2, -1, 1)),
            (11, 40, (2, 1, -1, -1, -1)),
            (71, 112, (1, 1, -1, 1, 1, 1, -1)),
            (381, 482, (1, 1, 1, 1, -2, -1, -1, 1, 1, 1, 1)),
            (47, 60, (1, 1, 1, 1, -1, -1, 1)),
        ],
    )
    def test_examples(self, b, ta, entries):
        cf = cf_of(b, ta)
        assert cf.entries == entries
        assert evaluate(cf) == Rational(b, ta)

    def test_doubled(self):
        assert cf_of(21, 34).doubled() == [2, 2, -2, -2, 2]

    @given(pairs(2000))
    def test_round_trip(self, p):
        ta, b = p
        cf = cf_of(b, ta)
        assert evaluate(cf) == Rational(b, ta)
        assert len(cf) % 2 == 1 and all(cf.entries)

    def test_negation(self):
        assert cf_of(-13, 18) == -cf_of(13, 18)


class TestEvaluate:
    def test_examples(self):
        assert evaluate(S(1, 1, -1, -1, 1)) == Rational(21, 34)
        assert evaluate(S(1)) == Rational(1, 2)
        assert evaluate(S(1, 1, -2, 1, 1)) == Rational(31, 48)

    def test_modified_same_value(self):
        assert evaluate(M(1, 0, 1, -1, -1, 1, -1)) == evaluate(S(2, -1, -1, 1, -1))

    def test_zero_denominator(self):
        # standard forms keep |t| >= 1, but a hand-built modified form can hit 0
        with pytest.raises(MalformedFractionError):
            evaluate(M(1, 0, -1))


class TestStandardForm:
    def test_even_length_rejected(self):
        with pytest.raises(MalformedFractionError):
            S(1, 1)

    def test_zero_entry_rejected(self):
        with pytest.raises(MalformedFractionError):
            S(1, 0, 1)


class TestModify:
    def test_examples(self):
        assert modify(S(2, -1, -1, 1, -1)).entries == (1, 0, 1, -1, -1, 1, -1)
        assert modify(S(1, 1, 1)).entries == (1, 1, 1)
        assert modify(S(2, -1, 2)).entries == (1, 0, 1, -1, 1, 0, 1)

    def test_standardize_examples(self):
        assert standardize(M(1, 0, 1, -1, -1, 1, -1)) == S(2, -1, -1, 1, -1)
        assert standardize(M(1, 1, 1, 1, -1, -2, -1)) == S(1, 1, 1, 1, -1, -2, -1)
        assert standardize(M(-1, 0, -1)) == S(-2)

    def test_bad_collapse(self):
        with pytest.raises(MalformedFractionError):
            standardize(M(1, 0, -1))

    def test_bad_modified(self):
        with pytest.raises(MalformedFractionError):
            M(2, 1, 1)

    @given(pairs())
    def test_round_trip_and_length(self, p):
        ta, b = p
        cf = cf_of(b, ta)
        m = modify(cf)
        assert standardize(m) == cf
        assert len(m) == sum(2 * abs(c) for c in cf.odd_entries()) - 1
        assert evaluate(m) == evaluate(cf)


class TestGraph:
    def test_example(self):
        g = build_graph(M(1, 0, 1, -1, -1, 0, -1))
        assert g.heights == (0, 1, 2, 1, 0)
        assert g.weights == (0, 0, -2, 0, 0)

    def test_single_edge(self):
        g = build_graph(S(1))
        assert g.heights == (0, 1) and g.weights == (0, 0)

    def test_11_40(self):
        g = build_graph(cf_of(11, 40))
        assert modify(cf_of(11, 40)).entries == (1, 0, 1, 1, -1, -1, -1)
        assert g.heights == (0, 1, 2, 1, 0) and g.h == 2 and g.q == 0

    @pytest.mark.parametrize("b,ta,ell", [(13, 18, 1), (47, 60, 2), (31, 48, 0), (-1, 4, -2)])
    def test_linking_number(self, b, ta, ell):
        assert linking_number(build_graph(cf_of(b, ta))) == ell

    @given(pairs())
    def test_edges_equal_lambda(self, p):
        ta, b = p
        cf = cf_of(b, ta)
        g = build_graph(cf)
        assert g.n_edges == canonical_decomposition(cf).lam
        assert g.heights[-1] == sum(g.u)

    def test_graph_round_trip(self):
        m = modify(cf_of(381, 482))
        assert build_graph(m).to_modified() == m


class TestDual:
    def test_worked_example(self):
        assert dual(S(2, -1, -1, 1, -1)) == S(1, 1, 1, 1, -1, -2, -1)

    def test_21_34(self):
        assert evaluate(dual(cf_of(21, 34))) == Rational(13, 34)

    def test_involution_example(self):
        s = S(1, 1, 1, -1, -1)
        assert dual(dual(s)) == s

    def test_block_example(self):
        s = S(1, 1, 2, -1, 1, -1, -2, 1, -2, -1, 2, 1, 2, 1, -2, -1, -2)
        want = S(2, 1, 1, 2, 1, 1, -1, -1, -1, -2, -1, -1, -1, 1, 1, 1, 2, 1, 1, -1, -1, -1, -2, -1, -1)
        assert dual_by_blocks(s) == want
        assert dual(s) == want

    @given(pairs())
    @settings(max_examples=200)
    def test_properties(self, p):
        ta, b = p
        cf = cf_of(b, ta)
        d = dual(cf)
        want = ta - b if b > 0 else -ta - b
        assert evaluate(d) == Rational(want, ta)
        assert dual(d) == cf
        cd = canonical_decomposition(cf)
        assert len(d) == 2 * (cd.lam - cd.rho) - 1
        assert dual_by_blocks(cf) == d


class TestCanon:
    def test_381_482(self):
        cd = canonical_decomposition(cf_of(381, 482))
        assert [b.raw() for b in cd.blocks] == [[1, 1, 1], [-2, -1, -1], [1, 1, 1]]
        assert cd.separators == (1, 1)
        assert (cd.lam, cd.rho) == (7, 3)

    def test_13_18(self):
        cd = canonical_decomposition(cf_of(13, 18))
        assert [b.raw() for b in cd.blocks] == [[1, 1, 1], [-1]]
        assert cd.separators == (-1,)
        assert (cd.lam, cd.rho) == (3, 1)

    def test_31_48(self):
        cd = canonical_decomposition(cf_of(31, 48))
        assert [b.raw() for b in cd.blocks] == [[1], [-2], [1]]
        assert cd.separators == (1, 1)
        assert (cd.lam, cd.rho) == (4, 0)

    def test_q_magnitudes(self):
        cd = canonical_decomposition(S(1, 1, 2, -1, 1, -1, -2, 1, -2, -1, 2, 1, 2, 1, -2, -1, -2))
        q1 = cd.blocks[1]
        assert q1.sign == -1 and q1.a == (2, 2) and q1.b == (-1,)
        assert cd.per_block[0] == ("P", 4, 1)

    def test_starts_with_q(self):
        cd = canonical_decomposition(cf_of(-671, 1732))
        assert cd.blocks[0].sign == -1
        assert (cd.lam, cd.rho) == (6, 0)

    def test_single_block(self):
        cd = canonical_decomposition(S(1, 1, 1))
        assert len(cd.blocks) == 1 and cd.separators == ()

    @given(pairs())
    def test_reassemble(self, p):
        ta, b = p
        cf = cf_of(b, ta)
        cd = canonical_decomposition(cf)
        assert isinstance(cd, CanonDecomp)
        assert cd.reassemble() == cf
        assert cd.lam == sum(lam for _, lam, _ in cd.per_block)
        assert cd.rho == sum(rho for _, _, rho in cd.per_block)
