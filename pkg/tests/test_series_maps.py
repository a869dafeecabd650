from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import settings as hsettings

from conftest import E2
from conftest import Q
from conftest import Z
from conftest import poly
from qshuffle.exceptions import CompositionError
from qshuffle.exceptions import ParseError
from qshuffle.exceptions import TruncationError
from qshuffle.exceptions import UnknownNameError
from qshuffle.scalars import PolyRing
from qshuffle.series_maps import EXP
from qshuffle.series_maps import IDENTITY
from qshuffle.series_maps import LOG
from qshuffle.series_maps import REVERSE
from qshuffle.series_maps import SIGMA
from qshuffle.series_maps import SIGMA_INV
from qshuffle.series_maps import Composition
from qshuffle.series_maps import FormalSeries
from qshuffle.series_maps import PsiMap
from qshuffle.series_maps import T
from qshuffle.series_maps import angle_action
from qshuffle.series_maps import bracket_action
from qshuffle.series_maps import compositions
from qshuffle.series_maps import conjugate
from qshuffle.series_maps import first_disagreement
from qshuffle.series_maps import h_map
from qshuffle.series_maps import named_map
from qshuffle.series_maps import named_series
from qshuffle.series_maps import parse_pipeline
from qshuffle.series_maps import psi
from qshuffle.series_maps import psi_oracle
from qshuffle.series_maps import series_compose
from qshuffle.series_maps import series_inverse
from qshuffle.series_maps import series_power
from qshuffle.series_maps import sigma_power
from qshuffle.series_maps import sigma_power_map
from qshuffle.series_maps import tht_map
from qshuffle.word_algebra import ZAlphabet
from qshuffle.word_algebra import words_up_to
from strategies import polys
from strategies import series

WORDS = list(words_up_to([(1,), (2,)], 3))


def agree(left, right, alphabet=Z, words=WORDS):
    return first_disagreement(left, right, words, alphabet) is None


class TestCompositions:
    def test_enumeration(self):
        assert [c.parts for c in compositions(3)] == [(3,), (1, 2), (2, 1), (1, 1, 1)]
        assert len(compositions(5)) == 16

    def test_conjugate(self):
        assert conjugate(Composition((1, 2))).parts == (2, 1)
        assert conjugate(Composition((3,))).parts == (1, 1, 1)
        for composition in compositions(4):
            assert conjugate(conjugate(composition)) == composition

    def test_invalid(self):
        with pytest.raises(CompositionError):
            compositions(0)
        with pytest.raises(CompositionError):
            Composition((2, 0))
        with pytest.raises(CompositionError):
            Composition((1, 1)).blocks(((1,),))

    def test_bracket_action(self):
        word = ((1,), (2,), (3,))
        assert bracket_action(Composition((2, 1)), word, Z) == poly("z3 z3")
        assert bracket_action(Composition((1, 1, 1)), word, Z) == poly("z1 z2 z3")
        assert bracket_action(Composition((3,)), word, Z) == poly("z6")

    def test_angle_action(self):
        word = ((1,), (2,), (3,))
        assert angle_action(Composition((2, 1)), word, Z) == poly("z1 z5")
        assert angle_action(Composition((3,)), word, Z) == poly("z1 z2 z3")


class TestFormalSeries:
    def test_format(self):
        f = FormalSeries.from_coefficients([1, -1, Fraction(1, 2)])
        assert str(f) == "t - t^2 + 1/2*t^3"

    def test_named(self):
        assert named_series("e^t-1", 3).coeffs == (1, Fraction(1, 2), Fraction(1, 6))
        assert named_series("log(1+t)", 3).coeffs == (1, Fraction(-1, 2), Fraction(1, 3))
        half = named_series("(1+t)^p-1", 3, p=Fraction(1, 2))
        assert half.coeffs == (Fraction(1, 2), Fraction(-1, 8), Fraction(1, 16))
        with pytest.raises(UnknownNameError):
            named_series("sin(t)", 3)

    def test_geometric_inverse(self):
        geometric = named_series("t/(1-t)", 5)
        assert series_inverse(geometric) == named_series("t/(1+t)", 5)

    def test_power(self):
        assert series_power(named_series("t/(1-t)", 4), 2).coeffs == (0, 1, 2, 3)

    def test_truncation(self):
        f = FormalSeries.from_coefficients([1, 2])
        with pytest.raises(TruncationError):
            f.coefficient(3)
        with pytest.raises(TruncationError):
            series_compose(f, FormalSeries.from_coefficients([1, 2, 3]))

    @hsettings(max_examples=30, deadline=None)
    @given(series(order=5, invertible=True))
    def test_inverse_composes_to_identity(self, f):
        identity = named_series("t", 5)
        g = series_inverse(f)
        assert series_compose(f, g) == identity
        assert series_compose(g, f) == identity


class TestPsi:
    def test_sigma(self):
        assert SIGMA(poly("z2 z1")) == poly("z2 z1 + z3")
        assert SIGMA_INV(poly("z1 z2")) == poly("z1 z2 - z3")

    def test_t_signs_by_length(self):
        assert T(poly("z1")) == poly("-z1")
        assert T(poly("z1 z2")) == poly("z1 z2")
        assert T(poly("3 + z1 z2 z3")) == poly("3 - z1 z2 z3")

    def test_exp(self):
        assert EXP(poly("z1 z2")) == poly("z1 z2 + 1/2*z3")

    def test_h(self):
        assert h_map(2)(poly("z1 z1")) == poly("4*z1 z1 + z2")
        assert agree(h_map(1), IDENTITY)

    def test_sigma_power(self):
        assert sigma_power(2, poly("z1 z1")) == poly("z1 z1 + 2*z2")
        assert sigma_power(0, poly("z1 z1")) == poly("z1 z1")

    def test_sigma_power_symbolic(self):
        ring = PolyRing(("r",))
        alphabet = ZAlphabet(ring)
        image = sigma_power(ring.variable("r"), poly("z1 z1 z1", alphabet))
        assert image == poly("z1 z1 z1 + r*z2 z1 + r*z1 z2 + r^2*z3", alphabet)
        assert sigma_power_map("r")(poly("z1 z1", alphabet)) == poly("z1 z1 + r*z2", alphabet)

    def test_fixed_series_must_reach_word(self):
        f = FormalSeries.from_coefficients([1, 1])
        with pytest.raises(TruncationError):
            psi(f, poly("z1 z1 z1"))

    @hsettings(max_examples=25, deadline=None)
    @given(series(order=4), polys(Q, max_len=3))
    def test_recursion_matches_composition_sum(self, f, x):
        f = f.with_ring(Q.ring)
        assert psi(f, x) == psi_oracle(f, x)

    @hsettings(max_examples=20, deadline=None)
    @given(series(order=3), series(order=3))
    def test_composition_of_series(self, f, g):
        assert agree(PsiMap(f) @ PsiMap(g), PsiMap(series_compose(f, g)))

    @hsettings(max_examples=20, deadline=None)
    @given(polys(E2, max_len=3))
    def test_psi_on_euler_alphabet(self, x):
        f = named_series("e^t-1", 3)
        assert psi(f, x) == psi_oracle(f, x)


class TestIdentities:
    def test_sigma_inverse(self):
        assert agree(SIGMA @ SIGMA_INV, IDENTITY)
        assert agree(SIGMA_INV @ SIGMA, IDENTITY)

    def test_exp_log(self):
        assert agree(EXP @ LOG, IDENTITY)
        assert agree(LOG @ EXP, IDENTITY)

    def test_t_is_involution(self):
        assert agree(T @ T, IDENTITY)

    def test_t_sigma_t(self):
        assert agree(T @ SIGMA @ T, SIGMA_INV)

    def test_sigma_powers_add(self):
        assert agree(sigma_power_map(1) @ sigma_power_map(-1), IDENTITY)
        assert agree(sigma_power_map(1) @ sigma_power_map(1), sigma_power_map(2))

    def test_h_multiplicative(self):
        assert agree(h_map(2) @ h_map(Fraction(1, 2)), IDENTITY)
        assert agree(h_map(2) @ h_map(3), h_map(6))

    def test_tht(self):
        assert agree(T @ h_map(3) @ T, tht_map(3))

    def test_reverse(self):
        assert REVERSE(poly("z1 z2 z3 + z4")) == poly("z3 z2 z1 + z4")
        assert agree(REVERSE @ REVERSE, IDENTITY)


class TestPipeline:
    def test_named_tokens(self):
        assert named_map("sigma") is SIGMA
        assert named_map("T") is T
        assert named_map("H[1/2]")(poly("z1 z1")) == h_map(Fraction(1, 2))(poly("z1 z1"))
        assert named_map("series[1,1]")(poly("z2 z1")) == poly("z2 z1 + z3")

    def test_pipeline_applies_rightmost_first(self):
        assert agree(parse_pipeline("exp T log T"), EXP @ T @ LOG @ T)
        assert parse_pipeline("sigma T")(poly("z1")) == SIGMA(T(poly("z1")))

    @pytest.mark.parametrize("text", ["", "cos", "sigma cos"])
    def test_unknown(self, text):
        with pytest.raises(UnknownNameError):
            parse_pipeline(text)

    def test_symbolic_parameter_needs_variable(self):
        with pytest.raises(UnknownNameError):
            named_map("H[p]")(poly("z1 z1"))
        with pytest.raises(ParseError):
            named_map("series[a]")
