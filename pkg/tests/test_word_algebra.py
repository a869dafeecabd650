from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import settings as hsettings

from conftest import E3
from conftest import Q
from conftest import Z
from conftest import ZERO
from conftest import poly
from qshuffle.enums import ProductMode
from qshuffle.exceptions import AlphabetMismatchError
from qshuffle.exceptions import ConfigError
from qshuffle.exceptions import LetterError
from qshuffle.scalars import RationalRing
from qshuffle.word_algebra import EMPTY
from qshuffle.word_algebra import NcPoly
from qshuffle.word_algebra import QAlphabet
from qshuffle.word_algebra import concat
from qshuffle.word_algebra import diamond_extend
from qshuffle.word_algebra import diamond_letters
from qshuffle.word_algebra import make_alphabet
from qshuffle.word_algebra import power
from qshuffle.word_algebra import product
from qshuffle.word_algebra import product_many
from qshuffle.word_algebra import qsh
from qshuffle.word_algebra import qsh_star
from qshuffle.word_algebra import shuffle
from qshuffle.word_algebra import words_up_to
from strategies import polys


class TestAlphabets:
    def test_z_diamond(self):
        assert Z.diamond((2,), (3,)) == {(5,): 1}

    def test_q_diamond(self):
        eps = Q.ring.variable("eps")
        assert Q.diamond((1,), (1,)) == {(2,): Q.ring.one, (1,): eps}

    def test_euler_diamond_wraps(self):
        assert E3.diamond((1, 2), (2, 2)) == {(3, 1): 1}
        assert E3.validate_letter((1, 5)) == (1, 2)

    def test_zero_diamond(self):
        assert ZERO.diamond((1,), (2,)) == {}

    def test_diamond_letters(self):
        assert diamond_letters(Z, [(1,), (2,), (3,)]) == {(6,): 1}
        assert diamond_letters(ZERO, [(1,), (2,)]) == {}

    def test_parse_letter(self):
        assert Z.parse_letter("z12") == (12,)
        assert E3.parse_letter("z2,1") == (2, 1)
        for bad in ("z0", "z1,1", "x1"):
            with pytest.raises(LetterError):
                Z.parse_letter(bad)
        with pytest.raises(LetterError):
            E3.parse_letter("z2")

    def test_make_alphabet(self):
        assert make_alphabet("z") == Z
        assert make_alphabet("q") == Q
        assert make_alphabet("euler:3") == E3
        assert make_alphabet("zero") == ZERO

    @pytest.mark.parametrize("spec", ["euler:1", "euler:x", "z:2", "w"])
    def test_invalid_alphabets(self, spec):
        with pytest.raises(ConfigError):
            make_alphabet(spec)

    def test_q_needs_eps(self):
        with pytest.raises(ConfigError):
            QAlphabet(RationalRing())


class TestNcPoly:
    def test_printing(self):
        assert str(qsh(poly("z1"), poly("z1"))) == "2*z1 z1 + z2"
        assert str(NcPoly.zero(Z)) == "0"
        assert str(NcPoly.one(Z)) == "1"
        assert str(poly("-1/2*z2 z1 + 3")) == "-1/2*z2 z1 + 3"

    def test_printing_poly_coefficients(self):
        assert str(poly("(1 + eps)*z1 - eps*z2", Q)) == "(eps + 1)*z1 - eps*z2"

    def test_cancellation(self):
        assert not poly("z1 - z1")
        assert poly("z1 + z2") - poly("z2") == poly("z1")

    def test_alphabet_mismatch(self):
        with pytest.raises(AlphabetMismatchError):
            poly("z1") + poly("z1", ZERO)
        with pytest.raises(AlphabetMismatchError):
            qsh(poly("z1"), poly("z1", ZERO))

    def test_scale(self):
        assert poly("z1 + z2").scale(Fraction(1, 2)) == poly("1/2*z1 + 1/2*z2")
        assert 2 * poly("z1") == poly("2*z1")

    def test_accessors(self):
        x = poly("3 + z2 z1 - z1")
        assert x.constant_term() == 3
        assert x.max_length() == 2
        assert x.homogeneous_part(1) == poly("-z1")
        assert x.coefficient(((2,), (1,))) == 1


class TestProducts:
    def test_concat(self):
        assert concat(poly("z2"), poly("z1")) == poly("z2 z1")
        assert concat(poly("1"), poly("z1 z2")) == poly("z1 z2")
        assert concat(poly("z1 + z2"), poly("z1")) == poly("z1 z1 + z2 z1")

    def test_qsh(self):
        assert qsh(poly("z1"), poly("z1")) == poly("2*z1 z1 + z2")
        assert qsh(poly("z2 z1"), poly("1")) == poly("z2 z1")
        assert qsh(poly("z1", ZERO), poly("z1", ZERO)) == poly("2*z1 z1", ZERO)

    def test_qsh_over_q(self):
        assert qsh(poly("z1", Q), poly("z1", Q)) == poly("2*z1 z1 + z2 + eps*z1", Q)

    def test_qsh_star(self):
        assert qsh_star(poly("z2"), poly("z1")) == poly("z2 z1 + z1 z2 - z3")
        assert qsh_star(poly("1"), poly("z3 z1")) == poly("z3 z1")
        assert qsh_star(poly("z1", ZERO), poly("z1", ZERO)) == poly("2*z1 z1", ZERO)

    def test_shuffle(self):
        assert shuffle(poly("z1"), poly("z2")) == poly("z1 z2 + z2 z1")
        assert shuffle(poly("z1"), poly("z1")) == poly("2*z1 z1")
        assert shuffle(poly("z1 z2"), poly("z3")) == poly("z1 z2 z3 + z1 z3 z2 + z3 z1 z2")

    def test_diamond_extend(self):
        assert diamond_extend(poly("z1"), poly("z2 z3")) == poly("z3 z3")
        assert diamond_extend(poly("1"), poly("z2 z3")) == poly("z2 z3")
        assert diamond_extend(poly("z1 z2"), poly("z3 z4")) == poly("z1 z5 z4")

    def test_euler_qsh(self):
        left, right = poly("z1,1", E3), poly("z2,2", E3)
        assert qsh(left, right) == poly("z1,1 z2,2 + z2,2 z1,1 + z3,0", E3)

    def test_mode_dispatch(self):
        x, y = poly("z1"), poly("z2")
        assert product(ProductMode.QSH, x, y) == qsh(x, y)
        assert product("bigstar", x, y) == qsh_star(x, y)
        assert product("*", x, y) == qsh(x, y)
        assert product_many("concat", [x, y, x]) == poly("z1 z2 z1")
        assert power(ProductMode.SHUFFLE, x, 3) == poly("6*z1 z1 z1")
        assert power(ProductMode.QSH, x, 0) == NcPoly.one(Z)

    def test_words_up_to(self):
        words = list(words_up_to([(1,), (2,)], 2))
        assert len(words) == 7
        assert words[0] == EMPTY
        assert list(words_up_to([(1,)], 3, minlen=2)) == [((1,), (1,)), ((1,), (1,), (1,))]


class TestLaws:
    @hsettings(max_examples=40, deadline=None)
    @given(polys(Z), polys(Z))
    def test_qsh_commutative(self, u, v):
        assert qsh(u, v) == qsh(v, u)
        assert qsh_star(u, v) == qsh_star(v, u)
        assert shuffle(u, v) == shuffle(v, u)

    @hsettings(max_examples=25, deadline=None)
    @given(polys(Q, max_terms=2, max_len=2), polys(Q, max_terms=2, max_len=2), polys(Q, max_terms=2, max_len=2))
    def test_qsh_associative_over_q(self, u, v, w):
        assert qsh(qsh(u, v), w) == qsh(u, qsh(v, w))
        assert qsh_star(qsh_star(u, v), w) == qsh_star(u, qsh_star(v, w))

    @hsettings(max_examples=25, deadline=None)
    @given(polys(E3, max_terms=2, max_len=2), polys(E3, max_terms=2, max_len=2), polys(E3, max_terms=2, max_len=2))
    def test_diamond_associative(self, u, v, w):
        assert diamond_extend(diamond_extend(u, v), w) == diamond_extend(u, diamond_extend(v, w))

    @hsettings(max_examples=30, deadline=None)
    @given(polys(ZERO), polys(ZERO))
    def test_zero_alphabet_is_shuffle(self, u, v):
        assert qsh(u, v) == shuffle(u, v)
        assert qsh_star(u, v) == shuffle(u, v)
