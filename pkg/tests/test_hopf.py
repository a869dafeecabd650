import pytest
from hypothesis import given
from hypothesis import settings as hsettings

from conftest import Q
from conftest import Z
from conftest import poly
from qshuffle.enums import ProductMode
from qshuffle.exceptions import NotInvertibleError
from qshuffle.hopf import ETA_EPSILON
from qshuffle.hopf import S_DIAMOND
from qshuffle.hopf import S_QSH
from qshuffle.hopf import S_QSH_STAR
from qshuffle.hopf import TensorElement
from qshuffle.hopf import antipode
from qshuffle.hopf import antipode_explicit
from qshuffle.hopf import coassociativity_sides
from qshuffle.hopf import contraction_cf
from qshuffle.hopf import conv_inverse
from qshuffle.hopf import convolve
from qshuffle.hopf import counit
from qshuffle.hopf import deconcat
from qshuffle.hopf import derivation_d
from qshuffle.hopf import exp_rd
from qshuffle.hopf import infinitesimal_antipode_sides
from qshuffle.hopf import infinitesimal_sides
from qshuffle.hopf import is_inverse_pair
from qshuffle.hopf import reduced_deconcat
from qshuffle.hopf import reverse
from qshuffle.hopf import tensor_apply
from qshuffle.hopf import tensor_product
from qshuffle.series_maps import IDENTITY
from qshuffle.series_maps import REVERSE
from qshuffle.series_maps import SIGMA
from qshuffle.series_maps import PsiMap
from qshuffle.series_maps import first_disagreement
from qshuffle.series_maps import named_series
from qshuffle.series_maps import sigma_power
from qshuffle.word_algebra import NcPoly
from qshuffle.word_algebra import product
from qshuffle.word_algebra import words_up_to
from strategies import polys

WORDS = list(words_up_to([(1,), (2,)], 4))


class TestCoproduct:
    def test_deconcat(self):
        assert str(deconcat(poly("z1 z2"))) == "z1 z2 ⊗ 1 + z1 ⊗ z2 + 1 ⊗ z1 z2"
        assert str(deconcat(poly("1"))) == "1 ⊗ 1"

    def test_reduced(self):
        assert str(reduced_deconcat(poly("z1 z2"))) == "z1 ⊗ z2"
        assert not reduced_deconcat(poly("z3 + 2"))

    def test_pure(self):
        x = TensorElement.pure(poly("z1 + z2"), poly("z3"))
        assert x == TensorElement(Z, {(((1,),), ((3,),)): 1, (((2,),), ((3,),)): 1})

    def test_counit(self):
        assert counit(poly("3 + z1")) == 3
        assert counit(poly("z1")) == 0

    @hsettings(max_examples=30, deadline=None)
    @given(polys(Z, max_len=4))
    def test_coassociative(self, x):
        left, right = coassociativity_sides(x)
        assert left == right

    @pytest.mark.parametrize("mode", [ProductMode.QSH, ProductMode.QSH_STAR, ProductMode.SHUFFLE])
    def test_deconcat_is_multiplicative(self, mode):
        u, v = poly("z1 z2", Q), poly("z3 + eps*z1", Q)
        assert deconcat(product(mode, u, v)) == tensor_product(mode, deconcat(u), deconcat(v))

    def test_tensor_apply(self):
        image = tensor_apply(IDENTITY, REVERSE, deconcat(poly("z1 z2 z3")))
        expected = (
            TensorElement.pure(poly("1"), poly("z3 z2 z1"))
            + TensorElement.pure(poly("z1"), poly("z3 z2"))
            + TensorElement.pure(poly("z1 z2"), poly("z3"))
            + TensorElement.pure(poly("z1 z2 z3"), poly("1"))
        )
        assert image == expected


class TestConvolution:
    def test_eta_epsilon_is_unit(self):
        assert first_disagreement(convolve(ETA_EPSILON, SIGMA), SIGMA, WORDS, Z) is None
        assert first_disagreement(convolve(SIGMA, ETA_EPSILON), SIGMA, WORDS, Z) is None

    def test_inverse(self):
        inverse = conv_inverse(SIGMA)
        assert first_disagreement(convolve(inverse, SIGMA), ETA_EPSILON, WORDS, Z) is None
        assert first_disagreement(convolve(SIGMA, inverse), ETA_EPSILON, WORDS, Z) is None

    def test_inverse_needs_unit(self):
        with pytest.raises(NotInvertibleError):
            conv_inverse(contraction_cf(named_series("t", 3))).image(((1,),), Z)

    @pytest.mark.parametrize("name", ["t/(1-t)", "e^t-1", "log(1+t)"])
    def test_psi_and_contraction_are_inverse_pair(self, name):
        f = named_series(name, 4, Q.ring)
        result = is_inverse_pair(PsiMap(f), contraction_cf(f), Q, words_up_to([(1,), (2,)], 4))
        assert result, result

    def test_mismatched_pair_reports_first_word(self):
        result = is_inverse_pair(SIGMA, contraction_cf(named_series("t/(1+t)", 4)), Z, WORDS)
        assert not result
        assert result.law == "E = ηε + C⊙E"
        assert result.word == ((1,), (1,))


class TestAntipodes:
    def test_values(self):
        assert antipode("qsh", poly("z1")) == poly("-z1")
        assert antipode("qsh", poly("z1 z2")) == poly("z2 z1 + z3")
        assert antipode("qsh-star", poly("z1 z2")) == poly("z2 z1 - z3")
        assert antipode("diamond", poly("z1 z2")) == poly("-z1 z2 + z3")

    @pytest.mark.parametrize("alphabet", [Z, Q])
    def test_qsh_antipode(self, alphabet):
        assert first_disagreement(convolve(S_QSH, IDENTITY, ProductMode.QSH), ETA_EPSILON, WORDS, alphabet) is None
        assert first_disagreement(convolve(IDENTITY, S_QSH, ProductMode.QSH), ETA_EPSILON, WORDS, alphabet) is None

    @pytest.mark.parametrize("alphabet", [Z, Q])
    def test_qsh_star_antipode(self, alphabet):
        convolution = convolve(S_QSH_STAR, IDENTITY, ProductMode.QSH_STAR)
        assert first_disagreement(convolution, ETA_EPSILON, WORDS, alphabet) is None

    @hsettings(max_examples=30, deadline=None)
    @given(polys(Q, max_len=4))
    def test_explicit_formula(self, x):
        assert antipode_explicit(x) == antipode("qsh", x)

    def test_diamond_antipode(self):
        for word in WORDS:
            if len(word) < 2:
                continue
            left, right = infinitesimal_antipode_sides(word, Q)
            assert left == right, word
            left, right = infinitesimal_antipode_sides(word, Q, right_handed=True)
            assert left == right, word
        assert S_DIAMOND(poly("z1")) == poly("-z1")

    def test_reverse(self):
        assert reverse(poly("z1 z2 - z3")) == poly("z2 z1 - z3")


class TestDerivation:
    def test_values(self):
        assert derivation_d(poly("z1 z2 z3")) == poly("z3 z3 + z1 z5")
        assert not derivation_d(poly("z4 + 1"))

    def test_infinitesimal_compatibility(self):
        for w in words_up_to([(1,), (2,)], 2, minlen=1):
            for v in words_up_to([(1,), (3,)], 2, minlen=1):
                left, right = infinitesimal_sides(w, v, Q)
                assert left == right

    @hsettings(max_examples=30, deadline=None)
    @given(polys(Z, max_len=4))
    def test_exponential_is_sigma_power(self, x):
        assert exp_rd(3, x) == sigma_power(3, x)
        assert exp_rd(0, x) == x

    def test_exponential_symbolic(self):
        eps = Q.ring.variable("eps")
        x = poly("z1 z1 z1", Q)
        assert exp_rd(eps, x) == sigma_power(eps, x)
        assert exp_rd(1, NcPoly.one(Q)) == NcPoly.one(Q)
