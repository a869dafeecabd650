from fractions import Fraction

from hypothesis import strategies as st

from qshuffle.series_maps import FormalSeries
from qshuffle.word_algebra import Alphabet
from qshuffle.word_algebra import NcPoly


def rationals(max_denominator: int = 4, bound: int = 3):
    return st.fractions(min_value=-bound, max_value=bound, max_denominator=max_denominator)


def letters(alphabet: Alphabet, max_index: int = 3):
    return st.sampled_from(alphabet.sample_letters(max_index))


def words(alphabet: Alphabet, max_len: int = 3, max_index: int = 3):
    return st.lists(letters(alphabet, max_index), max_size=max_len).map(tuple)


@st.composite
def polys(draw, alphabet: Alphabet, max_terms: int = 3, max_len: int = 3, max_index: int = 3):
    terms = draw(
        st.dictionaries(
            words(alphabet, max_len, max_index),
            rationals().filter(bool),
            min_size=1,
            max_size=max_terms,
        )
    )
    return NcPoly(alphabet, terms)


@st.composite
def series(draw, order: int = 6, *, invertible: bool = False):
    coeffs = draw(st.lists(rationals(), min_size=order, max_size=order))
    if invertible and not coeffs[0]:
        coeffs[0] = Fraction(1)
    return FormalSeries.from_coefficients(coeffs)
