"""Deconcatenation coalgebra, convolution of linear maps, antipodes and D."""

import logging
import math
from collections.abc import Iterable
from collections.abc import Iterator
from collections.abc import Mapping
from dataclasses import dataclass

from .enums import AntipodeKind
from .enums import Messages
from .enums import ProductMode
from .exceptions import AlphabetMismatchError
from .exceptions import NotInvertibleError
from .scalars import Scalar
from .series_maps import REVERSE
from .series_maps import SIGMA
from .series_maps import SIGMA_INV
from .series_maps import FormalSeries
from .series_maps import NamedSeries
from .series_maps import T
from .series_maps import WordMap
from .series_maps import bracket_action
from .series_maps import compositions
from .word_algebra import EMPTY
from .word_algebra import Alphabet
from .word_algebra import NcPoly
from .word_algebra import Word
from .word_algebra import diamond_extend
from .word_algebra import diamond_letters
from .word_algebra import display_key
from .word_algebra import format_coefficient
from .word_algebra import product

logger = logging.getLogger(__name__)

WordPair = tuple[Word, Word]


class TensorElement:
    """Element of k<A> ⊗ k<A> as a mapping (u, v) -> coefficient."""

    __slots__ = ("alphabet", "_terms")

    def __init__(self, alphabet: Alphabet, terms: Mapping[WordPair, Scalar] | None = None):
        coerce = alphabet.ring.coerce
        clean = {}
        for key, coeff in (terms or {}).items():
            coeff = coerce(coeff)
            if coeff:
                clean[key] = coeff
        self.alphabet = alphabet
        self._terms = {key: clean[key] for key in sorted(clean, key=lambda k: (len(k[0]) + len(k[1]), k))}

    @classmethod
    def pure(cls, u: NcPoly, v: NcPoly) -> "TensorElement":
        """u ⊗ v."""
        if u.alphabet != v.alphabet:
            raise AlphabetMismatchError(detail=Messages.ALPHABET_MISMATCH % (u.alphabet, v.alphabet))
        terms: dict[WordPair, Scalar] = {}
        for wu, cu in u.items():
            for wv, cv in v.items():
                _accumulate(terms, (wu, wv), cu * cv)
        return cls(u.alphabet, terms)

    def items(self) -> Iterator[tuple[WordPair, Scalar]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other: "TensorElement") -> "TensorElement":
        terms = dict(self._terms)
        for key, coeff in other._terms.items():
            _accumulate(terms, key, coeff)
        return TensorElement(self.alphabet, terms)

    def __neg__(self) -> "TensorElement":
        return TensorElement(self.alphabet, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.alphabet == other.alphabet and self._terms == other._terms

    __hash__ = None

    def __str__(self) -> str:
        parts = []
        for (u, v), coeff in sorted(self._terms.items(), key=lambda kv: (display_key(kv[0][0]), display_key(kv[0][1]))):
            magnitude, negative = format_coefficient(self.alphabet.ring, coeff)
            body = f"{self.alphabet.format_word(u)} ⊗ {self.alphabet.format_word(v)}"
            if magnitude != "1":
                body = f"{magnitude}*{body}"
            if not parts:
                parts.append(f"-{body}" if negative else body)
            else:
                parts.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(parts) or "0"

    __repr__ = __str__


def _accumulate(terms: dict, key, coeff) -> None:
    value = terms.get(key)
    terms[key] = coeff if value is None else value + coeff


def tensor_apply(left: WordMap, right: WordMap, x: TensorElement) -> TensorElement:
    """(L1 ⊗ L2)(x)."""
    total = TensorElement(x.alphabet)
    for (u, v), coeff in x.items():
        image = TensorElement.pure(left.image(u, x.alphabet), right.image(v, x.alphabet))
        total = total + TensorElement(x.alphabet, {k: c * coeff for k, c in image.items()})
    return total


def tensor_product(mode: ProductMode | str, x: TensorElement, y: TensorElement) -> TensorElement:
    """Componentwise product (a ⊗ b)(c ⊗ d) = (a•c) ⊗ (b•d)."""
    alphabet = x.alphabet
    total = TensorElement(alphabet)
    for (a, b), cx in x.items():
        for (c, d), cy in y.items():
            left = product(mode, NcPoly(alphabet, {a: cx}), NcPoly(alphabet, {c: cy}))
            right = product(mode, NcPoly(alphabet, {b: 1}), NcPoly(alphabet, {d: 1}))
            total = total + TensorElement.pure(left, right)
    return total


def splits(word: Word) -> Iterator[WordPair]:
    for i in range(len(word) + 1):
        yield word[:i], word[i:]


def deconcat(x: NcPoly) -> TensorElement:
    """Δ(w) = Σ_{uv=w} u ⊗ v."""
    terms: dict[WordPair, Scalar] = {}
    for word, coeff in x.items():
        for pair in splits(word):
            _accumulate(terms, pair, coeff)
    return TensorElement(x.alphabet, terms)


def reduced_deconcat(x: NcPoly) -> TensorElement:
    """Δ̃(w) = Δ(w) - w ⊗ 1 - 1 ⊗ w, and Δ̃(1) = 0."""
    terms: dict[WordPair, Scalar] = {}
    for word, coeff in x.items():
        for u, v in splits(word):
            if u and v:
                _accumulate(terms, (u, v), coeff)
    return TensorElement(x.alphabet, terms)


def coassociativity_sides(x: NcPoly) -> tuple[dict, dict]:
    """(Δ⊗id)Δ(x) and (id⊗Δ)Δ(x) as mappings on word triples."""
    left: dict = {}
    right: dict = {}
    for word, coeff in x.items():
        for u, v in splits(word):
            for u1, u2 in splits(u):
                _accumulate(left, (u1, u2, v), coeff)
            for v1, v2 in splits(v):
                _accumulate(right, (u, v1, v2), coeff)
    return {k: c for k, c in left.items() if c}, {k: c for k, c in right.items() if c}


def counit(x: NcPoly) -> Scalar:
    """ε: the coefficient of the empty word."""
    return x.constant_term()


ETA_EPSILON = WordMap(lambda w, a: NcPoly.one(a) if not w else NcPoly.zero(a), "eta_eps")


def convolve(left: WordMap, right: WordMap, mode: ProductMode | str = ProductMode.CONCAT) -> WordMap:
    """(L1 ⊙ L2)(w) = Σ_{uv=w} L1(u)·L2(v), the product being concatenation by default."""

    def rule(word: Word, alphabet: Alphabet) -> NcPoly:
        total = NcPoly.zero(alphabet)
        for u, v in splits(word):
            total = total + product(mode, left.image(u, alphabet), right.image(v, alphabet))
        return total

    return WordMap(rule, f"({left.name} ⊙ {right.name})")


def conv_inverse(mapping: WordMap) -> WordMap:
    """L^{⊙(-1)}, by induction on length: inv(w) = -Σ_{uv=w, v≠1} inv(u)L(v)."""

    def rule(word: Word, alphabet: Alphabet) -> NcPoly:
        unit = mapping.image(EMPTY, alphabet)
        if unit != NcPoly.one(alphabet):
            raise NotInvertibleError(detail=Messages.NOT_INVERTIBLE % (mapping.name, "the convolution algebra"))
        if not word:
            return unit
        total = NcPoly.zero(alphabet)
        for i in range(len(word)):
            total = total - product(ProductMode.CONCAT, inverse.image(word[:i], alphabet), mapping.image(word[i:], alphabet))
        return total

    inverse = WordMap(rule, f"{mapping.name}^-1")
    return inverse


def contraction_cf(f: FormalSeries | NamedSeries) -> WordMap:
    """C_f(a_1...a_n) = c_n a_1⋄...⋄a_n and C_f(1) = 0."""

    def rule(word: Word, alphabet: Alphabet) -> NcPoly:
        if not word:
            return NcPoly.zero(alphabet)
        if isinstance(f, NamedSeries):
            c = f.coefficient(len(word), alphabet.ring)
        else:
            c = alphabet.ring.coerce(f.coefficient(len(word)))
        return NcPoly.from_lincomb(alphabet, diamond_letters(alphabet, word)).scale(c)

    return WordMap(rule, f"C[{f}]")


@dataclass(frozen=True)
class InversePairResult:
    ok: bool
    law: str | None = None
    word: Word | None = None
    left: str | None = None
    right: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_inverse_pair(
    expansion: WordMap,
    contraction: WordMap,
    alphabet: Alphabet,
    words: Iterable[Word],
) -> InversePairResult:
    """Check C(1)=0, E(1)=1, Δ̃C(w)=0, ΔE(w)=(E⊗E)Δ(w) and E = ηε + C⊙E.

    Words are visited in the given order (shortest first gives the smallest
    witness); the first failing law is reported.
    """
    one = NcPoly.one(alphabet)
    if contraction.image(EMPTY, alphabet):
        return InversePairResult(False, "C(1) = 0", EMPTY, str(contraction.image(EMPTY, alphabet)), "0")
    if expansion.image(EMPTY, alphabet) != one:
        return InversePairResult(False, "E(1) = 1", EMPTY, str(expansion.image(EMPTY, alphabet)), "1")
    expanded = ETA_EPSILON + convolve(contraction, expansion)
    for word in words:
        if not word:
            continue
        c_image = contraction.image(word, alphabet)
        primitive_defect = reduced_deconcat(c_image)
        if primitive_defect:
            return InversePairResult(False, "C(w) primitive", word, str(primitive_defect), "0")
        e_image = expansion.image(word, alphabet)
        left = deconcat(e_image)
        right = tensor_apply(expansion, expansion, deconcat(NcPoly(alphabet, {word: 1})))
        if left != right:
            return InversePairResult(False, "ΔE = (E⊗E)Δ", word, str(left), str(right))
        rebuilt = expanded.image(word, alphabet)
        if rebuilt != e_image:
            return InversePairResult(False, "E = ηε + C⊙E", word, str(e_image), str(rebuilt))
    return InversePairResult(True)


def reverse(x: NcPoly) -> NcPoly:
    """R(a_1...a_n) = a_n...a_1."""
    return REVERSE(x)


S_QSH = SIGMA @ T @ REVERSE
S_QSH_STAR = T @ SIGMA @ REVERSE
S_DIAMOND = -SIGMA_INV

ANTIPODES = {
    AntipodeKind.QSH: S_QSH,
    AntipodeKind.QSH_STAR: S_QSH_STAR,
    AntipodeKind.DIAMOND: S_DIAMOND,
}


def antipode(which: AntipodeKind | str, x: NcPoly) -> NcPoly:
    """S_* = ΣTR, S_⋆ = TΣR and the infinitesimal antipode S_⋄ = -Σ^{-1}."""
    return ANTIPODES[AntipodeKind(which)](x)


def antipode_explicit(x: NcPoly) -> NcPoly:
    """S_*(a_1...a_n) = (-1)^n Σ_{I} I[a_n...a_1]."""

    def rule(word: Word) -> NcPoly:
        if not word:
            return NcPoly.one(x.alphabet)
        backwards = word[::-1]
        total = NcPoly.zero(x.alphabet)
        for composition in compositions(len(word)):
            total = total + bracket_action(composition, backwards, x.alphabet)
        return total if len(word) % 2 == 0 else -total

    return x.map_words(rule)


def derivation_d(x: NcPoly) -> NcPoly:
    """D(a_1...a_n) = Σ_i a_1...a_i ⋄ a_{i+1}...a_n."""

    def rule(word: Word) -> NcPoly:
        total = NcPoly.zero(x.alphabet)
        for i in range(1, len(word)):
            total = total + diamond_extend(NcPoly(x.alphabet, {word[:i]: 1}), NcPoly(x.alphabet, {word[i:]: 1}))
        return total

    return x.map_words(rule)


DERIVATION = WordMap(lambda w, a: derivation_d(NcPoly(a, {w: 1})), "D")


def exp_rd(rho: Scalar, x: NcPoly) -> NcPoly:
    """e^{ρD}(x) = Σ_k ρ^k D^k(x)/k!; the sum stops since D lowers length."""
    ring = x.ring
    rho = ring.coerce(rho)
    total = x
    term = x
    k = 0
    while True:
        k += 1
        term = derivation_d(term)
        if not term:
            break
        total = total + term.scale(ring.divide(ring.power(rho, k), math.factorial(k)))
    return total


def infinitesimal_sides(w: Word, v: Word, alphabet: Alphabet) -> tuple[TensorElement, TensorElement]:
    """Δ̃(w⋄v) and Σ (w⋄v_(1)) ⊗ v_(2) + Σ w_(1) ⊗ (w_(2)⋄v)."""
    wp, vp = NcPoly(alphabet, {w: 1}), NcPoly(alphabet, {v: 1})
    left = reduced_deconcat(diamond_extend(wp, vp))
    right = TensorElement(alphabet)
    for (v1, v2), coeff in reduced_deconcat(vp).items():
        right = right + TensorElement.pure(diamond_extend(wp, NcPoly(alphabet, {v1: coeff})), NcPoly(alphabet, {v2: 1}))
    for (w1, w2), coeff in reduced_deconcat(wp).items():
        right = right + TensorElement.pure(NcPoly(alphabet, {w1: coeff}), diamond_extend(NcPoly(alphabet, {w2: 1}), vp))
    return left, right


def infinitesimal_antipode_sides(word: Word, alphabet: Alphabet, *, right_handed: bool = False) -> tuple[NcPoly, NcPoly]:
    """Σ Σ^{-1}(w_(1))⋄w_(2) vs w - Σ^{-1}(w), or the mirrored sum when ``right_handed``."""
    x = NcPoly(alphabet, {word: 1})
    total = NcPoly.zero(alphabet)
    for (w1, w2), coeff in reduced_deconcat(x).items():
        a, b = NcPoly(alphabet, {w1: coeff}), NcPoly(alphabet, {w2: 1})
        if right_handed:
            total = total + diamond_extend(a, SIGMA_INV(b))
        else:
            total = total + diamond_extend(SIGMA_INV(a), b)
    return total, x - SIGMA_INV(x)
