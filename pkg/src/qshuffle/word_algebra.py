"""Words over an alphabet with a commutative diamond product, and k<A>.

Letters are tuples of ints: ``(i,)`` for ``z_i`` and ``(i, j)`` for the Euler
letter ``z_{i,j}``. A word is a tuple of letters, the empty tuple being ``1``.
:class:`NcPoly` is a finitely supported linear combination of words whose
coefficients live in the alphabet's scalar ring.
"""

import logging
import re
from collections.abc import Callable
from collections.abc import Iterable
from collections.abc import Iterator
from collections.abc import Mapping
from dataclasses import dataclass
from dataclasses import replace
from functools import cache
from functools import reduce
from typing import Self

from .caching import InMemoryCache
from .caching import cached
from .enums import AlphabetKind
from .enums import Messages
from .enums import ProductMode
from .exceptions import AlphabetMismatchError
from .exceptions import ConfigError
from .exceptions import LetterError
from .scalars import PolyRing
from .scalars import RationalRing
from .scalars import Scalar
from .scalars import ScalarRing

logger = logging.getLogger(__name__)

Letter = tuple[int, ...]
Word = tuple[Letter, ...]
LinComb = dict[Letter, Scalar]

EMPTY: Word = ()

_LETTER_RE = re.compile(r"^z(\d+)(?:,(\d+))?$")


@dataclass(frozen=True)
class Alphabet:
    """Letters plus an associative, commutative product on their span."""

    ring: ScalarRing = RationalRing()
    kind = AlphabetKind.Z

    def diamond(self, a: Letter, b: Letter) -> LinComb:
        raise NotImplementedError

    def validate_letter(self, letter: Letter) -> Letter:
        if len(letter) != 1 or letter[0] < 1:
            raise LetterError(detail=Messages.LETTER_OUT_OF_RANGE % (letter, self))
        return letter

    def letter(self, *index: int) -> Letter:
        return self.validate_letter(tuple(index))

    def parse_letter(self, text: str) -> Letter:
        match = _LETTER_RE.match(text)
        if not match:
            raise LetterError(detail=Messages.LETTER_OUT_OF_RANGE % (text, self))
        first, second = match.groups()
        index = (int(first),) if second is None else (int(first), int(second))
        return self.validate_letter(index)

    def format_letter(self, letter: Letter) -> str:
        return "z" + ",".join(str(i) for i in letter)

    def format_word(self, word: Word) -> str:
        return " ".join(self.format_letter(a) for a in word) or "1"

    def sample_letters(self, max_index: int) -> list[Letter]:
        """The bounded letter universe used by the verification suites."""
        return [(i,) for i in range(1, max_index + 1)]

    def with_ring(self, ring: ScalarRing) -> Self:
        return replace(self, ring=ring)

    def weight(self, letter: Letter) -> int:
        return letter[0]

    def __str__(self) -> str:
        return str(self.kind)


@dataclass(frozen=True)
class ZAlphabet(Alphabet):
    """z_i ⋄ z_j = z_{i+j}."""

    kind = AlphabetKind.Z

    def diamond(self, a: Letter, b: Letter) -> LinComb:
        return {(a[0] + b[0],): self.ring.one}


@dataclass(frozen=True)
class QAlphabet(Alphabet):
    """z_i ⋄ z_j = z_{i+j} + eps z_{i+j-1}, with eps standing for 1 - q."""

    kind = AlphabetKind.Q

    def __post_init__(self):
        if not self.ring.has_parameter("eps"):
            raise ConfigError(detail=Messages.CONFIG_ALPHABET_RING % ("q", "a ring with the parameter eps"))

    @property
    def eps(self) -> Scalar:
        return self.ring.parameter("eps")

    def diamond(self, a: Letter, b: Letter) -> LinComb:
        k = a[0] + b[0]
        return {(k,): self.ring.one, (k - 1,): self.eps}


@dataclass(frozen=True)
class EulerAlphabet(Alphabet):
    """z_{i,j} ⋄ z_{p,q} = z_{i+p, j+q mod r}."""

    r: int = 2
    kind = AlphabetKind.EULER

    def __post_init__(self):
        if self.r < 2:
            raise ConfigError(detail=Messages.RANGE % ("Euler root order r", "r >= 2"))

    def validate_letter(self, letter: Letter) -> Letter:
        if len(letter) != 2 or letter[0] < 1 or letter[1] < 0:
            raise LetterError(detail=Messages.LETTER_OUT_OF_RANGE % (letter, self))
        return (letter[0], letter[1] % self.r)

    def diamond(self, a: Letter, b: Letter) -> LinComb:
        return {(a[0] + b[0], (a[1] + b[1]) % self.r): self.ring.one}

    def sample_letters(self, max_index: int) -> list[Letter]:
        return [(i, j) for i in range(1, max_index + 1) for j in range(self.r)]

    def __str__(self) -> str:
        return f"euler:{self.r}"


@dataclass(frozen=True)
class ZeroAlphabet(Alphabet):
    """Trivial diamond; both quasi-shuffles reduce to the shuffle."""

    kind = AlphabetKind.ZERO

    def diamond(self, a: Letter, b: Letter) -> LinComb:
        return {}


def make_alphabet(spec: str, ring: ScalarRing | None = None) -> Alphabet:
    """Build an alphabet from ``z``, ``q``, ``euler:<r>`` or ``zero``."""
    kind, _, rest = spec.strip().partition(":")
    try:
        kind = AlphabetKind(kind)
    except ValueError:
        raise ConfigError(detail=Messages.INVALID_SPEC % ("alphabet", spec)) from None
    if kind is AlphabetKind.EULER:
        if not rest.isdigit():
            raise ConfigError(detail=Messages.INVALID_SPEC % ("alphabet", spec))
        return EulerAlphabet(ring or RationalRing(), int(rest))
    if rest:
        raise ConfigError(detail=Messages.INVALID_SPEC % ("alphabet", spec))
    if kind is AlphabetKind.Q:
        if ring is None:
            ring = PolyRing(("eps",))
        return QAlphabet(ring)
    alphabet_class = ZAlphabet if kind is AlphabetKind.Z else ZeroAlphabet
    return alphabet_class(ring or RationalRing())


def _add_term(target: dict, key, coeff) -> None:
    value = target.get(key)
    target[key] = coeff if value is None else value + coeff


def _prune(terms: dict) -> dict:
    return {key: value for key, value in terms.items() if value}


def length_lex_key(word: Word) -> tuple:
    return len(word), word


def display_key(word: Word) -> tuple:
    return -len(word), word


def format_coefficient(ring: ScalarRing, coeff: Scalar) -> tuple[str, bool]:
    """Printed magnitude and sign of a coefficient."""
    text = ring.format(coeff)
    if not ring.is_atomic(coeff):
        return f"({text})", False
    if text.startswith("-"):
        return text[1:], True
    return text, False


class NcPoly:
    """A finitely supported linear combination of words."""

    __slots__ = ("alphabet", "_terms", "_hash")

    def __init__(self, alphabet: Alphabet, terms: Mapping[Word, Scalar] | None = None):
        coerce = alphabet.ring.coerce
        clean = {}
        for word, coeff in (terms or {}).items():
            coeff = coerce(coeff)
            if coeff:
                clean[tuple(word)] = coeff
        self.alphabet = alphabet
        self._terms = {word: clean[word] for word in sorted(clean, key=length_lex_key)}
        self._hash = None

    @classmethod
    def zero(cls, alphabet: Alphabet) -> Self:
        return cls(alphabet)

    @classmethod
    def one(cls, alphabet: Alphabet) -> Self:
        return cls(alphabet, {EMPTY: 1})

    @classmethod
    def word(cls, alphabet: Alphabet, word: Iterable[Letter], coeff: Scalar = 1) -> Self:
        return cls(alphabet, {tuple(alphabet.validate_letter(tuple(a)) for a in word): coeff})

    @classmethod
    def letter(cls, alphabet: Alphabet, *index: int) -> Self:
        return cls(alphabet, {(alphabet.letter(*index),): 1})

    @classmethod
    def from_lincomb(cls, alphabet: Alphabet, comb: LinComb) -> Self:
        return cls(alphabet, {(letter,): coeff for letter, coeff in comb.items()})

    @property
    def ring(self) -> ScalarRing:
        return self.alphabet.ring

    def items(self) -> Iterator[tuple[Word, Scalar]]:
        return iter(self._terms.items())

    def words(self) -> list[Word]:
        return list(self._terms)

    def coefficient(self, word: Word) -> Scalar:
        return self._terms.get(tuple(word), self.ring.zero)

    def constant_term(self) -> Scalar:
        return self.coefficient(EMPTY)

    def max_length(self) -> int:
        return max((len(word) for word in self._terms), default=0)

    def is_letter_combination(self) -> bool:
        return all(len(word) == 1 for word in self._terms)

    def homogeneous_part(self, length: int) -> "NcPoly":
        return NcPoly(self.alphabet, {w: c for w, c in self._terms.items() if len(w) == length})

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def _check(self, other: "NcPoly") -> None:
        if self.alphabet != other.alphabet:
            raise AlphabetMismatchError(detail=Messages.ALPHABET_MISMATCH % (self.alphabet, other.alphabet))

    def __add__(self, other: "NcPoly") -> "NcPoly":
        if not isinstance(other, NcPoly):
            return NotImplemented
        self._check(other)
        terms = dict(self._terms)
        for word, coeff in other._terms.items():
            _add_term(terms, word, coeff)
        return NcPoly(self.alphabet, terms)

    def __neg__(self) -> "NcPoly":
        return NcPoly(self.alphabet, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other: "NcPoly") -> "NcPoly":
        if not isinstance(other, NcPoly):
            return NotImplemented
        return self + (-other)

    def scale(self, coeff: Scalar) -> "NcPoly":
        coeff = self.ring.coerce(coeff)
        return NcPoly(self.alphabet, {w: c * coeff for w, c in self._terms.items()})

    def __mul__(self, coeff) -> "NcPoly":
        if isinstance(coeff, NcPoly):
            return NotImplemented
        return self.scale(coeff)

    def __rmul__(self, coeff) -> "NcPoly":
        return self.scale(coeff)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NcPoly):
            return NotImplemented
        return self.alphabet == other.alphabet and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.alphabet, frozenset(self._terms.items())))
        return self._hash

    def map_words(self, rule: Callable[[Word], "NcPoly"]) -> "NcPoly":
        """Linear extension of a word-level rule."""
        terms: dict[Word, Scalar] = {}
        for word, coeff in self._terms.items():
            for image_word, image_coeff in rule(word).items():
                _add_term(terms, image_word, coeff * image_coeff)
        return NcPoly(self.alphabet, terms)

    def map_coefficients(self, fn: Callable[[Scalar], Scalar], alphabet: Alphabet | None = None) -> "NcPoly":
        alphabet = alphabet or self.alphabet
        return NcPoly(alphabet, {w: fn(c) for w, c in self._terms.items()})

    def __str__(self) -> str:
        parts: list[str] = []
        for word in sorted(self._terms, key=display_key):
            magnitude, negative = format_coefficient(self.ring, self._terms[word])
            if not word:
                body = magnitude
            elif magnitude == "1":
                body = self.alphabet.format_word(word)
            else:
                body = f"{magnitude}*{self.alphabet.format_word(word)}"
            if not parts:
                parts.append(f"-{body}" if negative else body)
            else:
                parts.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(parts) or "0"

    def __repr__(self) -> str:
        return f"NcPoly({self})"


def check_alphabets(*polys: NcPoly) -> Alphabet:
    alphabet = polys[0].alphabet
    for poly in polys[1:]:
        if poly.alphabet != alphabet:
            raise AlphabetMismatchError(detail=Messages.ALPHABET_MISMATCH % (alphabet, poly.alphabet))
    return alphabet


def diamond_letters(alphabet: Alphabet, letters: Iterable[Letter]) -> LinComb:
    """a_1 ⋄ ... ⋄ a_k as an element of kA."""
    letters = list(letters)
    current: LinComb = {letters[0]: alphabet.ring.one}
    for b in letters[1:]:
        step: LinComb = {}
        for a, coeff in current.items():
            for c, c_coeff in alphabet.diamond(a, b).items():
                _add_term(step, c, coeff * c_coeff)
        current = _prune(step)
    return current


_products = InMemoryCache(maxsize=500_000)


def _pair_key(func, args, kwargs):
    return args


@cached(namespace="quasi-shuffle", key_builder=_pair_key, backend=_products)
def _quasi_shuffle_words(alphabet: Alphabet, u: Word, v: Word, sign: int) -> tuple[tuple[Word, Scalar], ...]:
    """Word-level rule aw·bv = a(w·bv) + b(aw·v) + sign (a⋄b)(w·v).

    ``sign`` is 1 for *, -1 for ⋆ and 0 for the shuffle.
    """

    @cache
    def step(i: int, j: int) -> dict[Word, Scalar]:
        if i == len(u):
            return {v[j:]: alphabet.ring.one}
        if j == len(v):
            return {u[i:]: alphabet.ring.one}
        a, b = u[i], v[j]
        terms: dict[Word, Scalar] = {}
        for word, coeff in step(i + 1, j).items():
            _add_term(terms, (a, *word), coeff)
        for word, coeff in step(i, j + 1).items():
            _add_term(terms, (b, *word), coeff)
        if sign:
            for c, c_coeff in alphabet.diamond(a, b).items():
                factor = c_coeff if sign > 0 else -c_coeff
                for word, coeff in step(i + 1, j + 1).items():
                    _add_term(terms, (c, *word), factor * coeff)
        return _prune(terms)

    return tuple(step(0, 0).items())


def _bilinear(u: NcPoly, v: NcPoly, rule: Callable[[Word, Word], Iterable[tuple[Word, Scalar]]]) -> NcPoly:
    alphabet = check_alphabets(u, v)
    terms: dict[Word, Scalar] = {}
    for wu, cu in u.items():
        for wv, cv in v.items():
            scale = cu * cv
            for word, coeff in rule(wu, wv):
                _add_term(terms, word, scale * coeff)
    return NcPoly(alphabet, terms)


def concat(u: NcPoly, v: NcPoly) -> NcPoly:
    one = u.ring.one
    return _bilinear(u, v, lambda a, b: (((*a, *b), one),))


def qsh(u: NcPoly, v: NcPoly) -> NcPoly:
    """The quasi-shuffle product *."""
    return _bilinear(u, v, lambda a, b: _quasi_shuffle_words(u.alphabet, a, b, 1))


def qsh_star(u: NcPoly, v: NcPoly) -> NcPoly:
    """The quasi-shuffle product ⋆ (diamond terms enter with a minus sign)."""
    return _bilinear(u, v, lambda a, b: _quasi_shuffle_words(u.alphabet, a, b, -1))


def shuffle(u: NcPoly, v: NcPoly) -> NcPoly:
    return _bilinear(u, v, lambda a, b: _quasi_shuffle_words(u.alphabet, a, b, 0))


def _diamond_words(alphabet: Alphabet, u: Word, v: Word) -> Iterable[tuple[Word, Scalar]]:
    if not u:
        return ((v, alphabet.ring.one),)
    if not v:
        return ((u, alphabet.ring.one),)
    head, a = u[:-1], u[-1]
    b, tail = v[0], v[1:]
    return tuple(((*head, c, *tail), coeff) for c, coeff in alphabet.diamond(a, b).items())


def diamond_extend(u: NcPoly, v: NcPoly) -> NcPoly:
    """w'a ⋄ bv' = w'(a⋄b)v', with 1 as the unit."""
    return _bilinear(u, v, lambda a, b: _diamond_words(u.alphabet, a, b))


PRODUCTS: dict[ProductMode, Callable[[NcPoly, NcPoly], NcPoly]] = {
    ProductMode.QSH: qsh,
    ProductMode.QSH_STAR: qsh_star,
    ProductMode.SHUFFLE: shuffle,
    ProductMode.DIAMOND: diamond_extend,
    ProductMode.CONCAT: concat,
}


def product(mode: ProductMode | str, u: NcPoly, v: NcPoly) -> NcPoly:
    return PRODUCTS[ProductMode.parse(mode) if isinstance(mode, str) else mode](u, v)


def product_many(mode: ProductMode | str, factors: Iterable[NcPoly]) -> NcPoly:
    factors = list(factors)
    return reduce(lambda acc, x: product(mode, acc, x), factors[1:], factors[0])


def power(mode: ProductMode | str, x: NcPoly, n: int) -> NcPoly:
    """x^{•n} for n >= 0."""
    return reduce(lambda acc, _: product(mode, acc, x), range(n), NcPoly.one(x.alphabet))


def words_up_to(letters: list[Letter], maxlen: int, *, minlen: int = 0) -> Iterator[Word]:
    """All words over ``letters`` with minlen <= length <= maxlen, shortest first."""
    level: list[Word] = [EMPTY]
    for length in range(maxlen + 1):
        if length >= minlen:
            yield from level
        level = [(*word, a) for word in level for a in letters]
