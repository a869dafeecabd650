"""Compositions, formal power series and the linear maps they induce on words.

A series f = c_1 t + c_2 t^2 + ... acts on words through

    Ψ_f(w) = Σ_{I composition of ℓ(w)} c_{i_1} ... c_{i_m} I[w]

and f ↦ Ψ_f turns composition of series into composition of maps. The named
maps T, Σ, Σ^ρ, exp, log, H_p and T H_p T are all of this form.
"""

import logging
import math
import re
from collections.abc import Callable
from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .caching import InMemoryCache
from .caching import cached
from .enums import Messages
from .enums import SeriesName
from .exceptions import CompositionError
from .exceptions import NotInvertibleError
from .exceptions import TruncationError
from .exceptions import UnknownNameError
from .scalars import RationalRing
from .scalars import Scalar
from .scalars import ScalarRing
from .scalars import common_ring
from .scalars import parse_rational
from .word_algebra import EMPTY
from .word_algebra import Alphabet
from .word_algebra import NcPoly
from .word_algebra import Word
from .word_algebra import diamond_extend
from .word_algebra import diamond_letters

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Composition:
    parts: tuple[int, ...]

    def __post_init__(self):
        if not self.parts or any(part < 1 for part in self.parts):
            raise CompositionError(detail=f"Invalid composition {self.parts}")

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def breaks(self) -> frozenset[int]:
        """Partial sums strictly inside {1, ..., weight - 1}."""
        sums = [sum(self.parts[: k + 1]) for k in range(len(self.parts) - 1)]
        return frozenset(sums)

    @classmethod
    def from_breaks(cls, weight: int, breaks: Iterable[int]) -> "Composition":
        cuts = [0, *sorted(breaks), weight]
        return cls(tuple(b - a for a, b in zip(cuts, cuts[1:])))

    def blocks(self, word: Word) -> list[Word]:
        if self.weight != len(word):
            raise CompositionError(detail=Messages.WEIGHT_MISMATCH % (self.parts, self.weight, len(word)))
        out, start = [], 0
        for part in self.parts:
            out.append(word[start : start + part])
            start += part
        return out

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


@cached(namespace="compositions", key_builder=lambda func, args, kwargs: args)
def compositions(n: int) -> tuple[Composition, ...]:
    """All 2^(n-1) compositions of n.

    Bit k of a counter running from 0 to 2^(n-1) - 1 marks a break after
    position k + 1, so (n) comes first and (1, ..., 1) last.
    """
    if n < 1:
        raise CompositionError(detail=Messages.EMPTY_COMPOSITION % n)
    return tuple(
        Composition.from_breaks(n, (k + 1 for k in range(n - 1) if mask >> k & 1)) for mask in range(2 ** (n - 1))
    )


def conjugate(composition: Composition) -> Composition:
    """I*: complement the break set inside {1, ..., |I| - 1}."""
    n = composition.weight
    return Composition.from_breaks(n, set(range(1, n)) - composition.breaks)


def bracket_action(composition: Composition, word: Word, alphabet: Alphabet) -> NcPoly:
    """I[w]: ⋄-multiply the letters inside each block, concatenate the blocks."""
    terms: dict[Word, Scalar] = {EMPTY: alphabet.ring.one}
    for block in composition.blocks(word):
        fused = diamond_letters(alphabet, block)
        step: dict[Word, Scalar] = {}
        for prefix, coeff in terms.items():
            for letter, l_coeff in fused.items():
                key = (*prefix, letter)
                step[key] = step.get(key, alphabet.ring.zero) + coeff * l_coeff
        terms = step
    return NcPoly(alphabet, terms)


def angle_action(composition: Composition, word: Word, alphabet: Alphabet) -> NcPoly:
    """I<w>: ⋄-multiply consecutive subword blocks in the extended product."""
    blocks = [NcPoly(alphabet, {block: 1}) for block in composition.blocks(word)]
    return reduce(diamond_extend, blocks)


@dataclass(frozen=True)
class FormalSeries:
    """c_1 t + ... + c_N t^N modulo t^(N+1)."""

    coeffs: tuple
    ring: ScalarRing = RationalRing()

    def __post_init__(self):
        if not self.coeffs:
            raise TruncationError(detail=Messages.RANGE % ("series order", ">= 1"))
        object.__setattr__(self, "coeffs", tuple(self.ring.coerce(c) for c in self.coeffs))

    @classmethod
    def from_coefficients(cls, coeffs: Iterable, ring: ScalarRing | None = None) -> "FormalSeries":
        return cls(tuple(coeffs), ring or RationalRing())

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def coefficient(self, k: int) -> Scalar:
        if k < 1:
            return self.ring.zero
        if k > self.order:
            raise TruncationError(detail=Messages.WORD_TOO_LONG % (k, self.order))
        return self.coeffs[k - 1]

    def is_invertible(self) -> bool:
        try:
            self.ring.inverse(self.coeffs[0])
        except NotInvertibleError:
            return False
        return True

    def truncate(self, order: int) -> "FormalSeries":
        if order > self.order:
            raise TruncationError(detail=Messages.ORDER_MISMATCH % (self.order, order))
        return FormalSeries(self.coeffs[:order], self.ring)

    def with_ring(self, ring: ScalarRing) -> "FormalSeries":
        return FormalSeries(self.coeffs, ring)

    def _dense(self) -> list:
        return [self.ring.zero, *self.coeffs]

    def __add__(self, other: "FormalSeries") -> "FormalSeries":
        ring = common_ring(self.ring, other.ring)
        _check_orders(self, other)
        return FormalSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), ring)

    def __neg__(self) -> "FormalSeries":
        return FormalSeries(tuple(-c for c in self.coeffs), self.ring)

    def __sub__(self, other: "FormalSeries") -> "FormalSeries":
        return self + (-other)

    def scale(self, value: Scalar) -> "FormalSeries":
        value = self.ring.coerce(value)
        return FormalSeries(tuple(c * value for c in self.coeffs), self.ring)

    def __str__(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs, start=1):
            if not c:
                continue
            power = "t" if k == 1 else f"t^{k}"
            text = self.ring.format(c)
            if not self.ring.is_atomic(c):
                text = f"({text})"
            parts.append(power if text == "1" else f"-{power}" if text == "-1" else f"{text}*{power}")
        return " + ".join(parts).replace("+ -", "- ") or "0"


def _check_orders(f: FormalSeries, g: FormalSeries) -> None:
    if f.order != g.order:
        raise TruncationError(detail=Messages.ORDER_MISMATCH % (f.order, g.order))


def _mul_dense(a: list, b: list, order: int, zero) -> list:
    out = [zero] * (order + 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j in range(order + 1 - i):
            if b[j]:
                out[i + j] = out[i + j] + ai * b[j]
    return out


def series_power(f: FormalSeries, k: int) -> FormalSeries:
    """f^k for k >= 1, truncated at the order of f."""
    if k < 1:
        raise TruncationError(detail=Messages.RANGE % ("series exponent", ">= 1"))
    dense = f._dense()
    result = dense
    for _ in range(k - 1):
        result = _mul_dense(result, dense, f.order, f.ring.zero)
    return FormalSeries(tuple(result[1:]), f.ring)


def series_compose(f: FormalSeries, g: FormalSeries) -> FormalSeries:
    """f∘g, with [t^k](f∘g) = Σ_j [t^j]f · [t^k]g^j."""
    ring = common_ring(f.ring, g.ring)
    _check_orders(f, g)
    order = f.order
    g_dense = g._dense()
    power = g_dense
    out = [ring.zero] * (order + 1)
    for j in range(1, order + 1):
        c = f.coeffs[j - 1]
        if c:
            for k in range(order + 1):
                if power[k]:
                    out[k] = out[k] + c * power[k]
        power = _mul_dense(power, g_dense, order, ring.zero)
    return FormalSeries(tuple(out[1:]), ring)


def series_inverse(f: FormalSeries) -> FormalSeries:
    """Compositional inverse, solved one coefficient at a time."""
    ring = f.ring
    inv = ring.inverse(f.coeffs[0])
    g = [inv] + [ring.zero] * (f.order - 1)
    for k in range(2, f.order + 1):
        residual = series_compose(f, FormalSeries(tuple(g), ring)).coeffs[k - 1]
        g[k - 1] = -residual * inv
    return FormalSeries(tuple(g), ring)


def _binomial(p: Scalar, i: int, ring: ScalarRing) -> Scalar:
    """binom(p, i) = p(p-1)...(p-i+1)/i! for any ring element p."""
    value = ring.one
    for m in range(i):
        value = value * (p - ring.coerce(m))
    return ring.divide(value, math.factorial(i))


@dataclass(frozen=True)
class NamedSeries:
    """A catalog entry, materialized at any order over any ring."""

    name: SeriesName
    p: Fraction | str | None = None

    def parameter(self, ring: ScalarRing) -> Scalar:
        if self.p is None:
            raise UnknownNameError(detail=f"Series {self.name} needs the parameter p")
        if isinstance(self.p, str):
            return ring.variable(self.p)
        return ring.coerce(self.p)

    def coefficient(self, i: int, ring: ScalarRing) -> Scalar:
        sign = 1 if i % 2 else -1
        match self.name:
            case SeriesName.IDENTITY:
                return ring.coerce(int(i == 1))
            case SeriesName.NEGATIVE:
                return ring.coerce(-int(i == 1))
            case SeriesName.GEOMETRIC:
                return ring.one
            case SeriesName.ALTERNATING:
                return ring.coerce(sign)
            case SeriesName.GEOMETRIC_P:
                return ring.power(self.parameter(ring), i - 1)
            case SeriesName.EXP:
                return ring.coerce(Fraction(1, math.factorial(i)))
            case SeriesName.LOG:
                return ring.coerce(Fraction(sign, i))
            case SeriesName.BINOMIAL:
                return _binomial(self.parameter(ring), i, ring)
            case SeriesName.BINOMIAL_DUAL:
                return _binomial(self.parameter(ring), i, ring) * ring.coerce(sign)
        raise UnknownNameError(detail=Messages.UNKNOWN_SERIES % self.name)

    def build(self, order: int, ring: ScalarRing | None = None) -> FormalSeries:
        ring = ring or RationalRing()
        return FormalSeries(tuple(self.coefficient(i, ring) for i in range(1, order + 1)), ring)

    def __str__(self) -> str:
        if self.p is None:
            return str(self.name)
        return str(self.name).replace("p", f"({self.p})")


def named_series(name: SeriesName | str, order: int, ring: ScalarRing | None = None, p=None) -> FormalSeries:
    try:
        name = SeriesName(name)
    except ValueError:
        raise UnknownNameError(detail=Messages.UNKNOWN_SERIES % name) from None
    return NamedSeries(name, p).build(order, ring)


WordRule = Callable[[Word, Alphabet], NcPoly]


class WordMap:
    """A linear map on k<A> given by its values on words.

    Values are memoized per (alphabet, word). Two maps are compared only
    extensionally, on a finite set of words.
    """

    def __init__(self, rule: WordRule, name: str = "L"):
        self.rule = rule
        self.name = name
        self._memo = InMemoryCache(maxsize=200_000)

    def image(self, word: Word, alphabet: Alphabet) -> NcPoly:
        key = (alphabet, word)
        value = self._memo.get(key)
        if value is None:
            value = self.rule(word, alphabet)
            self._memo.set(key, value)
        return value

    def __call__(self, x: NcPoly) -> NcPoly:
        return x.map_words(lambda word: self.image(word, x.alphabet))

    def __matmul__(self, other: "WordMap") -> "WordMap":
        return map_compose(self, other)

    def __add__(self, other: "WordMap") -> "WordMap":
        return WordMap(lambda w, a: self.image(w, a) + other.image(w, a), f"({self.name} + {other.name})")

    def __sub__(self, other: "WordMap") -> "WordMap":
        return WordMap(lambda w, a: self.image(w, a) - other.image(w, a), f"({self.name} - {other.name})")

    def __neg__(self) -> "WordMap":
        return WordMap(lambda w, a: -self.image(w, a), f"-{self.name}")

    def scale(self, value: Scalar) -> "WordMap":
        return WordMap(lambda w, a: self.image(w, a).scale(value), f"{value}*{self.name}")

    def __repr__(self) -> str:
        return f"WordMap({self.name})"


def map_compose(outer: WordMap, inner: WordMap) -> WordMap:
    """outer∘inner: inner is applied first."""
    return WordMap(lambda w, a: outer(inner.image(w, a)), f"{outer.name} {inner.name}")


def compose_maps(maps: Iterable[WordMap]) -> WordMap:
    """Compose a pipeline written in composition order (rightmost applied first)."""
    return reduce(map_compose, maps)


def first_disagreement(left: WordMap, right: WordMap, words: Iterable[Word], alphabet: Alphabet):
    """The first word on which two maps differ, with both images, or None."""
    for word in words:
        a, b = left.image(word, alphabet), right.image(word, alphabet)
        if a != b:
            return word, a, b
    return None


IDENTITY = WordMap(lambda w, a: NcPoly(a, {w: 1}), "id")


class PsiMap(WordMap):
    """Ψ_f, evaluated by the head recursion

    Ψ_f(a_1...a_n) = Σ_k c_k (a_1⋄...⋄a_k) Ψ_f(a_{k+1}...a_n).
    """

    def __init__(self, series: FormalSeries | NamedSeries, name: str | None = None):
        self.series = series
        super().__init__(self._rule, name or f"Psi[{series}]")

    def coefficients(self, n: int, ring: ScalarRing) -> list[Scalar]:
        if isinstance(self.series, NamedSeries):
            return list(self.series.build(n, ring).coeffs) if n else []
        if n > self.series.order:
            raise TruncationError(detail=Messages.WORD_TOO_LONG % (n, self.series.order))
        return [ring.coerce(c) for c in self.series.coeffs[:n]]

    def _rule(self, word: Word, alphabet: Alphabet) -> NcPoly:
        n = len(word)
        c = self.coefficients(n, alphabet.ring)
        suffix: dict[int, NcPoly] = {n: NcPoly.one(alphabet)}
        for i in range(n - 1, -1, -1):
            terms: dict[Word, Scalar] = {}
            fused = {word[i]: alphabet.ring.one}
            for k in range(1, n - i + 1):
                if k > 1:
                    fused = _fuse(alphabet, fused, word[i + k - 1])
                ck = c[k - 1]
                if not ck or not fused:
                    continue
                for letter, l_coeff in fused.items():
                    for tail, t_coeff in suffix[i + k].items():
                        key = (letter, *tail)
                        terms[key] = terms.get(key, alphabet.ring.zero) + ck * l_coeff * t_coeff
            suffix[i] = NcPoly(alphabet, terms)
        return suffix[0]


def _fuse(alphabet: Alphabet, comb: dict, letter) -> dict:
    out: dict = {}
    for a, coeff in comb.items():
        for c, c_coeff in alphabet.diamond(a, letter).items():
            out[c] = out.get(c, alphabet.ring.zero) + coeff * c_coeff
    return {k: v for k, v in out.items() if v}


def psi(f: FormalSeries | NamedSeries, x: NcPoly) -> NcPoly:
    """Ψ_f(x); a fixed-order series must reach the longest word of x."""
    return PsiMap(f)(x)


def psi_oracle(f: FormalSeries, x: NcPoly) -> NcPoly:
    """Ψ_f(x) summed directly over all compositions."""
    alphabet = x.alphabet
    ring = alphabet.ring

    def rule(word: Word) -> NcPoly:
        if not word:
            return NcPoly.one(alphabet)
        if len(word) > f.order:
            raise TruncationError(detail=Messages.WORD_TOO_LONG % (len(word), f.order))
        total = NcPoly.zero(alphabet)
        for composition in compositions(len(word)):
            weight = reduce(lambda acc, part: acc * ring.coerce(f.coeffs[part - 1]), composition.parts, ring.one)
            if weight:
                total = total + bracket_action(composition, word, alphabet).scale(weight)
        return total

    return x.map_words(rule)


def sigma_power_map(rho: Scalar | str) -> PsiMap:
    return PsiMap(NamedSeries(SeriesName.GEOMETRIC_P, rho), f"Sigma^{rho}")


def sigma_power(rho: Scalar, x: NcPoly) -> NcPoly:
    """Σ^ρ(x) = Ψ_{t/(1-ρt)}(x); ρ is any element of the coefficient ring."""
    ring = x.ring
    order = max(x.max_length(), 1)
    series = FormalSeries(tuple(ring.power(ring.coerce(rho), i - 1) for i in range(1, order + 1)), ring)
    return PsiMap(series, f"Sigma^{rho}")(x)


T = PsiMap(NamedSeries(SeriesName.NEGATIVE), "T")
SIGMA = PsiMap(NamedSeries(SeriesName.GEOMETRIC), "Sigma")
SIGMA_INV = PsiMap(NamedSeries(SeriesName.ALTERNATING), "Sigma_inv")
EXP = PsiMap(NamedSeries(SeriesName.EXP), "exp")
LOG = PsiMap(NamedSeries(SeriesName.LOG), "log")
REVERSE = WordMap(lambda w, a: NcPoly(a, {w[::-1]: 1}), "R")


def h_map(p: Fraction | str) -> PsiMap:
    """H_p = Ψ_{(1+t)^p - 1}."""
    return PsiMap(NamedSeries(SeriesName.BINOMIAL, p), f"H[{p}]")


def tht_map(p: Fraction | str) -> PsiMap:
    """T H_p T = Ψ_{1-(1-t)^p}."""
    return PsiMap(NamedSeries(SeriesName.BINOMIAL_DUAL, p), f"THT[{p}]")


_PARAM_RE = re.compile(r"^(H|THT|sigma\^|Sigma\^)\[?([^\]]+)\]?$")


def _parse_param(text: str) -> Fraction | str:
    text = text.strip()
    return text if text.isidentifier() else parse_rational(text)


def named_map(token: str) -> WordMap:
    """Look up a map by its pipeline token.

    Tokens: ``id``/``t``, ``T``/``-t``, ``sigma``, ``sigma_inv``,
    ``sigma^<rat|var>``, ``exp``, ``log``, ``H[<rat|var>]``, ``THT[<rat|var>]``,
    ``R`` and ``series[c1,c2,...]``.
    """
    fixed = {
        "id": IDENTITY,
        "t": IDENTITY,
        "T": T,
        "-t": T,
        "sigma": SIGMA,
        "Sigma": SIGMA,
        "sigma_inv": SIGMA_INV,
        "Sigma_inv": SIGMA_INV,
        "exp": EXP,
        "log": LOG,
        "R": REVERSE,
    }
    if token in fixed:
        return fixed[token]
    if token.startswith("series[") and token.endswith("]"):
        entries = [parse_rational(c) for c in token[len("series[") : -1].split(",") if c.strip()]
        return PsiMap(FormalSeries.from_coefficients(entries), token)
    match = _PARAM_RE.match(token)
    if match:
        head, param = match.groups()
        value = _parse_param(param)
        if head == "H":
            return h_map(value)
        if head == "THT":
            return tht_map(value)
        return sigma_power_map(value)
    raise UnknownNameError(detail=Messages.UNKNOWN_MAP % token)


def parse_pipeline(text: str) -> WordMap:
    """``"exp T log T"`` -> exp∘T∘log∘T."""
    tokens = text.split()
    if not tokens:
        raise UnknownNameError(detail=Messages.UNKNOWN_MAP % repr(text))
    return compose_maps(named_map(token) for token in tokens)
