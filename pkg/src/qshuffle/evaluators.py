"""Homomorphic images of the word algebras.

Each evaluator sends a word z_{k_1}...z_{k_l} to a nested sum

    Σ_{m_1 > m_2 > ... > m_l >= 1} f_{k_1}(m_1) ... f_{k_l}(m_l)

(weak inequalities for the starred version) and is extended linearly.
Nested sums are computed by one cumulative sum per depth level.

* :class:`HarmonicEvaluator` -- finite multiple harmonic sums, exact rationals;
* :class:`QZetaEvaluator` -- multiple q-zeta values, exact in QQ[q]/(q^(M+1));
* :class:`MzvEvaluator` / :class:`TValueEvaluator` -- truncated multiple zeta
  and t-values as floating point numbers;
* :class:`PolylogEvaluator` -- multiple polylogarithms at r-th roots of unity.
"""

import logging
import math
import re
from collections.abc import Mapping
from collections.abc import Sequence
from fractions import Fraction
from typing import Any
from typing import ClassVar

import numpy as np

from .caching import InMemoryCache
from .caching import cached
from .enums import Messages
from .enums import ValueKind
from .exceptions import AlphabetMismatchError
from .exceptions import InadmissibleWordError
from .exceptions import ParseError
from .exceptions import UnknownNameError
from .exceptions import ValueRangeError
from .scalars import PolyRing
from .scalars import QSeries
from .scalars import QSeriesRing
from .scalars import RationalRing
from .scalars import Scalar
from .scalars import ScalarRing
from .scalars import format_rational
from .series_maps import SIGMA
from .series_maps import compositions
from .series_maps import sigma_power
from .series_maps import sigma_power_map
from .word_algebra import Alphabet
from .word_algebra import EulerAlphabet
from .word_algebra import NcPoly
from .word_algebra import QAlphabet
from .word_algebra import Word
from .word_algebra import ZAlphabet
from .word_algebra import _add_term
from .word_algebra import diamond_letters

logger = logging.getLogger(__name__)

_factors = InMemoryCache(maxsize=4096)
_columns = InMemoryCache(maxsize=32)


def _args_key(func, args, kwargs):
    return args


def _nested_exact(columns: Sequence[Sequence[Any]], zero, *, star: bool):
    """Σ over m_1 > ... > m_l of Π columns[j][m_j - 1], innermost letter last."""
    acc = list(columns[-1])
    for column in reversed(columns[:-1]):
        running, step = zero, []
        for m, factor in enumerate(column):
            if star:
                running = running + acc[m]
                step.append(factor * running)
            else:
                step.append(factor * running)
                running = running + acc[m]
        acc = step
    return sum(acc, zero)


def _nested_numeric(columns: Sequence[np.ndarray], *, star: bool) -> complex:
    acc = columns[-1]
    for column in reversed(columns[:-1]):
        tail = np.cumsum(acc)
        if not star:
            tail = np.concatenate(([0], tail[:-1]))
        acc = column * tail
    return complex(acc.sum())


def format_value(value) -> str:
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, QSeries):
        return str(value)
    value = complex(value)
    if value.imag == 0:
        return f"{value.real:.15g}"
    return f"{value.real:.15g}{value.imag:+.15g}i"


class Evaluator:
    """Linear extension of a word-level nested sum, registered under ``name``."""

    subclasses: ClassVar[dict[str, type["Evaluator"]]] = {}
    name: ClassVar[str]
    kind: ClassVar[ValueKind]
    parameters: ClassVar[tuple[str, ...]] = ()

    def __init_subclass__(cls, name: str | None = None, **kwargs):
        if name:
            cls.name = name
            cls.subclasses[name] = cls
        super().__init_subclass__(**kwargs)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def alphabet_for(self, ring: ScalarRing) -> Alphabet:
        """The algebra on which this evaluator is a homomorphism."""
        return ZAlphabet(ring)

    def convert(self, value: Scalar, source: ScalarRing, target: ScalarRing) -> Scalar:
        return target.coerce(value)

    def rehome(self, x: NcPoly, ring: ScalarRing | None = None) -> NcPoly:
        """Re-express ``x`` over :meth:`alphabet_for`, validating every letter."""
        target = self.alphabet_for(ring or x.ring)
        if x.alphabet == target:
            return x
        terms: dict[Word, Scalar] = {}
        for word, coeff in x.items():
            key = tuple(target.validate_letter(a) for a in word)
            _add_term(terms, key, self.convert(coeff, x.ring, target.ring))
        return NcPoly(target, terms)

    def scalar(self, ring: ScalarRing, value: Scalar, bindings: Mapping[str, Fraction]):
        if isinstance(ring, RationalRing):
            return value
        return ring.substitute(value, bindings)

    def check_word(self, word: Word) -> None:
        pass

    def columns(self, word: Word) -> list:
        raise NotImplementedError

    def word_value(self, word: Word, *, star: bool = False):
        raise NotImplementedError

    def evaluate(self, x: NcPoly, *, star: bool = False, bindings: Mapping[str, Fraction] | None = None):
        """Value of ``x``; ``star`` selects the weakly decreasing chains."""
        x = self.rehome(x)
        bindings = bindings or {}
        total = self.zero
        for word, coeff in x.items():
            if word:
                self.check_word(word)
                value = self.word_value(word, star=star)
            else:
                value = self.one
            total = total + self.scalar(x.ring, coeff, bindings) * value
        return total

    def evaluate_sigma(self, x: NcPoly):
        """Value of Σ(x), which equals the starred value."""
        return self.evaluate(SIGMA(self.rehome(x)))

    def evaluate_interpolated(self, r: Fraction | int, x: NcPoly):
        """Value of Σ^r(x): Σ^r is applied with r symbolic, then r is bound."""
        x = self.rehome(x)
        if not isinstance(x.ring, (RationalRing, PolyRing)):
            return self.evaluate(sigma_power(x.ring.coerce(Fraction(r)), x))
        ring = x.ring.with_variables("r") if isinstance(x.ring, PolyRing) else PolyRing(("r",))
        lifted = sigma_power_map("r")(self.rehome(x, ring))
        return self.evaluate(lifted, bindings={"r": Fraction(r)})

    def format(self, value) -> str:
        return format_value(value)


class HarmonicEvaluator(Evaluator, name="harmonic"):
    """Multiple harmonic sums with upper bound n."""

    kind = ValueKind.RATIONAL
    parameters = ("n",)

    def __init__(self, n: int):
        if n < 0:
            raise ValueRangeError(detail=Messages.RANGE % ("n", "n >= 0"))
        self.n = n

    def columns(self, word: Word) -> list[list[Fraction]]:
        return [[Fraction(1, m**k) for m in range(1, self.n + 1)] for (k,) in word]

    def word_value(self, word: Word, *, star: bool = False) -> Fraction:
        return _nested_exact(self.columns(word), Fraction(0), star=star)


@cached(namespace="qzeta-factor", key_builder=_args_key, backend=_factors)
def _qzeta_factor(k: int, m: int, order: int) -> QSeries:
    """q^{(k-1)m} / [m]^k = (1-q)^k q^{(k-1)m} (1-q^m)^{-k}."""
    shift = (k - 1) * m
    if shift > order:
        return QSeries.constant(0, order)
    monomial = QSeries.from_coefficients([0] * shift + [1], order)
    one_minus_q = QSeries.from_coefficients([1, -1], order)
    one_minus_qm = QSeries.from_coefficients([1] + [0] * (m - 1) + [-1], order)
    return monomial * one_minus_q**k * one_minus_qm ** (-k)


@cached(namespace="qzeta-word", key_builder=_args_key, backend=_factors)
def _qzeta_word(word: Word, order: int, star: bool) -> QSeries:
    columns = [[_qzeta_factor(k, m, order) for m in range(1, order + 1)] for (k,) in word]
    return _nested_exact(columns, QSeries.constant(0, order), star=star)


class QZetaEvaluator(Evaluator, name="qzeta"):
    """Multiple q-zeta values, exact modulo q^(order+1).

    The leading factor has q-valuation at least m_1, so indices beyond the
    order never contribute. Coefficients in eps are read with eps = 1 - q.
    """

    kind = ValueKind.QSERIES
    parameters = ("order",)

    def __init__(self, order: int):
        self.ring = QSeriesRing(order)
        self.order = order

    @property
    def zero(self) -> QSeries:
        return self.ring.zero

    @property
    def one(self) -> QSeries:
        return self.ring.one

    def alphabet_for(self, ring: ScalarRing) -> Alphabet:
        return QAlphabet(self.ring)

    def convert(self, value: Scalar, source: ScalarRing, target: ScalarRing) -> Scalar:
        if isinstance(source, PolyRing):
            return source.specialize(value, {}, target)
        return target.coerce(value)

    def scalar(self, ring: ScalarRing, value: Scalar, bindings: Mapping[str, Fraction]) -> QSeries:
        return value

    def check_word(self, word: Word) -> None:
        if word[0][0] < 2:
            raise InadmissibleWordError(
                detail=Messages.INADMISSIBLE % (ZAlphabet().format_word(word), "the first letter must be z2 or higher")
            )

    def word_value(self, word: Word, *, star: bool = False) -> QSeries:
        return _qzeta_word(word, self.order, star)

    def repeated_letter_values(self, k: int, n: int) -> list[QSeries]:
        """ζ_q(z_k^{⋄i}) for i = 1..n, the inputs of the {k}_r generating function."""
        alphabet = self.alphabet_for(self.ring)
        return [
            self.evaluate(NcPoly.from_lincomb(alphabet, diamond_letters(alphabet, [(k,)] * i))) for i in range(1, n + 1)
        ]


@cached(namespace="power-column", key_builder=_args_key, backend=_columns)
def _power_column(k: int, cutoff: int, odd: bool) -> np.ndarray:
    m = np.arange(1, cutoff + 1, dtype=np.float64)
    base = 2 * m - 1 if odd else m
    return base ** (-k)


class MzvEvaluator(Evaluator, name="mzv"):
    """Multiple zeta values truncated at ``cutoff``.

    The truncation error of a word with leading exponent k is of order
    cutoff^(1-k), up to logarithmic factors from the inner letters.
    """

    kind = ValueKind.COMPLEX
    parameters = ("cutoff",)
    odd: ClassVar[bool] = False

    def __init__(self, cutoff: int):
        if cutoff < 1:
            raise ValueRangeError(detail=Messages.RANGE % ("cutoff", "cutoff >= 1"))
        self.cutoff = cutoff

    @property
    def zero(self) -> complex:
        return 0j

    @property
    def one(self) -> complex:
        return 1 + 0j

    def scalar(self, ring: ScalarRing, value: Scalar, bindings: Mapping[str, Fraction]) -> float:
        return float(super().scalar(ring, value, bindings))

    def check_word(self, word: Word) -> None:
        if word[0][0] < 2:
            raise InadmissibleWordError(
                detail=Messages.INADMISSIBLE % (ZAlphabet().format_word(word), "the leading exponent must be at least 2")
            )

    def columns(self, word: Word) -> list[np.ndarray]:
        return [_power_column(k, self.cutoff, self.odd) for (k,) in word]

    def word_value(self, word: Word, *, star: bool = False) -> complex:
        logger.debug("Nested sum of %s up to %d", word, self.cutoff)
        return _nested_numeric(self.columns(word), star=star)


class TValueEvaluator(MzvEvaluator, name="t"):
    """Multiple t-values: the terms of the zeta series with odd denominators."""

    odd = True


@cached(namespace="polylog-column", key_builder=_args_key, backend=_columns)
def _polylog_column(i: int, j: int, r: int, cutoff: int) -> np.ndarray:
    n = np.arange(1, cutoff + 1)
    # rounding removes the 1e-16 imaginary noise of the real roots
    roots = np.round(np.exp(2j * np.pi * np.arange(r) / r), 15)
    return roots[(n * j) % r] / n.astype(np.float64) ** i


class PolylogEvaluator(MzvEvaluator, name="polylog"):
    """Multiple polylogarithms at r-th roots of unity on the Euler letters z_{i,j}."""

    parameters = ("r", "cutoff")

    def __init__(self, r: int, cutoff: int):
        super().__init__(cutoff)
        self.r = r

    def alphabet_for(self, ring: ScalarRing) -> Alphabet:
        return EulerAlphabet(ring, self.r)

    def rehome(self, x: NcPoly, ring: ScalarRing | None = None) -> NcPoly:
        if isinstance(x.alphabet, EulerAlphabet) and x.alphabet.r != self.r:
            raise AlphabetMismatchError(detail=Messages.ALPHABET_MISMATCH % (x.alphabet, f"euler:{self.r}"))
        return super().rehome(x, ring)

    def check_word(self, word: Word) -> None:
        if word[0] == (1, 0):
            raise InadmissibleWordError(
                detail=Messages.INADMISSIBLE % (self.alphabet_for(RationalRing()).format_word(word), "it starts with z1,0")
            )

    def columns(self, word: Word) -> list[np.ndarray]:
        return [_polylog_column(i, j, self.r, self.cutoff) for i, j in word]


_SPEC_RE = re.compile(r"^(?P<name>[a-z]+)(?::(?P<params>.*))?$")


def make_evaluator(spec: str, defaults: Mapping[str, Mapping[str, int]] | None = None) -> Evaluator:
    """Build an evaluator from ``name[:key=value,...]``, e.g. ``polylog:r=2,cutoff=1000``."""
    match = _SPEC_RE.match(spec.strip())
    if not match:
        raise ParseError(detail=Messages.INVALID_SPEC % ("evaluator", spec), source=spec)
    evaluator_class = Evaluator.subclasses.get(match["name"])
    if evaluator_class is None:
        raise UnknownNameError(detail=Messages.UNKNOWN_EVALUATOR % match["name"])
    values = dict((defaults or {}).get(evaluator_class.name, {}))
    for item in filter(None, (match["params"] or "").split(",")):
        key, _, value = item.partition("=")
        key = key.strip()
        if key not in evaluator_class.parameters or not value.strip().isdigit():
            raise ParseError(detail=Messages.INVALID_SPEC % ("evaluator", spec), source=spec)
        values[key] = int(value)
    missing = [key for key in evaluator_class.parameters if key not in values]
    if missing:
        raise ParseError(detail=f"Evaluator {evaluator_class.name} needs {', '.join(missing)}", source=spec)
    return evaluator_class(**{key: values[key] for key in evaluator_class.parameters})


def harmonic(x: NcPoly, n: int) -> Fraction:
    """A_{(k_1,...,k_l)}(n), summed over n >= m_1 > ... > m_l >= 1."""
    return HarmonicEvaluator(n).evaluate(x)


def harmonic_star(x: NcPoly, n: int) -> Fraction:
    """S_{(k_1,...,k_l)}(n), summed over n >= m_1 >= ... >= m_l >= 1."""
    return HarmonicEvaluator(n).evaluate(x, star=True)


@cached(namespace="stirling", key_builder=_args_key)
def stirling_first(n: int, k: int) -> int:
    """Unsigned Stirling number of the first kind."""
    if n < 0 or not 0 <= k <= n:
        raise ValueRangeError(detail=Messages.RANGE % (f"stirling_first({n}, {k})", "0 <= k <= n"))
    if n == 0:
        return 1
    if k == 0:
        return 0
    lower = stirling_first(n - 1, k) if k <= n - 1 else 0
    return stirling_first(n - 1, k - 1) + (n - 1) * lower


def qzeta(x: NcPoly, order: int) -> QSeries:
    return QZetaEvaluator(order).evaluate(x)


def qzeta_star(x: NcPoly, order: int) -> QSeries:
    """ζ_q(Σx), with the diamond of the q-alphabet."""
    return QZetaEvaluator(order).evaluate_sigma(x)


def qzeta_star_nested(x: NcPoly, order: int) -> QSeries:
    """The q-zeta sum over weakly decreasing chains m_1 >= ... >= m_l >= 1."""
    return QZetaEvaluator(order).evaluate(x, star=True)


def mzv(x: NcPoly, cutoff: int) -> complex:
    return MzvEvaluator(cutoff).evaluate(x)


def mzv_star(x: NcPoly, cutoff: int) -> complex:
    return MzvEvaluator(cutoff).evaluate_sigma(x)


def mzv_interp(r: Fraction | int, x: NcPoly, cutoff: int) -> complex:
    return MzvEvaluator(cutoff).evaluate_interpolated(r, x)


def tval(x: NcPoly, cutoff: int) -> complex:
    return TValueEvaluator(cutoff).evaluate(x)


def tval_star(x: NcPoly, cutoff: int) -> complex:
    return TValueEvaluator(cutoff).evaluate_sigma(x)


def tval_interp(r: Fraction | int, x: NcPoly, cutoff: int) -> complex:
    return TValueEvaluator(cutoff).evaluate_interpolated(r, x)


def polylog(x: NcPoly, r: int, cutoff: int) -> complex:
    return PolylogEvaluator(r, cutoff).evaluate(x)


def polylog_star(x: NcPoly, r: int, cutoff: int) -> complex:
    return PolylogEvaluator(r, cutoff).evaluate(x, star=True)


def sum_words(k: int, length: int, alphabet: Alphabet | None = None) -> NcPoly:
    """S(k, l): every admissible word of weight k and length l, coefficient 1."""
    if not 1 <= length <= k - 1:
        raise ValueRangeError(detail=Messages.RANGE % (f"length {length}", f"1 <= l <= {k - 1}"))
    alphabet = alphabet or ZAlphabet()
    words = {
        tuple((part,) for part in c.parts): 1 for c in compositions(k) if c.length == length and c.parts[0] >= 2
    }
    return NcPoly(alphabet, words)


def even_comp_sum(n: int, k: int, alphabet: Alphabet | None = None) -> NcPoly:
    """e(2n, k): z_{2i_1}...z_{2i_k} over the compositions of n with k parts."""
    if not 1 <= k <= n:
        raise ValueRangeError(detail=Messages.RANGE % (f"parts {k}", f"1 <= k <= {n}"))
    alphabet = alphabet or ZAlphabet()
    return NcPoly(alphabet, {tuple((2 * part,) for part in c.parts): 1 for c in compositions(n) if c.length == k})


def sum_theorem_expansion(k: int, length: int, alphabet: Alphabet, r: Scalar | str = "r") -> NcPoly:
    """Σ_{n<l} r^n binom(k-l-1+n, n) S(k, l-n), the closed form of Σ^r S(k, l)."""
    ring = alphabet.ring
    rho = ring.variable(r) if isinstance(r, str) else ring.coerce(r)
    total = NcPoly.zero(alphabet)
    for n in range(length):
        weight = ring.power(rho, n) * ring.coerce(math.comb(k - length - 1 + n, n))
        total = total + sum_words(k, length - n, alphabet).scale(weight)
    return total


def zeta_power_series(values: Sequence[Any], n: int, *, alternating: bool = True) -> list:
    """Coefficients e_0..e_n of exp(Σ_i s_i v_i λ^i / i).

    s_i = (-1)^(i-1) when ``alternating`` (the plain sums of repeated letters),
    s_i = 1 otherwise (the starred sums). ``values[i - 1]`` is v_i; uses
    n e_n = Σ_k s_k v_k e_{n-k}.
    """
    if len(values) < n:
        raise ValueRangeError(detail=Messages.RANGE % ("values", f"at least {n} entries"))
    coeffs: list = [1]
    for m in range(1, n + 1):
        total = 0
        for k in range(1, m + 1):
            sign = -1 if alternating and k % 2 == 0 else 1
            total = values[k - 1] * coeffs[m - k] * sign + total
        coeffs.append(total * Fraction(1, m))
    return coeffs
