"""Named verification suites.

A suite is a list of laws; each law is a lazy stream of ``(input, left,
right)`` cases that must compare equal. The universe of words is enumerated
when small and sampled from the seed otherwise, shortest words first, and a
law stops at its first counterexample.
"""

import logging
import math
import random
from collections.abc import Callable
from collections.abc import Iterable
from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as cartesian
from typing import Any
from typing import ClassVar

from .enums import Messages
from .enums import ProductMode
from .exceptions import UnknownNameError
from .evaluators import QZetaEvaluator
from .evaluators import even_comp_sum
from .evaluators import harmonic
from .evaluators import harmonic_star
from .evaluators import qzeta
from .evaluators import qzeta_star
from .evaluators import qzeta_star_nested
from .evaluators import stirling_first
from .evaluators import sum_theorem_expansion
from .evaluators import sum_words
from .evaluators import zeta_power_series
from .hopf import ETA_EPSILON
from .hopf import S_QSH
from .hopf import S_QSH_STAR
from .hopf import antipode_explicit
from .hopf import coassociativity_sides
from .hopf import contraction_cf
from .hopf import convolve
from .hopf import deconcat
from .hopf import derivation_d
from .hopf import exp_rd
from .hopf import infinitesimal_antipode_sides
from .hopf import infinitesimal_sides
from .hopf import is_inverse_pair
from .hopf import tensor_product
from .lambda_series import IdentityParams
from .lambda_series import LambdaLinComb
from .lambda_series import check_identity
from .scalars import PolyRing
from .scalars import QSeriesRing
from .scalars import RationalRing
from .schemas import CheckReport
from .schemas import Counterexample
from .series_maps import EXP
from .series_maps import IDENTITY
from .series_maps import LOG
from .series_maps import REVERSE
from .series_maps import SIGMA
from .series_maps import SIGMA_INV
from .series_maps import FormalSeries
from .series_maps import PsiMap
from .series_maps import T
from .series_maps import WordMap
from .series_maps import compositions
from .series_maps import h_map
from .series_maps import psi_oracle
from .series_maps import series_compose
from .series_maps import sigma_power
from .series_maps import sigma_power_map
from .series_maps import tht_map
from .word_algebra import Alphabet
from .word_algebra import NcPoly
from .word_algebra import QAlphabet
from .word_algebra import Word
from .word_algebra import ZAlphabet
from .word_algebra import ZeroAlphabet
from .word_algebra import diamond_extend
from .word_algebra import diamond_letters
from .word_algebra import product
from .word_algebra import qsh
from .word_algebra import qsh_star
from .word_algebra import shuffle

logger = logging.getLogger(__name__)

Case = tuple[str, Any, Any]
Law = tuple[str, Callable[[], Iterable[Case]]]


@dataclass
class SuiteParams:
    alphabet: Alphabet
    maxlen: int = 4
    seed: int = 0
    letter_index_max: int = 6
    samples: int = 30
    qzeta_order: int = 20

    @property
    def letters(self):
        return self.alphabet.sample_letters(self.letter_index_max)

    def rng(self, label: str) -> random.Random:
        return random.Random(f"{self.seed}:{label}")

    def poly(self, word: Word) -> NcPoly:
        return NcPoly(self.alphabet, {word: 1})

    def random_word(self, rng: random.Random, length: int) -> Word:
        return tuple(rng.choice(self.letters) for _ in range(length))

    def words(self, maxlen: int | None = None, *, minlen: int = 0) -> list[Word]:
        """All words of each length while there are few, a seeded sample beyond."""
        maxlen = self.maxlen if maxlen is None else maxlen
        rng = self.rng(f"words:{maxlen}")
        found: list[Word] = []
        for length in range(minlen, maxlen + 1):
            if len(self.letters) ** length <= self.samples:
                found.extend(cartesian(self.letters, repeat=length))
            else:
                found.extend(sorted({self.random_word(rng, length) for _ in range(self.samples)}))
        return found

    def tuples(self, arity: int, total: int, label: str) -> list[tuple[Word, ...]]:
        """Seeded word tuples of combined length at most ``total``, shortest first."""
        rng = self.rng(f"{label}:{arity}:{total}")
        found = set()
        for _ in range(self.samples):
            span = rng.randint(arity, max(arity, total))
            cuts = sorted(rng.randint(0, span) for _ in range(arity - 1))
            lengths = [b - a for a, b in zip([0, *cuts], [*cuts, span])]
            found.add(tuple(self.random_word(rng, n) for n in lengths))
        return sorted(found, key=lambda ws: (sum(map(len, ws)), ws))

    def label(self, *words: Word) -> str:
        return ", ".join(self.alphabet.format_word(w) for w in words)


class CheckSuite:
    """A named group of laws, registered under ``name``."""

    subclasses: ClassVar[dict[str, type["CheckSuite"]]] = {}
    name: ClassVar[str]
    default_samples: ClassVar[int] = 30

    def __init_subclass__(cls, name: str | None = None, **kwargs):
        if name:
            cls.name = name
            cls.subclasses[name] = cls
        super().__init_subclass__(**kwargs)

    def __init__(self, params: SuiteParams):
        self.params = params

    def laws(self) -> Iterator[Law]:
        raise NotImplementedError

    def map_law(
        self, left: WordMap, right: WordMap, words: list[Word] | None = None, alphabet: Alphabet | None = None
    ) -> Callable[[], Iterable[Case]]:
        p = self.params
        alphabet = alphabet or p.alphabet

        def cases():
            for word in p.words() if words is None else words:
                yield p.label(word), left.image(word, alphabet), right.image(word, alphabet)

        return cases

    def pair_law(self, fn: Callable[[NcPoly, NcPoly], tuple[Any, Any]], total: int, label: str):
        p = self.params

        def cases():
            for u, v in p.tuples(2, total, label):
                yield (p.label(u, v), *fn(p.poly(u), p.poly(v)))

        return cases


class AlgebraSuite(CheckSuite, name="algebra"):
    default_samples = 200

    def laws(self) -> Iterator[Law]:
        p = self.params
        total = 2 * p.maxlen
        for name, op in (("*", qsh), ("⋆", qsh_star), ("⧢", shuffle)):
            yield f"{name} is commutative", self.pair_law(lambda u, v, op=op: (op(u, v), op(v, u)), total, "comm")
            yield f"{name} is associative", self.triple_law(lambda u, v, w, op=op: (op(op(u, v), w), op(u, op(v, w))))
            yield f"1 {name} w = w", self.map_law(WordMap(lambda w, a, op=op: op(NcPoly.one(a), NcPoly(a, {w: 1}))), IDENTITY)
        yield "⋄ is associative on k<A>", self.triple_law(
            lambda u, v, w: (diamond_extend(diamond_extend(u, v), w), diamond_extend(u, diamond_extend(v, w)))
        )
        yield "a ⋄ b = b ⋄ a on letters", self.letter_law
        if isinstance(p.alphabet, ZeroAlphabet):
            yield "* = ⧢", self.pair_law(lambda u, v: (qsh(u, v), shuffle(u, v)), total, "zero")
            yield "⋆ = ⧢", self.pair_law(lambda u, v: (qsh_star(u, v), shuffle(u, v)), total, "zero-star")

    def triple_law(self, fn):
        p = self.params

        def cases():
            for u, v, w in p.tuples(3, 2 * p.maxlen, "assoc"):
                yield (p.label(u, v, w), *fn(p.poly(u), p.poly(v), p.poly(w)))

        return cases

    def letter_law(self) -> Iterable[Case]:
        p = self.params
        for a, b in cartesian(p.letters[:6], repeat=2):
            yield p.label((a,), (b,)), p.alphabet.diamond(a, b), p.alphabet.diamond(b, a)


def _random_series(rng: random.Random, order: int) -> FormalSeries:
    return FormalSeries.from_coefficients(Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(order))


def _with_symbols(alphabet: Alphabet, *names: str) -> Alphabet | None:
    """The alphabet over a polynomial ring that also has ``names``; None over q-series."""
    ring = alphabet.ring
    if isinstance(ring, RationalRing):
        return alphabet.with_ring(PolyRing(names))
    if isinstance(ring, PolyRing):
        return alphabet.with_ring(ring.with_variables(*names))
    return None


class MapsSuite(CheckSuite, name="maps"):
    default_samples = 50
    series_order = 8
    longest_word = 6

    def laws(self) -> Iterator[Law]:
        p = self.params
        half = Fraction(1, 2)
        yield "T T = id", self.map_law(T @ T, IDENTITY)
        yield "T Σ T = Σ^-1", self.map_law(T @ SIGMA @ T, SIGMA_INV)
        yield "exp T log T = Σ", self.map_law(EXP @ T @ LOG @ T, SIGMA)
        for a, b in ((1, -1), (half, half), (-1, half), (1, 1)):
            yield f"Σ^{a} Σ^{b} = Σ^{a + b}", self.map_law(
                sigma_power_map(Fraction(a)) @ sigma_power_map(Fraction(b)), sigma_power_map(Fraction(a) + b)
            )
        symbolic = _with_symbols(p.alphabet, "a", "b")
        if symbolic is not None:
            summed = WordMap(lambda w, al: sigma_power(al.ring.variable("a") + al.ring.variable("b"), NcPoly(al, {w: 1})))
            yield "Σ^a Σ^b = Σ^(a+b)", self.map_law(
                sigma_power_map("a") @ sigma_power_map("b"), summed, alphabet=symbolic
            )
        for a, b in ((2, 3), (2, -1), (-1, -1)):
            yield f"H_{a} H_{b} = H_{a * b}", self.map_law(h_map(Fraction(a)) @ h_map(Fraction(b)), h_map(Fraction(a * b)))
        yield "Ψ_f Ψ_g = Ψ_(f∘g)", self.functoriality
        yield "Ψ_f = composition sum", self.oracle
        total = p.maxlen
        yield "T(u*v) = Tu ⋆ Tv", self.pair_law(lambda u, v: (T(qsh(u, v)), qsh_star(T(u), T(v))), total, "T")
        yield "Σ(u⋆v) = Σu * Σv", self.pair_law(lambda u, v: (SIGMA(qsh_star(u, v)), qsh(SIGMA(u), SIGMA(v))), total, "S")
        for exponent in (2, -1):
            h, tht = h_map(Fraction(exponent)), tht_map(Fraction(exponent))
            yield f"H_{exponent}(u*v) = H_{exponent}u * H_{exponent}v", self.pair_law(
                lambda u, v, h=h: (h(qsh(u, v)), qsh(h(u), h(v))), total, "H"
            )
            yield f"TH_{exponent}T(u⋆v) = TH_{exponent}Tu ⋆ TH_{exponent}Tv", self.pair_law(
                lambda u, v, h=tht: (h(qsh_star(u, v)), qsh_star(h(u), h(v))), total, "THT"
            )
        yield "R(u*v) = Ru * Rv", self.pair_law(lambda u, v: (REVERSE(qsh(u, v)), qsh(REVERSE(u), REVERSE(v))), total, "R")
        yield "R(u⋆v) = Ru ⋆ Rv", self.pair_law(
            lambda u, v: (REVERSE(qsh_star(u, v)), qsh_star(REVERSE(u), REVERSE(v))), total, "R-star"
        )
        yield "R exp = exp R", self.map_law(REVERSE @ EXP, EXP @ REVERSE)
        yield "R Ψ_f = Ψ_f R", self.reverse_commutes
        yield "ΣT ΣT = id", self.map_law(SIGMA @ T @ SIGMA @ T, IDENTITY)
        yield "Σ(aw) = aΣ(w) + a⋄Σ(w)", self.head_recursion
        yield "Σ^-1(wa) = Σ^-1(w)a - Σ^-1(w)⋄a", self.tail_recursion

    def functoriality(self) -> Iterable[Case]:
        p = self.params
        rng = p.rng("functoriality")
        order = max(self.series_order, p.maxlen)
        for _ in range(p.samples):
            f, g = _random_series(rng, order), _random_series(rng, order)
            outer, inner, composed = PsiMap(f), PsiMap(g), PsiMap(series_compose(f, g))
            for length in range(1, self.longest_word + 1):
                word = p.random_word(rng, length)
                yield f"f = {f}, g = {g}, w = {p.label(word)}", outer(inner.image(word, p.alphabet)), composed.image(
                    word, p.alphabet
                )

    def oracle(self) -> Iterable[Case]:
        p = self.params
        f = _random_series(p.rng("oracle"), max(self.series_order, p.maxlen))
        for word in p.words():
            yield f"f = {f}, w = {p.label(word)}", PsiMap(f).image(word, p.alphabet), psi_oracle(f, p.poly(word))

    def reverse_commutes(self) -> Iterable[Case]:
        p = self.params
        rng = p.rng("reverse")
        order = max(self.series_order, p.maxlen)
        for word in p.words():
            psi = PsiMap(_random_series(rng, order))
            yield f"f = {psi.series}, w = {p.label(word)}", REVERSE(psi.image(word, p.alphabet)), psi(
                REVERSE.image(word, p.alphabet)
            )

    def head_recursion(self) -> Iterable[Case]:
        p = self.params
        for word in p.words(minlen=1):
            head, rest = p.poly(word[:1]), SIGMA.image(word[1:], p.alphabet)
            right = product(ProductMode.CONCAT, head, rest) + diamond_extend(head, rest)
            yield p.label(word), SIGMA.image(word, p.alphabet), right

    def tail_recursion(self) -> Iterable[Case]:
        p = self.params
        for word in p.words(minlen=1):
            rest, tail = SIGMA_INV.image(word[:-1], p.alphabet), p.poly(word[-1:])
            right = product(ProductMode.CONCAT, rest, tail) - diamond_extend(rest, tail)
            yield p.label(word), SIGMA_INV.image(word, p.alphabet), right


class HopfSuite(CheckSuite, name="hopf"):
    def laws(self) -> Iterator[Law]:
        p = self.params
        total = p.maxlen
        yield "(Δ⊗id)Δ = (id⊗Δ)Δ", self.coassociativity
        for mode in (ProductMode.QSH, ProductMode.QSH_STAR):
            yield f"Δ(u {mode} v) = Δu {mode} Δv", self.pair_law(
                lambda u, v, mode=mode: (deconcat(product(mode, u, v)), tensor_product(mode, deconcat(u), deconcat(v))),
                total,
                f"delta-{mode}",
            )
        for mode, s in ((ProductMode.QSH, S_QSH), (ProductMode.QSH_STAR, S_QSH_STAR)):
            yield f"S ⊙ id = ηε for {mode}", self.map_law(convolve(s, IDENTITY, mode), ETA_EPSILON)
            yield f"id ⊙ S = ηε for {mode}", self.map_law(convolve(IDENTITY, s, mode), ETA_EPSILON)
        yield "ΣTR = explicit antipode", self.map_law(S_QSH, WordMap(lambda w, a: antipode_explicit(NcPoly(a, {w: 1}))))
        yield "S_* S_⋆ = Σ^2", self.map_law(S_QSH @ S_QSH_STAR, sigma_power_map(Fraction(2)))
        yield "S_⋆ S_* = Σ^-2", self.map_law(S_QSH_STAR @ S_QSH, sigma_power_map(Fraction(-2)))
        yield "S_* S_* = id", self.map_law(S_QSH @ S_QSH, IDENTITY)
        yield "S_⋆ S_⋆ = id", self.map_law(S_QSH_STAR @ S_QSH_STAR, IDENTITY)
        yield "Δ̃(w⋄v) = (w⋄v1)⊗v2 + w1⊗(w2⋄v)", self.infinitesimal
        for right_handed in (False, True):
            side = "right" if right_handed else "left"
            yield f"{side} infinitesimal antipode -Σ^-1", self.infinitesimal_antipode(right_handed)
        yield "D(u⋄v) = Du⋄v + u⋄Dv", self.pair_law(
            lambda u, v: (
                derivation_d(diamond_extend(u, v)),
                diamond_extend(derivation_d(u), v) + diamond_extend(u, derivation_d(v)),
            ),
            total + 1,
            "D",
        )
        yield "Σ^r = e^{rD}", self.exponential
        yield "(Ψ_exp, C_exp) is an inverse pair", self.inverse_pair

    def coassociativity(self) -> Iterable[Case]:
        p = self.params
        for word in p.words():
            yield (p.label(word), *coassociativity_sides(p.poly(word)))

    def infinitesimal(self) -> Iterable[Case]:
        p = self.params
        for w, v in p.tuples(2, p.maxlen, "infinitesimal"):
            yield (p.label(w, v), *infinitesimal_sides(w, v, p.alphabet))

    def infinitesimal_antipode(self, right_handed: bool) -> Callable[[], Iterable[Case]]:
        p = self.params

        def cases():
            for word in p.words(minlen=1):
                yield (p.label(word), *infinitesimal_antipode_sides(word, p.alphabet, right_handed=right_handed))

        return cases

    def exponential(self) -> Iterable[Case]:
        p = self.params
        alphabet = _with_symbols(p.alphabet, "r")
        rho = "r" if alphabet is not None else Fraction(1, 2)
        alphabet = alphabet or p.alphabet
        sigma_r = sigma_power_map(rho)
        value = alphabet.ring.variable("r") if isinstance(rho, str) else rho
        for word in p.words():
            yield f"r = {rho}, w = {p.label(word)}", sigma_r.image(word, alphabet), exp_rd(value, NcPoly(alphabet, {word: 1}))

    def inverse_pair(self) -> Iterable[Case]:
        p = self.params
        result = is_inverse_pair(EXP, contraction_cf(EXP.series), p.alphabet, p.words())
        if result:
            yield "all sampled words", True, True
        else:
            yield f"{result.law} at {p.label(result.word)}", result.left, result.right


class LambdaSuite(CheckSuite, name="lambda"):
    def laws(self) -> Iterator[Law]:
        p = self.params
        a, b = p.letters[0], p.letters[1]
        z, y = LambdaLinComb.letter(p.alphabet, a), LambdaLinComb.letter(p.alphabet, b)
        half = Fraction(1, 2)
        cases: list[tuple[str, dict]] = [
            ("ihafid", {"z": z}),
            ("expthm", {"z": z}),
            ("ikz_remark", {"z": z}),
            *(("hpow", {"z": z, "p": Fraction(e)}) for e in (2, 3, -1)),
            ("psifinv", {"z": z, "p": Fraction(2)}),
            ("psifinv", {"z": z, "p": Fraction(-1), "s": Fraction(1)}),
            *(("siinv", {"z": z, "s": s}) for s in (Fraction(0), half, Fraction(1), Fraction(2))),
            ("frprod", {"z": z, "y": y}),
            *(("repr", {"z": z, "r": r}) for r in (half, Fraction(2))),
            ("dblfrac", {"a": b, "b": a}),
            ("dblfrac", {"a": a, "b": a}),
            *(
                ("dblfrac", {"alphabet": alphabet, "a": first, "b": second})
                for alphabet in (ZAlphabet(), QAlphabet(PolyRing(("eps",))))
                for first, second in (((2,), (1,)), ((1,), (1,)))
            ),
            *(("expsum", {"z": z, "y": y, "mode": m}) for m in (ProductMode.QSH, ProductMode.QSH_STAR, ProductMode.SHUFFLE)),
            ("expid", {"z": z}),
            ("logexp", {"z": z}),
        ]
        symbolic = _with_symbols(p.alphabet, "s")
        if symbolic is not None:
            cases.append(("siinv", {"alphabet": symbolic, "z": LambdaLinComb.letter(symbolic, a), "s": "s"}))
        for name, kwargs in cases:
            alphabet = kwargs.get("alphabet", p.alphabet)
            shown = []
            for key, value in kwargs.items():
                if key in ("a", "b"):
                    shown.append(f"{key}={alphabet.format_letter(value)}")
                elif key in ("p", "s", "r", "mode", "alphabet"):
                    shown.append(f"{key}={value}")
            yield f"{name}({', '.join(shown)})" if shown else name, self.identity(name, kwargs)

    def identity(self, name: str, kwargs: dict) -> Callable[[], Iterable[Case]]:
        p = self.params

        def cases():
            report = check_identity(name, IdentityParams(**{"alphabet": p.alphabet, "order": p.maxlen, **kwargs}))
            difference = "0" if report.ok else f"degree {report.degree}: {report.difference}"
            yield f"order {p.maxlen}", difference, "0"

        return cases


def _words_of_weight(max_weight: int, *, admissible: bool = False, max_length: int | None = None) -> list[Word]:
    found = []
    for k in range(1, max_weight + 1):
        for c in compositions(k):
            if admissible and c.parts[0] < 2:
                continue
            if max_length is not None and c.length > max_length:
                continue
            found.append(tuple((part,) for part in c.parts))
    return found


class HarmonicSuite(CheckSuite, name="harmonic"):
    """Exact laws of the finite multiple harmonic sums (letters z_k)."""

    default_samples = 100
    bound = 8

    def laws(self) -> Iterator[Law]:
        yield "ζ≤n(u*v) = ζ≤n(u)ζ≤n(v)", self.homomorphism(qsh, harmonic)
        yield "ζ⋆≤n(u⋆v) = ζ⋆≤n(u)ζ⋆≤n(v)", self.homomorphism(qsh_star, harmonic_star)
        yield "ζ≤n({1}_r) = s(n+1, r+1)/n!", self.stirling
        yield "ζ⋆≤n(w) = ζ≤n(Σw)", self.sigma_bridge
        yield "{k}_r generating functions", self.repeated_letters

    def homomorphism(self, op, value) -> Callable[[], Iterable[Case]]:
        p = self.params
        alphabet = ZAlphabet()
        words = [w for w in _words_of_weight(6, max_length=3) if w]

        def cases():
            rng = p.rng(f"harmonic:{op.__name__}")
            for _ in range(p.samples):
                u, v = rng.choice(words), rng.choice(words)
                n = rng.randint(1, self.bound)
                x, y = NcPoly(alphabet, {u: 1}), NcPoly(alphabet, {v: 1})
                yield f"{x}, {y}, n = {n}", value(op(x, y), n), value(x, n) * value(y, n)

        return cases

    def stirling(self) -> Iterable[Case]:
        alphabet = ZAlphabet()
        for n in range(1, self.bound + 1):
            for r in range(n + 1):
                word = NcPoly(alphabet, {((1,),) * r: 1})
                yield f"n = {n}, r = {r}", harmonic(word, n), Fraction(stirling_first(n + 1, r + 1), math.factorial(n))

    def sigma_bridge(self) -> Iterable[Case]:
        alphabet = ZAlphabet()
        for word in _words_of_weight(6):
            x = NcPoly(alphabet, {word: 1})
            yield str(x), harmonic_star(x, 6), harmonic(SIGMA(x), 6)

    def repeated_letters(self) -> Iterable[Case]:
        alphabet = ZAlphabet()
        for k, r, n in cartesian((1, 2), range(1, 5), range(1, self.bound + 1)):
            values = [harmonic(NcPoly.letter(alphabet, i * k), n) for i in range(1, r + 1)]
            word = NcPoly(alphabet, {((k,),) * r: 1})
            yield f"k = {k}, r = {r}, n = {n}", harmonic(word, n), zeta_power_series(values, r)[r]
            yield f"k = {k}, r = {r}, n = {n} (star)", harmonic_star(word, n), zeta_power_series(values, r, alternating=False)[r]


class QZetaSuite(CheckSuite, name="qzeta"):
    """Exact laws of the multiple q-zeta values modulo q^(order+1)."""

    def laws(self) -> Iterator[Law]:
        yield "ζ_q(u*v) = ζ_q(u)ζ_q(v)", self.homomorphism(qsh, qzeta)
        yield "ζ_q⋆(u⋆v) = ζ_q⋆(u)ζ_q⋆(v)", self.homomorphism(qsh_star, qzeta_star)
        yield "ζ_q(Σw) = weakly nested sum", self.star_forms
        yield "z_k^{⋄i} = Σ_j binom(i-1,j) eps^j z_{ik-j}", self.diamond_powers
        yield "{k}_r generating functions", self.repeated_letters

    @property
    def alphabet(self) -> Alphabet:
        return QAlphabet(QSeriesRing(self.params.qzeta_order))

    def homomorphism(self, op, value) -> Callable[[], Iterable[Case]]:
        p = self.params
        order = p.qzeta_order
        words = _words_of_weight(5, admissible=True)

        def cases():
            rng = p.rng(f"qzeta:{op.__name__}")
            alphabet = self.alphabet
            for _ in range(p.samples):
                x, y = NcPoly(alphabet, {rng.choice(words): 1}), NcPoly(alphabet, {rng.choice(words): 1})
                yield f"{x}, {y}", value(op(x, y), order), value(x, order) * value(y, order)

        return cases

    def star_forms(self) -> Iterable[Case]:
        order = self.params.qzeta_order
        for word in _words_of_weight(5, admissible=True):
            x = NcPoly(self.alphabet, {word: 1})
            yield str(x), qzeta_star(x, order), qzeta_star_nested(x, order)

    def diamond_powers(self) -> Iterable[Case]:
        alphabet = QAlphabet(PolyRing(("eps",)))
        eps = alphabet.eps
        for k, i in cartesian(range(1, 5), range(1, 7)):
            fused = NcPoly.from_lincomb(alphabet, diamond_letters(alphabet, [(k,)] * i))
            expected = NcPoly(
                alphabet, {((i * k - j,),): math.comb(i - 1, j) * alphabet.ring.power(eps, j) for j in range(i)}
            )
            yield f"k = {k}, i = {i}", fused, expected

    def repeated_letters(self) -> Iterable[Case]:
        evaluator = QZetaEvaluator(self.params.qzeta_order)
        for k, r in cartesian((2, 3), range(1, 4)):
            values = evaluator.repeated_letter_values(k, r)
            word = NcPoly(self.alphabet, {((k,),) * r: 1})
            yield f"k = {k}, r = {r}", evaluator.evaluate(word), zeta_power_series(values, r)[r]
            yield f"k = {k}, r = {r} (star)", evaluator.evaluate_sigma(word), zeta_power_series(
                values, r, alternating=False
            )[r]


class SumSuite(CheckSuite, name="sum"):
    """Σ^r S(k,l) in closed form, and D S(k,l) = (k-l) S(k,l-1)."""

    max_weight = 7

    def laws(self) -> Iterator[Law]:
        yield "Σ^r S(k,l) = Σ_n r^n binom(k-l-1+n,n) S(k,l-n)", self.interpolated
        yield "D S(k,l) = (k-l) S(k,l-1)", self.derivation
        yield "e(2n,k) has binom(n-1,k-1) terms", self.even_compositions

    def interpolated(self) -> Iterable[Case]:
        alphabet = ZAlphabet(PolyRing(("r",)))
        sigma_r = sigma_power_map("r")
        for k in range(2, self.max_weight + 1):
            for length in range(1, k):
                yield f"k = {k}, l = {length}", sigma_r(sum_words(k, length, alphabet)), sum_theorem_expansion(
                    k, length, alphabet
                )

    def derivation(self) -> Iterable[Case]:
        for k in range(3, self.max_weight + 1):
            for length in range(2, k):
                yield f"k = {k}, l = {length}", derivation_d(sum_words(k, length)), sum_words(k, length - 1).scale(
                    k - length
                )

    def even_compositions(self) -> Iterable[Case]:
        for n in range(1, self.max_weight + 1):
            for k in range(1, n + 1):
                yield f"n = {n}, k = {k}", len(even_comp_sum(n, k)), math.comb(n - 1, k - 1)


def suite_names() -> list[str]:
    return sorted(CheckSuite.subclasses)


def run_suite(
    name: str,
    alphabet: Alphabet,
    *,
    maxlen: int = 4,
    seed: int = 0,
    letter_index_max: int = 6,
    samples: int | None = None,
    qzeta_order: int = 20,
) -> CheckReport:
    """Run every law of a suite and collect the first counterexample of each.

    ``samples`` defaults to the size the suite declares.
    """
    suite_class = CheckSuite.subclasses.get(name)
    if suite_class is None:
        raise UnknownNameError(detail=Messages.UNKNOWN_SUITE % name)
    samples = samples or suite_class.default_samples
    params = SuiteParams(alphabet, maxlen, seed, letter_index_max, samples, qzeta_order)
    laws: list[str] = []
    failures: list[Counterexample] = []
    checked = 0
    for law, cases in suite_class(params).laws():
        laws.append(law)
        for label, left, right in cases():
            checked += 1
            if left != right:
                logger.warning("Law %r failed on %s", law, label)
                failures.append(Counterexample(law=law, input=label, left=str(left), right=str(right)))
                break
        logger.debug("Law %r done, %d cases so far", law, checked)
    logger.info("Suite %s: %d laws, %d cases, %d failures", name, len(laws), checked, len(failures))
    return CheckReport(
        suite=name,
        ok=not failures,
        laws=laws,
        checked=checked,
        failures=failures,
        params={
            "alphabet": str(alphabet),
            "ring": str(alphabet.ring),
            "maxlen": maxlen,
            "seed": seed,
            "letter_index_max": letter_index_max,
            "samples": samples,
        },
    )
