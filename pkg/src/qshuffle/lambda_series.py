"""Truncated power series in λ with coefficients in k<A>.

A :class:`LambdaSeries` never remembers a product: every product, inverse and
power takes the mode (*, ⋆, shuffle, ⋄, concatenation) as an argument.
The generating-function identities are registered as :class:`GfIdentity`
subclasses and evaluated side by side by :func:`check_identity`.
"""

import logging
from collections.abc import Iterator
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import ClassVar

from .enums import Messages
from .enums import ProductMode
from .enums import SeriesName
from .exceptions import CompositionError
from .exceptions import LetterError
from .exceptions import NotInvertibleError
from .exceptions import TruncationError
from .exceptions import UnknownNameError
from .scalars import Scalar
from .scalars import ScalarRing
from .schemas import IdentityReport
from .series_maps import EXP
from .series_maps import SIGMA
from .series_maps import FormalSeries
from .series_maps import NamedSeries
from .series_maps import PsiMap
from .series_maps import T
from .series_maps import WordMap
from .series_maps import h_map
from .series_maps import series_compose
from .series_maps import sigma_power_map
from .word_algebra import Alphabet
from .word_algebra import Letter
from .word_algebra import NcPoly
from .word_algebra import check_alphabets
from .word_algebra import product

logger = logging.getLogger(__name__)

LOG_SERIES = NamedSeries(SeriesName.LOG)
EXP_SERIES = NamedSeries(SeriesName.EXP)


class LambdaSeries:
    """x_0 + x_1 λ + ... + x_N λ^N with x_n in k<A>."""

    __slots__ = ("alphabet", "coeffs")

    def __init__(self, alphabet: Alphabet, coeffs: Sequence[NcPoly]):
        if not coeffs:
            raise TruncationError(detail=Messages.RANGE % ("lambda order", ">= 0"))
        self.alphabet = alphabet
        self.coeffs: tuple[NcPoly, ...] = tuple(coeffs)
        check_alphabets(NcPoly.zero(alphabet), *self.coeffs)

    @classmethod
    def constant(cls, alphabet: Alphabet, order: int, value: NcPoly | Scalar = 1) -> "LambdaSeries":
        x0 = value if isinstance(value, NcPoly) else NcPoly.one(alphabet).scale(value)
        return cls(alphabet, [x0] + [NcPoly.zero(alphabet)] * order)

    @classmethod
    def one(cls, alphabet: Alphabet, order: int) -> "LambdaSeries":
        return cls.constant(alphabet, order, 1)

    @classmethod
    def monomial(cls, alphabet: Alphabet, order: int, degree: int, value: NcPoly) -> "LambdaSeries":
        coeffs = [NcPoly.zero(alphabet)] * (order + 1)
        if degree <= order:
            coeffs[degree] = value
        return cls(alphabet, coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, n: int) -> NcPoly:
        return self.coeffs[n]

    def _check(self, other: "LambdaSeries") -> None:
        if self.order != other.order:
            raise TruncationError(detail=Messages.ORDER_MISMATCH % (self.order, other.order))

    def __add__(self, other: "LambdaSeries") -> "LambdaSeries":
        self._check(other)
        return LambdaSeries(self.alphabet, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "LambdaSeries":
        return LambdaSeries(self.alphabet, [-a for a in self.coeffs])

    def __sub__(self, other: "LambdaSeries") -> "LambdaSeries":
        return self + (-other)

    def scale(self, value: Scalar) -> "LambdaSeries":
        return LambdaSeries(self.alphabet, [a.scale(value) for a in self.coeffs])

    def __eq__(self, other) -> bool:
        if not isinstance(other, LambdaSeries):
            return NotImplemented
        return self.alphabet == other.alphabet and self.coeffs == other.coeffs

    __hash__ = None

    def first_difference(self, other: "LambdaSeries") -> tuple[int, NcPoly] | None:
        """Lowest λ-degree where the two series differ, with the difference."""
        self._check(other)
        for n, (a, b) in enumerate(zip(self.coeffs, other.coeffs)):
            if a != b:
                return n, a - b
        return None

    def __str__(self) -> str:
        parts = []
        for n, c in enumerate(self.coeffs):
            if not c:
                continue
            if n == 0:
                parts.append(str(c))
            else:
                power = "λ" if n == 1 else f"λ^{n}"
                parts.append(f"{power}*({c})")
        return " + ".join(parts) or "0"

    __repr__ = __str__


@dataclass(frozen=True)
class LambdaLinComb:
    """z = z_0 + z_1 λ + ... with every z_k in the span of the letters."""

    alphabet: Alphabet
    parts: tuple[NcPoly, ...]

    def __post_init__(self):
        for part in self.parts:
            if part.alphabet != self.alphabet or not part.is_letter_combination():
                raise LetterError(detail=f"{part} is not a combination of letters")

    @classmethod
    def of(cls, *parts: NcPoly) -> "LambdaLinComb":
        if not parts:
            raise LetterError(detail="A letter series needs at least one part")
        return cls(parts[0].alphabet, tuple(parts))

    @classmethod
    def letter(cls, alphabet: Alphabet, letter: Letter) -> "LambdaLinComb":
        return cls(alphabet, (NcPoly(alphabet, {(letter,): 1}),))

    def scale(self, value: Scalar) -> "LambdaLinComb":
        return LambdaLinComb(self.alphabet, tuple(p.scale(value) for p in self.parts))

    def __neg__(self) -> "LambdaLinComb":
        return self.scale(-1)

    def lam_times(self, order: int) -> LambdaSeries:
        """λz as a series with zero constant term."""
        coeffs = [NcPoly.zero(self.alphabet)] * (order + 1)
        for k, part in enumerate(self.parts, start=1):
            if k <= order:
                coeffs[k] = part
        return LambdaSeries(self.alphabet, coeffs)

    def __str__(self) -> str:
        return " + ".join(f"({p})" if k == 0 else f"λ^{k}*({p})" for k, p in enumerate(self.parts))


def bullet_product(mode: ProductMode | str, x: LambdaSeries, y: LambdaSeries) -> LambdaSeries:
    """Cauchy product in λ with the chosen product on coefficients."""
    x._check(y)
    coeffs = []
    for n in range(x.order + 1):
        total = NcPoly.zero(x.alphabet)
        for i in range(n + 1):
            if x.coeffs[i] and y.coeffs[n - i]:
                total = total + product(mode, x.coeffs[i], y.coeffs[n - i])
        coeffs.append(total)
    return LambdaSeries(x.alphabet, coeffs)


def series_inverse(mode: ProductMode | str, x: LambdaSeries) -> LambdaSeries:
    """1/X for x_0 = 1: Y_n = -Σ_{k>=1} X_k • Y_{n-k}."""
    one = NcPoly.one(x.alphabet)
    if x.coeffs[0] != one:
        raise NotInvertibleError(detail=Messages.CONSTANT_TERM % "1")
    ys = [one]
    for n in range(1, x.order + 1):
        total = NcPoly.zero(x.alphabet)
        for k in range(1, n + 1):
            if x.coeffs[k] and ys[n - k]:
                total = total - product(mode, x.coeffs[k], ys[n - k])
        ys.append(total)
    return LambdaSeries(x.alphabet, ys)


def _series_coefficients(f: FormalSeries | NamedSeries, order: int, ring: ScalarRing) -> list[Scalar]:
    if isinstance(f, NamedSeries):
        return list(f.build(order, ring).coeffs) if order else []
    if order > f.order:
        raise TruncationError(detail=Messages.WORD_TOO_LONG % (order, f.order))
    return [ring.coerce(c) for c in f.coeffs[:order]]


def apply_series(mode: ProductMode | str, f: FormalSeries | NamedSeries, u: LambdaSeries) -> LambdaSeries:
    """f_•(U) = Σ_i c_i U^{•i} for U with zero constant term."""
    if u.coeffs[0]:
        raise CompositionError(detail=Messages.CONSTANT_TERM % "0")
    coeffs = _series_coefficients(f, u.order, u.alphabet.ring)
    total = LambdaSeries.constant(u.alphabet, u.order, 0)
    power = u
    for c in coeffs:
        if c:
            total = total + power.scale(c)
        power = bullet_product(mode, power, u)
    return total


def f_bullet(mode: ProductMode | str, f: FormalSeries | NamedSeries, z: LambdaLinComb, order: int) -> LambdaSeries:
    """f_•(λz)."""
    return apply_series(mode, f, z.lam_times(order))


def exp_bullet(mode: ProductMode | str, u: LambdaSeries) -> LambdaSeries:
    return LambdaSeries.one(u.alphabet, u.order) + apply_series(mode, EXP_SERIES, u)


def log_bullet(mode: ProductMode | str, x: LambdaSeries) -> LambdaSeries:
    one = LambdaSeries.one(x.alphabet, x.order)
    if x.coeffs[0] != one.coeffs[0]:
        raise NotInvertibleError(detail=Messages.CONSTANT_TERM % "1")
    return apply_series(mode, LOG_SERIES, x - one)


def bullet_power(mode: ProductMode | str, x: LambdaSeries, p: Scalar | int) -> LambdaSeries:
    """X^{•p}: repeated products for integers, exp_•(p log_•(X)) otherwise."""
    if isinstance(p, Fraction) and p.denominator == 1:
        p = int(p)
    if isinstance(p, int):
        base = x if p >= 0 else series_inverse(mode, x)
        result = LambdaSeries.one(x.alphabet, x.order)
        for _ in range(abs(p)):
            result = bullet_product(mode, result, base)
        return result
    return exp_bullet(mode, log_bullet(mode, x).scale(p))


def geometric(z: LambdaLinComb, order: int) -> LambdaSeries:
    """1/(1 - λz) in the concatenation product."""
    return series_inverse(ProductMode.CONCAT, LambdaSeries.one(z.alphabet, order) - z.lam_times(order))


def lift_map(mapping: WordMap, x: LambdaSeries) -> LambdaSeries:
    """Apply a linear map to every λ-coefficient."""
    return LambdaSeries(x.alphabet, [mapping(c) for c in x.coeffs])


def _scalar(ring: ScalarRing, value) -> Scalar:
    if isinstance(value, str):
        return ring.variable(value)
    return ring.coerce(value)


@dataclass
class IdentityParams:
    alphabet: Alphabet
    order: int
    z: LambdaLinComb | None = None
    y: LambdaLinComb | None = None
    a: Letter | None = None
    b: Letter | None = None
    s: Fraction | str | None = None
    p: Fraction | str | None = None
    r: Fraction | str | None = None
    series: FormalSeries | NamedSeries | None = None
    mode: ProductMode | None = None

    @property
    def ring(self) -> ScalarRing:
        return self.alphabet.ring

    def require(self, name: str):
        value = getattr(self, name)
        if value is None:
            raise UnknownNameError(detail=f"Identity needs the parameter {name}")
        return value

    def scalar(self, name: str, default=None) -> Scalar:
        value = getattr(self, name)
        if value is None:
            if default is None:
                self.require(name)
            value = default
        return _scalar(self.ring, value)

    def one(self) -> LambdaSeries:
        return LambdaSeries.one(self.alphabet, self.order)


Side = tuple[str, LambdaSeries, LambdaSeries]


class GfIdentity:
    """A generating-function identity, registered under ``name``."""

    subclasses: ClassVar[dict[str, type["GfIdentity"]]] = {}
    name: ClassVar[str]

    def __init_subclass__(cls, name: str | None = None, **kwargs):
        if name:
            cls.name = name
            cls.subclasses[name] = cls
        super().__init_subclass__(**kwargs)

    def __init__(self, params: IdentityParams):
        self.params = params

    def sides(self) -> Iterator[Side]:
        raise NotImplementedError


class PsiGeometricIdentity(GfIdentity, name="ihafid"):
    """Ψ_f(1/(1-λz)) = 1/(1 - f_⋄(λz))."""

    defaults = (LOG_SERIES, EXP_SERIES, NamedSeries(SeriesName.GEOMETRIC))

    def sides(self) -> Iterator[Side]:
        p = self.params
        z = p.require("z")
        for f in [p.series] if p.series is not None else self.defaults:
            left = lift_map(PsiMap(f), geometric(z, p.order))
            right = series_inverse(ProductMode.CONCAT, p.one() - f_bullet(ProductMode.DIAMOND, f, z, p.order))
            yield f"f = {f}", left, right


class ExpLogIdentity(GfIdentity, name="expthm"):
    """exp_*(log_⋄(1+λz)) = 1/(1-λz) and exp_⋆(-log_⋄(1+λz)) = 1/(1+λz)."""

    def sides(self) -> Iterator[Side]:
        p = self.params
        z = p.require("z")
        log_diamond = log_bullet(ProductMode.DIAMOND, p.one() + z.lam_times(p.order))
        qsh_side = exp_bullet(ProductMode.QSH, log_diamond)
        star_side = exp_bullet(ProductMode.QSH_STAR, -log_diamond)
        yield "exp_*(log_⋄(1+λz)) = 1/(1-λz)", qsh_side, geometric(z, p.order)
        yield "exp_⋆(-log_⋄(1+λz)) = 1/(1+λz)", star_side, geometric(-z, p.order)
        yield "T exp_*(log_⋄(1+λz)) = exp_⋆(-log_⋄(1+λz))", lift_map(T, qsh_side), star_side


class ExpDiamondIdentity(GfIdentity, name="ikz_remark"):
    """exp(1/(1-λz)) = exp_*(λz) = (2 - exp_⋄(λz))^{-1}."""

    def sides(self) -> Iterator[Side]:
        p = self.params
        z = p.require("z")
        lam_z = z.lam_times(p.order)
        right = series_inverse(ProductMode.CONCAT, p.one().scale(2) - exp_bullet(ProductMode.DIAMOND, lam_z))
        yield "exp(1/(1-λz)) = (2-exp_⋄(λz))^-1", lift_map(EXP, geometric(z, p.order)), right
        yield "exp_*(λz) = (2-exp_⋄(λz))^-1", exp_bullet(ProductMode.QSH, lam_z), right


class PowerIdentity(GfIdentity, name="hpow"):
    """H_p(1/(1-λz)) = (1/(1-λz))^{*p}."""

    def sides(self) -> Iterator[Side]:
        p = self.params
        z = p.require("z")
        exponent = p.require("p")
        base = geometric(z, p.order)
        power = exponent if not isinstance(exponent, str) else p.scalar("p")
        yield f"p = {exponent}", lift_map(h_map(exponent), base), bullet_power(ProductMode.QSH, base, power)


class PsiInverseIdentity(GfIdentity, name="psifinv"):
    """Ψ_g(1/(1+λz)) * Ψ_f(1/(1-λz))^{*p} = 1 for g = ((1+t)^{-p} - 1)∘f∘(-t)."""

    def series_pair(self) -> tuple[FormalSeries, FormalSeries]:
        p = self.params
        ring, order = p.ring, p.order
        exponent = p.scalar("p", 1)
        if p.series is None:
            f = NamedSeries(SeriesName.GEOMETRIC_P, p.scalar("s", 0)).build(order, ring)
        elif isinstance(p.series, NamedSeries):
            f = p.series.build(order, ring)
        else:
            f = p.series.truncate(order).with_ring(ring)
        outer = NamedSeries(SeriesName.BINOMIAL, -exponent).build(order, ring)
        negate = NamedSeries(SeriesName.NEGATIVE).build(order, ring)
        g = series_compose(series_compose(outer, f), negate)
        return f, g

    def sides(self) -> Iterator[Side]:
        p = self.params
        z = p.require("z")
        f, g = self.series_pair()
        exponent = p.p if p.p is not None and not isinstance(p.p, str) else p.scalar("p", 1)
        left = bullet_product(
            ProductMode.QSH,
            lift_map(PsiMap(g), geometric(-z, p.order)),
            bullet_power(ProductMode.QSH, lift_map(PsiMap(f), geometric(z, p.order)), exponent),
        )
        yield f"f = {f}, g = {g}", left, p.one()


class SigmaInverseIdentity(GfIdentity, name="siinv"):
    """Σ^s(1/(1-λz)) * Σ^{1-s}(1/(1+λz)) = 1."""

    def sides(self) -> Iterator[Side]:
        p = self.params
        z = p.require("z")
        s = p.scalar("s")
        left = bullet_product(
            ProductMode.QSH,
            lift_map(sigma_power_map(s), geometric(z, p.order)),
            lift_map(sigma_power_map(p.ring.one - s), geometric(-z, p.order)),
        )
        yield f"s = {p.s}", left, p.one()


class FractionProductIdentity(GfIdentity, name="frprod"):
    """1/(1-λy) * 1/(1-λz) = 1/(1-λy-λz-λ²y⋄z) and its ⋆ counterpart."""

    def sides(self) -> Iterator[Side]:
        p = self.params
        y, z = p.require("y"), p.require("z")
        lam_y, lam_z = y.lam_times(p.order), z.lam_times(p.order)
        one = p.one()
        left = bullet_product(ProductMode.QSH, geometric(y, p.order), geometric(z, p.order))
        denominator = one - lam_y - lam_z - bullet_product(ProductMode.DIAMOND, lam_y, lam_z)
        yield "1/(1-λy) * 1/(1-λz)", left, series_inverse(ProductMode.CONCAT, denominator)
        left = bullet_product(ProductMode.QSH_STAR, geometric(-y, p.order), geometric(-z, p.order))
        denominator = bullet_product(ProductMode.DIAMOND, one + lam_y, one + lam_z)
        yield "1/(1+λy) ⋆ 1/(1+λz)", left, series_inverse(ProductMode.CONCAT, denominator)


class SigmaRepresentationIdentity(GfIdentity, name="repr"):
    """Σ^r(1/(1-λz)) * 1/(1+rλz) = 1/(1-(1-r)λz)."""

    def sides(self) -> Iterator[Side]:
        p = self.params
        z = p.require("z")
        r = p.scalar("r")
        one = p.one()
        lam_z = z.lam_times(p.order)
        left = bullet_product(
            ProductMode.QSH,
            lift_map(sigma_power_map(r), geometric(z, p.order)),
            series_inverse(ProductMode.CONCAT, one + lam_z.scale(r)),
        )
        right = series_inverse(ProductMode.CONCAT, one - lam_z.scale(p.ring.one - r))
        yield f"r = {p.r}", left, right


class DoubleFractionIdentity(GfIdentity, name="dblfrac"):
    """Σ(1/(1-λab)) = 1/(1-λab) * Σ(1/(1-λ a⋄b)) for letters a, b."""

    def sides(self) -> Iterator[Side]:
        p = self.params
        a, b = p.require("a"), p.require("b")
        alphabet, order = p.alphabet, p.order
        one = p.one()
        word = NcPoly(alphabet, {(a, b): 1})
        fused = NcPoly.from_lincomb(alphabet, alphabet.diamond(a, b))
        inv_word = series_inverse(ProductMode.CONCAT, one - LambdaSeries.monomial(alphabet, order, 1, word))
        inv_fused = series_inverse(ProductMode.CONCAT, one - LambdaSeries.monomial(alphabet, order, 1, fused))
        left = lift_map(SIGMA, inv_word)
        right = bullet_product(ProductMode.QSH, inv_word, lift_map(SIGMA, inv_fused))
        yield "Σ(1/(1-λab)) = 1/(1-λab) * Σ(1/(1-λa⋄b))", left, right


class ExpSumIdentity(GfIdentity, name="expsum"):
    """exp_•(λ(w+v)) = exp_•(λw) • exp_•(λv) for letters w, v."""

    def sides(self) -> Iterator[Side]:
        p = self.params
        y, z = p.require("y"), p.require("z")
        mode = p.mode or ProductMode.QSH
        lam_y, lam_z = y.lam_times(p.order), z.lam_times(p.order)
        left = exp_bullet(mode, lam_y + lam_z)
        right = bullet_product(mode, exp_bullet(mode, lam_y), exp_bullet(mode, lam_z))
        yield f"mode = {mode}", left, right


class ExpIdentity(GfIdentity, name="expid"):
    """exp_⧢(λz) = 1/(1-λz) and exp_*(λz) = exp(1/(1-λz))."""

    def sides(self) -> Iterator[Side]:
        p = self.params
        z = p.require("z")
        lam_z = z.lam_times(p.order)
        base = geometric(z, p.order)
        yield "exp_⧢(λz) = 1/(1-λz)", exp_bullet(ProductMode.SHUFFLE, lam_z), base
        yield "exp_*(λz) = exp(1/(1-λz))", exp_bullet(ProductMode.QSH, lam_z), lift_map(EXP, base)


class LogExpIdentity(GfIdentity, name="logexp"):
    """log_•(exp_•(λz)) = λz and exp_•(log_•(1+λz)) = 1+λz."""

    def sides(self) -> Iterator[Side]:
        p = self.params
        z = p.require("z")
        lam_z = z.lam_times(p.order)
        modes = [p.mode] if p.mode else list(ProductMode)
        for mode in modes:
            yield f"log_{mode}(exp_{mode}(λz))", log_bullet(mode, exp_bullet(mode, lam_z)), lam_z
            one_plus = p.one() + lam_z
            yield f"exp_{mode}(log_{mode}(1+λz))", exp_bullet(mode, log_bullet(mode, one_plus)), one_plus


def identity_names() -> list[str]:
    return sorted(GfIdentity.subclasses)


def check_identity(name: str, params: IdentityParams) -> IdentityReport:
    """Expand both sides of a named identity to λ^N and compare them exactly."""
    if params.order < 1:
        raise TruncationError(detail=Messages.RANGE % ("truncation order", ">= 1"))
    identity_class = GfIdentity.subclasses.get(name)
    if identity_class is None:
        raise UnknownNameError(detail=Messages.UNKNOWN_IDENTITY % name)
    labels = []
    for label, left, right in identity_class(params).sides():
        labels.append(label)
        difference = left.first_difference(right)
        if difference is not None:
            degree, delta = difference
            logger.warning("Identity %s failed at degree %d: %s", name, degree, label)
            return IdentityReport(
                name=name, ok=False, order=params.order, degree=degree, difference=str(delta), parts=labels
            )
        logger.debug("Identity %s holds to order %d: %s", name, params.order, label)
    return IdentityReport(name=name, ok=True, order=params.order, parts=labels)
