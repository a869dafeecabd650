"""Coefficient rings.

Three exact rings carry every algebraic structure in the package:

* :class:`RationalRing` -- :class:`fractions.Fraction` values;
* :class:`PolyRing` -- polynomials with rational coefficients in a fixed,
  ordered list of named parameters (``p``, ``r``, ``s``, ``eps`` ...), backed by
  :mod:`sympy.polys.rings` so canonical form and equality come for free;
* :class:`QSeriesRing` -- power series in ``q`` truncated after ``q^M``.

Ring elements use plain Python operators. A ring object knows how to coerce
foreign values, divide by a nonzero rational, print, and specialize its
variables.  Complex floating values only appear in :mod:`qshuffle.evaluators`.
"""

import logging
import re
from collections.abc import Mapping
from dataclasses import dataclass
from dataclasses import field
from fractions import Fraction
from functools import cached_property
from functools import reduce
from typing import Any
from typing import Self

from sympy import QQ
from sympy.polys.orderings import lex
from sympy.polys.ring_series import rs_mul
from sympy.polys.ring_series import rs_pow
from sympy.polys.ring_series import rs_series_inversion
from sympy.polys.ring_series import rs_trunc
from sympy.polys.rings import PolyElement
from sympy.polys.rings import ring

from .enums import Messages
from .enums import ScalarKind
from .exceptions import ConfigError
from .exceptions import DivisionByZeroError
from .exceptions import NotInvertibleError
from .exceptions import ParseError
from .exceptions import ScalarMismatchError
from .exceptions import UnboundVariableError
from .exceptions import UnknownNameError

logger = logging.getLogger(__name__)

Rational = Fraction
Scalar = Any

_RATIONAL_RE = re.compile(r"^\s*([-+−]?)\s*(\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"-3/7"`` style literals (the unicode minus sign is accepted)."""
    match = _RATIONAL_RE.match(text)
    if not match:
        raise ParseError(detail=f"Invalid rational literal {text!r}")
    sign, num, den = match.groups()
    if den is not None and int(den) == 0:
        raise DivisionByZeroError(detail=Messages.DIVISION_BY_ZERO % num)
    value = Fraction(int(num), int(den or 1))
    return -value if sign in ("-", "−") else value


def format_rational(value: Fraction) -> str:
    return str(Fraction(value))


def to_fraction(value) -> Fraction:
    """Convert a sympy ground element (``mpq``/``PythonMPQ``) or int to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    return Fraction(int(value.numerator), int(value.denominator))


def to_qq(value: Fraction | int):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


class ScalarRing:
    """Base class for the exact coefficient rings."""

    kind: ScalarKind

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def coerce(self, value) -> Scalar:
        raise NotImplementedError

    def is_zero(self, value) -> bool:
        return not value

    def contains(self, value) -> bool:
        try:
            self.coerce(value)
        except ScalarMismatchError:
            return False
        return True

    def divide(self, value, q: Fraction | int) -> Scalar:
        """Exact division by a nonzero rational."""
        q = Fraction(q)
        if q == 0:
            raise DivisionByZeroError(detail=Messages.DIVISION_BY_ZERO % self.format(value))
        return self.coerce(value) * self.coerce(1 / q)

    def inverse(self, value) -> Scalar:
        raise NotImplementedError

    def power(self, value, exponent: int) -> Scalar:
        if exponent < 0:
            return self.power(self.inverse(value), -exponent)
        result = self.one
        base = self.coerce(value)
        for _ in range(exponent):
            result = result * base
        return result

    def variable(self, name: str) -> Scalar:
        raise UnknownNameError(detail=f"Variable {name} is not defined over {self}")

    def parameter(self, name: str) -> Scalar:
        """Named parameter such as ``eps`` (= 1 - q) where the ring has one."""
        return self.variable(name)

    def has_parameter(self, name: str) -> bool:
        try:
            self.parameter(name)
        except UnknownNameError:
            return False
        return True

    def format(self, value) -> str:
        raise NotImplementedError

    def is_atomic(self, value) -> bool:
        """True when ``format(value)`` can stand before ``*`` without parentheses."""
        return True

    def substitute(self, value, bindings: Mapping[str, Fraction]) -> Fraction:
        raise NotImplementedError


@dataclass(frozen=True)
class RationalRing(ScalarRing):
    kind = ScalarKind.RATIONAL

    def coerce(self, value) -> Fraction:
        if isinstance(value, (Fraction, int)):
            return Fraction(value)
        if isinstance(value, PolyElement) and value.is_ground:
            return to_fraction(value.LC if value else 0)
        raise ScalarMismatchError(detail=Messages.SCALAR_MISMATCH % (value, self))

    def inverse(self, value) -> Fraction:
        value = self.coerce(value)
        if value == 0:
            raise NotInvertibleError(detail=Messages.NOT_INVERTIBLE % (value, self))
        return 1 / value

    def format(self, value) -> str:
        return format_rational(value)

    def is_atomic(self, value) -> bool:
        return True

    def substitute(self, value, bindings: Mapping[str, Fraction]) -> Fraction:
        return self.coerce(value)

    def __str__(self) -> str:
        return "rational"


@dataclass(frozen=True)
class PolyRing(ScalarRing):
    """Polynomials over QQ in ``variables``, ordered lexicographically in that order."""

    variables: tuple[str, ...]
    kind = ScalarKind.POLY

    def __post_init__(self):
        if not self.variables:
            raise ConfigError(detail="A polynomial ring needs at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise ConfigError(detail=f"Duplicate variables in {self.variables}")

    @cached_property
    def _ring(self):
        return ring(",".join(self.variables), QQ, lex)[0]

    def coerce(self, value) -> PolyElement:
        if isinstance(value, PolyElement):
            if value.ring == self._ring:
                return value
            if value.is_ground:
                return self._ring(value.LC if value else 0)
            if {str(s) for s in value.ring.symbols} <= set(self.variables):
                return value.set_ring(self._ring)
            raise ScalarMismatchError(detail=Messages.SCALAR_MISMATCH % (value, self))
        if isinstance(value, (Fraction, int)):
            return self._ring(to_qq(value))
        raise ScalarMismatchError(detail=Messages.SCALAR_MISMATCH % (value, self))

    def variable(self, name: str) -> PolyElement:
        if name not in self.variables:
            raise UnknownNameError(detail=f"Variable {name} is not defined over {self}")
        return self._ring.gens[self.variables.index(name)]

    def inverse(self, value) -> PolyElement:
        value = self.coerce(value)
        if not value or not value.is_ground:
            raise NotInvertibleError(detail=Messages.NOT_INVERTIBLE % (self.format(value), self))
        return self._ring(1 / value.LC)

    def terms(self, value) -> list[tuple[tuple[int, ...], Fraction]]:
        """Nonzero terms in descending lexicographic monomial order."""
        return [(monom, to_fraction(coeff)) for monom, coeff in self.coerce(value).terms()]

    def format(self, value) -> str:
        value = self.coerce(value)
        if not value:
            return "0"
        parts: list[str] = []
        for monom, coeff in self.terms(value):
            factors = []
            for name, exp in zip(self.variables, monom, strict=True):
                if exp == 1:
                    factors.append(name)
                elif exp > 1:
                    factors.append(f"{name}^{exp}")
            magnitude = abs(coeff)
            if not factors:
                body = format_rational(magnitude)
            elif magnitude == 1:
                body = "*".join(factors)
            else:
                body = "*".join([format_rational(magnitude), *factors])
            if not parts:
                parts.append(f"-{body}" if coeff < 0 else body)
            else:
                parts.append(f"- {body}" if coeff < 0 else f"+ {body}")
        return " ".join(parts)

    def is_atomic(self, value) -> bool:
        return len(self.coerce(value)) <= 1

    def free_variables(self, value) -> set[str]:
        used = set()
        for monom, _ in self.terms(value):
            used.update(name for name, exp in zip(self.variables, monom, strict=True) if exp)
        return used

    def specialize(self, value, images: Mapping[str, Any], target: ScalarRing) -> Scalar:
        """Ring homomorphism sending each variable to ``images[name]`` in ``target``.

        Variables without an image are kept when ``target`` knows them by name.
        """
        result = target.zero
        for monom, coeff in self.terms(value):
            term = target.coerce(coeff)
            for name, exp in zip(self.variables, monom, strict=True):
                if not exp:
                    continue
                if name in images:
                    image = target.coerce(images[name])
                else:
                    try:
                        image = target.variable(name)
                    except UnknownNameError:
                        raise UnboundVariableError(detail=Messages.UNBOUND_VARIABLE % name) from None
                term = term * target.power(image, exp)
            result = result + term
        return result

    def substitute(self, value, bindings: Mapping[str, Fraction]) -> Fraction:
        missing = self.free_variables(value) - set(bindings)
        if missing:
            raise UnboundVariableError(detail=Messages.UNBOUND_VARIABLE % ", ".join(sorted(missing)))
        return self.specialize(value, {k: Fraction(v) for k, v in bindings.items()}, RationalRing())

    def with_variables(self, *names: str) -> "PolyRing":
        extra = tuple(name for name in names if name not in self.variables)
        return PolyRing(self.variables + extra) if extra else self

    def __str__(self) -> str:
        return f"poly:{','.join(self.variables)}"


_QRING, _q = ring("q", QQ, lex)


@dataclass(frozen=True)
class QSeries:
    """Element of QQ[[q]] known modulo q^(order+1)."""

    poly: PolyElement = field(compare=False)
    order: int

    def __post_init__(self):
        object.__setattr__(self, "poly", rs_trunc(self.poly, _q, self.order + 1))

    @classmethod
    def constant(cls, value: Fraction | int, order: int) -> Self:
        return cls(_QRING(to_qq(value)), order)

    @classmethod
    def from_coefficients(cls, coefficients, order: int) -> Self:
        poly = _QRING.zero
        for i, c in enumerate(coefficients):
            if c:
                poly += to_qq(c) * _q**i
        return cls(poly, order)

    @property
    def coefficients(self) -> list[Fraction]:
        values = [Fraction(0)] * (self.order + 1)
        for (exp,), coeff in self.poly.terms():
            values[exp] = to_fraction(coeff)
        return values

    def _coerce(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            if other.order != self.order:
                raise ScalarMismatchError(detail=Messages.ORDER_MISMATCH % (self.order, other.order))
            return other
        if isinstance(other, (Fraction, int)):
            return QSeries.constant(other, self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QSeries(self.poly + other.poly, self.order)

    __radd__ = __add__

    def __neg__(self):
        return QSeries(-self.poly, self.order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QSeries(self.poly - other.poly, self.order)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QSeries(rs_mul(self.poly, other.poly, _q, self.order + 1), self.order)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        if exponent == 0:
            return QSeries.constant(1, self.order)
        return QSeries(rs_pow(self.poly, exponent, _q, self.order + 1), self.order)

    def inverse(self) -> "QSeries":
        if not self.coefficients[0]:
            raise NotInvertibleError(detail=Messages.NOT_INVERTIBLE % (self, "QQ[[q]]"))
        return QSeries(rs_series_inversion(self.poly, _q, self.order + 1), self.order)

    def __bool__(self) -> bool:
        return bool(self.poly)

    def __eq__(self, other) -> bool:
        if isinstance(other, (Fraction, int)):
            other = QSeries.constant(other, self.order)
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.order == other.order and self.poly == other.poly

    def __hash__(self) -> int:
        return hash((self.order, tuple(self.coefficients)))

    def __str__(self) -> str:
        parts: list[str] = []
        for exp, coeff in enumerate(self.coefficients):
            if not coeff:
                continue
            magnitude = abs(coeff)
            if exp == 0:
                body = format_rational(magnitude)
            else:
                power = "q" if exp == 1 else f"q^{exp}"
                body = power if magnitude == 1 else f"{format_rational(magnitude)}*{power}"
            if not parts:
                parts.append(f"-{body}" if coeff < 0 else body)
            else:
                parts.append(f"- {body}" if coeff < 0 else f"+ {body}")
        return " ".join(parts) or "0"

    __repr__ = __str__


@dataclass(frozen=True)
class QSeriesRing(ScalarRing):
    """QQ[[q]] truncated after q^order; ``eps`` names 1 - q."""

    order: int
    kind = ScalarKind.QSERIES

    def __post_init__(self):
        if self.order < 0:
            raise ConfigError(detail=Messages.RANGE % ("q-series order", ">= 0"))

    def coerce(self, value) -> QSeries:
        if isinstance(value, QSeries):
            if value.order != self.order:
                raise ScalarMismatchError(detail=Messages.ORDER_MISMATCH % (value.order, self.order))
            return value
        if isinstance(value, (Fraction, int)):
            return QSeries.constant(value, self.order)
        if isinstance(value, PolyElement) and value.is_ground:
            return QSeries.constant(to_fraction(value.LC if value else 0), self.order)
        raise ScalarMismatchError(detail=Messages.SCALAR_MISMATCH % (value, self))

    def variable(self, name: str) -> QSeries:
        if name == "q":
            return QSeries(_q, self.order)
        if name == "eps":
            return QSeries(1 - _q, self.order)
        raise UnknownNameError(detail=f"Variable {name} is not defined over {self}")

    def inverse(self, value) -> QSeries:
        return self.coerce(value).inverse()

    def power(self, value, exponent: int) -> QSeries:
        return self.coerce(value) ** exponent

    def format(self, value) -> str:
        return str(self.coerce(value))

    def is_atomic(self, value) -> bool:
        return sum(1 for c in self.coerce(value).coefficients if c) <= 1

    def substitute(self, value, bindings: Mapping[str, Fraction]) -> Fraction:
        if "q" not in bindings:
            raise UnboundVariableError(detail=Messages.UNBOUND_VARIABLE % "q")
        q = Fraction(bindings["q"])
        return reduce(lambda acc, c: acc * q + c, reversed(self.coerce(value).coefficients), Fraction(0))

    def __str__(self) -> str:
        return f"qseries:{self.order}"


def make_ring(spec: str) -> ScalarRing:
    """Build a ring from ``rational``, ``poly:<v1,v2,...>`` or ``qseries:<M>``."""
    kind, _, rest = spec.strip().partition(":")
    try:
        kind = ScalarKind(kind)
    except ValueError:
        raise ConfigError(detail=Messages.INVALID_SPEC % ("coefficient ring", spec)) from None
    if kind is ScalarKind.RATIONAL:
        if rest:
            raise ConfigError(detail=Messages.INVALID_SPEC % ("coefficient ring", spec))
        return RationalRing()
    if kind is ScalarKind.POLY:
        names = tuple(name.strip() for name in rest.split(",") if name.strip())
        if not names or not all(name.isidentifier() for name in names):
            raise ConfigError(detail=Messages.INVALID_SPEC % ("coefficient ring", spec))
        return PolyRing(names)
    if not rest.isdigit():
        raise ConfigError(detail=Messages.INVALID_SPEC % ("coefficient ring", spec))
    return QSeriesRing(int(rest))


def common_ring(a: ScalarRing, b: ScalarRing) -> ScalarRing:
    if a != b:
        raise ScalarMismatchError(detail=Messages.SCALAR_MISMATCH % (a, b))
    return a
