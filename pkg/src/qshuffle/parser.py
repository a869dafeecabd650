"""Parser for the textual form of k<A> elements.

Grammar::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := scalar ['*' word] | word
    word   := letter+ | '1'
    letter := 'z' int [',' int]
    scalar := factor ('*' factor)*
    factor := rational | name ['^' int] | '(' sum ')' ['^' int]

``sum`` is a signed sum of scalars. Every printed :class:`NcPoly` parses back
to an equal element, so the output of one command can feed the next.
"""

import logging
import re
from fractions import Fraction
from typing import NamedTuple

from .exceptions import ApplicationError
from .exceptions import ParseError
from .scalars import Scalar
from .word_algebra import EMPTY
from .word_algebra import Alphabet
from .word_algebra import Letter
from .word_algebra import NcPoly
from .word_algebra import Word
from .word_algebra import _add_term

logger = logging.getLogger(__name__)

_TOKENS = {
    "letter": r"z\d+(?:,\d+)?(?![\w])",
    "number": r"\d+(?:/\d+)?",
    "name": r"[A-Za-z_][A-Za-z0-9_]*",
    "plus": r"\+",
    "minus": r"[-−]",
    "mul": r"\*",
    "pow": r"\^",
    "lpar": r"\(",
    "rpar": r"\)",
    "skip": r"\s+",
    "error": r".",
}
_TOKEN_RE = re.compile("|".join(f"(?P<{kind}>{pattern})" for kind, pattern in _TOKENS.items()))


class Token(NamedTuple):
    type: str
    value: str
    offset: int


def byte_offset(source: str, index: int) -> int:
    return len(source[:index].encode())


def tokenize(source: str) -> list[Token]:
    tokens = []
    for match in _TOKEN_RE.finditer(source):
        kind = match.lastgroup
        if kind == "skip":
            continue
        if kind == "error":
            raise ParseError(
                detail=f"Unexpected character {match.group()!r}",
                position=byte_offset(source, match.start()),
                source=source,
            )
        tokens.append(Token(kind, match.group(), byte_offset(source, match.start())))
    tokens.append(Token("end", "", len(source.encode())))
    return tokens


class Parser:
    """Recursive descent over the token list, building values in ``alphabet``."""

    def __init__(self, source: str, alphabet: Alphabet):
        self.source = source
        self.alphabet = alphabet
        self.ring = alphabet.ring
        self.tokens = tokenize(source)
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def error(self, detail: str, token: Token | None = None) -> ParseError:
        token = token or self.current
        return ParseError(detail=detail, position=token.offset, source=self.source)

    def expect(self, kind: str) -> Token:
        if self.current.type != kind:
            found = self.current.value or "end of input"
            raise self.error(f"Expected {kind}, found {found!r}")
        return self.advance()

    def parse(self) -> NcPoly:
        terms: dict[Word, Scalar] = {}
        sign = 1
        if self.current.type in ("plus", "minus"):
            sign = -1 if self.advance().type == "minus" else 1
        while True:
            word, coeff = self.term()
            _add_term(terms, word, coeff if sign > 0 else -coeff)
            if self.current.type not in ("plus", "minus"):
                break
            sign = -1 if self.advance().type == "minus" else 1
        if self.current.type != "end":
            raise self.error(f"Unexpected {self.current.value!r}")
        return NcPoly(self.alphabet, terms)

    def term(self) -> tuple[Word, Scalar]:
        if self.current.type == "letter":
            return self.word(), self.ring.one
        coeff = self.factor()
        while self.current.type == "mul":
            self.advance()
            if self.current.type == "letter":
                return self.word(), coeff
            coeff = coeff * self.factor()
        return EMPTY, coeff

    def word(self) -> Word:
        letters: list[Letter] = []
        while self.current.type == "letter":
            letters.append(self.letter(self.advance()))
        return tuple(letters)

    def letter(self, token: Token) -> Letter:
        try:
            return self.alphabet.parse_letter(token.value)
        except ApplicationError as e:
            raise self.error(e.detail, token) from None

    def factor(self) -> Scalar:
        token = self.current
        if token.type == "number":
            self.advance()
            num, _, den = token.value.partition("/")
            if den and int(den) == 0:
                raise self.error("Division by zero", token)
            value = self.ring.coerce(Fraction(int(num), int(den or 1)))
        elif token.type == "name":
            self.advance()
            try:
                value = self.ring.variable(token.value)
            except ApplicationError as e:
                raise self.error(e.detail, token) from None
        elif token.type == "lpar":
            self.advance()
            value = self.scalar_sum()
            self.expect("rpar")
        elif token.type == "minus":
            self.advance()
            return -self.factor()
        else:
            found = token.value or "end of input"
            raise self.error(f"Expected a coefficient or a letter, found {found!r}", token)
        if self.current.type == "pow":
            self.advance()
            exponent = self.expect("number")
            if not exponent.value.isdigit():
                raise self.error("Exponent must be a nonnegative integer", exponent)
            value = self.ring.power(value, int(exponent.value))
        return value

    def scalar_product(self) -> Scalar:
        value = self.factor()
        while self.current.type == "mul":
            self.advance()
            value = value * self.factor()
        return value

    def scalar_sum(self) -> Scalar:
        value = self.ring.zero
        sign = 1
        if self.current.type in ("plus", "minus"):
            sign = -1 if self.advance().type == "minus" else 1
        while True:
            part = self.scalar_product()
            value = value + part if sign > 0 else value - part
            if self.current.type not in ("plus", "minus"):
                return value
            sign = -1 if self.advance().type == "minus" else 1


def parse_poly(source: str, alphabet: Alphabet) -> NcPoly:
    """Parse ``"1/2*z2 z1 + z3"`` into an element of k<A>."""
    if not source.strip():
        raise ParseError(detail="Empty expression", position=0, source=source)
    result = Parser(source, alphabet).parse()
    if logger.isEnabledFor(logging.DEBUG):
        logger.debug("Parsed %r into %d terms", source, len(result))
    return result


def parse_letters(source: str, alphabet: Alphabet) -> list[NcPoly]:
    """``"z1; z3"`` -> [z1, z3]: one letter combination per power of λ."""
    return [parse_poly(part, alphabet) for part in source.split(";")]


def parse_letter(source: str, alphabet: Alphabet) -> Letter:
    parser = Parser(source, alphabet)
    token = parser.expect("letter")
    letter = parser.letter(token)
    parser.expect("end")
    return letter


def parse_scalar(source: str, alphabet: Alphabet) -> Scalar:
    """A coefficient on its own, e.g. ``"1/2"`` or ``"(1 - eps)^2"``."""
    value = parse_poly(source, alphabet)
    if any(word for word in value.words()):
        raise ParseError(detail=f"Expected a coefficient, found {value}", position=0, source=source)
    return value.constant_term()
