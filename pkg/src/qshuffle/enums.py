import enum


class Codes(enum.IntEnum):
    """qshuffle error codes."""

    OK = 0
    APPLICATION_ERROR = 1
    SCALAR_MISMATCH = 2
    DIVISION_BY_ZERO = 3
    UNBOUND_VARIABLE = 4
    NOT_INVERTIBLE = 5
    ALPHABET_MISMATCH = 6
    INVALID_LETTER = 7
    INVALID_COMPOSITION = 8
    TRUNCATION = 9
    UNKNOWN_NAME = 10
    INADMISSIBLE = 11
    SYNTAX_ERROR = 12
    CONFIG_ERROR = 13
    VALUE_RANGE = 14


class ExitStatus(enum.IntEnum):
    OK = 0
    FAILURE = 1
    USAGE = 2
    CONFIG = 3


class Messages(str, enum.Enum):
    SCALAR_MISMATCH = "Cannot combine %s with %s"
    DIVISION_BY_ZERO = "Division of %s by zero"
    UNBOUND_VARIABLE = "Variable %s has no binding"
    NOT_INVERTIBLE = "%s is not a unit of %s"
    ALPHABET_MISMATCH = "Cannot combine elements over %s and %s"
    LETTER_OUT_OF_RANGE = "Letter %s is not in alphabet %s"
    WEIGHT_MISMATCH = "Composition %s has weight %d but the word has length %d"
    EMPTY_COMPOSITION = "Compositions of %d do not exist"
    WORD_TOO_LONG = "Word of length %d exceeds truncation order %d"
    ORDER_MISMATCH = "Truncation orders differ: %d and %d"
    UNKNOWN_SERIES = "Unknown series %s"
    UNKNOWN_IDENTITY = "Unknown identity %s"
    UNKNOWN_SUITE = "Unknown check suite %s"
    UNKNOWN_EVALUATOR = "Unknown evaluator %s"
    UNKNOWN_MAP = "Unknown map %s"
    INADMISSIBLE = "Word %s is not admissible: %s"
    CONSTANT_TERM = "Series must have constant term %s"
    CONFIG_ALPHABET_RING = "Alphabet %s requires %s"
    INVALID_SPEC = "Invalid %s specification %r"
    RANGE = "%s must satisfy %s"


class ProductMode(enum.StrEnum):
    """Bilinear products on words, selected per operation."""

    QSH = "qsh"
    QSH_STAR = "qsh-star"
    SHUFFLE = "shuffle"
    DIAMOND = "diamond"
    CONCAT = "concat"

    @classmethod
    def parse(cls, value: str) -> "ProductMode":
        return PRODUCT_ALIASES.get(value) or cls(value)


# `star` names the asterisk product, `bigstar` the starred one.
PRODUCT_ALIASES = {
    "*": ProductMode.QSH,
    "star": ProductMode.QSH,
    "ast": ProductMode.QSH,
    "bigstar": ProductMode.QSH_STAR,
    "⋆": ProductMode.QSH_STAR,
    "sh": ProductMode.SHUFFLE,
    "⋄": ProductMode.DIAMOND,
}


class AntipodeKind(enum.StrEnum):
    QSH = "qsh"
    QSH_STAR = "qsh-star"
    DIAMOND = "diamond"


class ScalarKind(enum.StrEnum):
    RATIONAL = "rational"
    POLY = "poly"
    QSERIES = "qseries"


class AlphabetKind(enum.StrEnum):
    Z = "z"
    Q = "q"
    EULER = "euler"
    ZERO = "zero"


class OutputFormat(enum.StrEnum):
    TEXT = "text"
    JSON = "json"


class ValueKind(enum.StrEnum):
    RATIONAL = "rational"
    QSERIES = "qseries"
    COMPLEX = "complex"


class SeriesName(enum.StrEnum):
    """Catalog of power series without constant term."""

    IDENTITY = "t"
    NEGATIVE = "-t"
    GEOMETRIC = "t/(1-t)"
    ALTERNATING = "t/(1+t)"
    GEOMETRIC_P = "t/(1-pt)"
    EXP = "e^t-1"
    LOG = "log(1+t)"
    BINOMIAL = "(1+t)^p-1"
    BINOMIAL_DUAL = "1-(1-t)^p"
