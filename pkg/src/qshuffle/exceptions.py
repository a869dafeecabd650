from .enums import Codes
from .enums import ExitStatus


class ApplicationError(Exception):
    """Application base error"""

    exit_code = ExitStatus.FAILURE
    default_detail = "Application error"
    default_code = Codes.APPLICATION_ERROR

    def __init__(
        self,
        code: int | str = None,
        detail: str | None = None,
    ) -> None:
        self.code = code or self.default_code
        self.detail = detail or self.default_detail
        super().__init__(self.detail)


class ScalarMismatchError(ApplicationError):
    default_detail = "Scalars belong to different coefficient rings"
    default_code = Codes.SCALAR_MISMATCH


class DivisionByZeroError(ApplicationError):
    default_detail = "Division by zero"
    default_code = Codes.DIVISION_BY_ZERO


class UnboundVariableError(ApplicationError):
    default_detail = "Unbound variable"
    default_code = Codes.UNBOUND_VARIABLE


class NotInvertibleError(ApplicationError):
    default_detail = "Element is not invertible"
    default_code = Codes.NOT_INVERTIBLE


class AlphabetMismatchError(ApplicationError):
    default_detail = "Operands belong to different alphabets"
    default_code = Codes.ALPHABET_MISMATCH


class LetterError(ApplicationError):
    default_detail = "Invalid letter"
    default_code = Codes.INVALID_LETTER


class CompositionError(ApplicationError):
    default_detail = "Invalid composition"
    default_code = Codes.INVALID_COMPOSITION


class TruncationError(ApplicationError):
    default_detail = "Insufficient truncation order"
    default_code = Codes.TRUNCATION


class UnknownNameError(ApplicationError):
    exit_code = ExitStatus.USAGE
    default_detail = "Unknown name"
    default_code = Codes.UNKNOWN_NAME


class InadmissibleWordError(ApplicationError):
    default_detail = "Word is not admissible for this evaluator"
    default_code = Codes.INADMISSIBLE


class ParseError(ApplicationError):
    """Syntax error in an expression, with the byte offset where it was found."""

    exit_code = ExitStatus.USAGE
    default_detail = "Syntax error"
    default_code = Codes.SYNTAX_ERROR

    def __init__(
        self,
        code: int | str = None,
        detail: str | None = None,
        position: int | None = None,
        source: str | None = None,
    ) -> None:
        super().__init__(code, detail)
        self.position = position
        self.source = source

    def __str__(self) -> str:
        if self.position is None:
            return self.detail
        return f"{self.detail} (at offset {self.position})"


class ConfigError(ApplicationError):
    exit_code = ExitStatus.CONFIG
    default_detail = "Invalid configuration"
    default_code = Codes.CONFIG_ERROR


class ValueRangeError(ApplicationError):
    default_detail = "Argument out of range"
    default_code = Codes.VALUE_RANGE
