from functools import lru_cache
from pathlib import Path
from typing import Self

from pydantic import Field
from pydantic import model_validator
from pydantic_settings import BaseSettings
from pydantic_settings import SettingsConfigDict

from qshuffle.enums import OutputFormat
from qshuffle.exceptions import ApplicationError
from qshuffle.scalars import make_ring
from qshuffle.word_algebra import make_alphabet

BASE_DIR = Path(__file__).resolve().parent


class AppSettings:
    """Basic settings for the application."""

    APP_NAME: str = "qshuffle"
    VERSION: str = Field("0.1.0", alias="TAG")

    DEBUG: bool = False
    LOG_CONFIG: Path = BASE_DIR / "logging.yaml"


class AlgebraSettings:
    """Alphabet and coefficient ring every command works over."""

    # z | q | euler:<r> | zero
    ALPHABET: str = "z"
    # rational | poly:<vars> | qseries:<M>; derived from the alphabet when unset
    COEFF: str | None = None

    @model_validator(mode="after")
    def validate_alphabet(self) -> Self:
        try:
            make_alphabet(self.ALPHABET, make_ring(self.COEFF) if self.COEFF else None)
        except ApplicationError as e:
            raise ValueError(e.detail) from None
        return self


class TruncationSettings:
    """Truncation orders and the size of the verification universes."""

    TRUNC: int = Field(6, ge=1)
    MAXLEN: int = Field(4, ge=0)
    LETTER_INDEX_MAX: int = Field(6, ge=1)
    # random draws per law; each suite has its own default when unset
    SAMPLES: int | None = Field(None, ge=1)
    SEED: int = 0


class EvaluatorSettings:
    """Default parameters of the evaluators."""

    HARMONIC_N: int = Field(8, ge=0)
    QZETA_ORDER: int = Field(20, ge=0)
    MZV_CUTOFF: int = Field(10_000, ge=1)
    POLYLOG_CUTOFF: int = Field(100_000, ge=1)


class OutputSettings:
    FORMAT: OutputFormat = OutputFormat.TEXT


class Settings(
    BaseSettings,
    AppSettings,
    AlgebraSettings,
    TruncationSettings,
    EvaluatorSettings,
    OutputSettings,
):
    """Project settings."""

    model_config = SettingsConfigDict(
        env_prefix="QSHUFFLE_",
        env_file=BASE_DIR.parent / ".env",
        extra="ignore",
        populate_by_name=True,
    )


@lru_cache
def get_settings() -> Settings:
    return Settings()
