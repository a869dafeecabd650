import logging
from fractions import Fraction
from typing import Any

import orjson
from pydantic import BaseModel

from .context import correlation_id


def default_encoder(value: Any) -> Any:
    """Fallback for objects orjson does not know how to encode."""
    if isinstance(value, BaseModel):
        return value.model_dump(mode="json")
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, (set, frozenset)):
        return sorted(value)
    raise TypeError(f"Type is not JSON serializable: {type(value).__name__}")


def orjson_dumps(v, *, default=default_encoder) -> str:
    # orjson.dumps returns bytes, to match standard json.dumps we need to decode
    return orjson.dumps(v, default=default, option=orjson.OPT_SORT_KEYS).decode()


class ORJSONSerializer:
    @classmethod
    def encode(cls, value) -> str:
        return orjson_dumps(value)


class CustomFilter(logging.Filter):
    """Used by python logging to filter logs and add correlation_id."""

    def __init__(self, levels=None):
        super().__init__()
        self._levels = levels

    def filter(self, record):
        record.correlation_id = correlation_id.get()
        return self._levels is None or record.levelname in self._levels
