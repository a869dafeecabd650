from typing import Any

import orjson
from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field
from pydantic import model_validator

from .enums import ValueKind


class ApplicationErrorModel(BaseModel):
    message: str
    code: str | int


class CustomModel(BaseModel):
    """Custom Pydantic model with additional methods"""

    def serializable_dict(self, **kwargs):
        """Return a dict which contains only serializable fields."""
        return self.model_dump(mode="json", **kwargs)

    @model_validator(mode="before")
    @classmethod
    def validate_to_json(cls, data):
        """Validate and convert a string to a dict."""
        if isinstance(data, (str, bytes)):
            return orjson.loads(data)
        return data


class PolyTerm(CustomModel):
    coeff: str = Field(..., description="Coefficient in canonical printed form")
    word: list[list[int]] = Field(..., description="Letters as index tuples")


class PolyPayload(CustomModel):
    """Polynomial result of a command."""

    input: str
    terms: list[PolyTerm]

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "input": "z1 * z1",
                "terms": [
                    {"coeff": "1", "word": [[2]]},
                    {"coeff": "2", "word": [[1], [1]]},
                ],
            }
        }
    )


class TensorTerm(CustomModel):
    coeff: str
    left: list[list[int]]
    right: list[list[int]]


class TensorPayload(CustomModel):
    input: str
    terms: list[TensorTerm]


class EvalResult(CustomModel):
    input: str
    value: str
    kind: ValueKind

    model_config = ConfigDict(
        json_schema_extra={
            "example": {"input": "z2", "value": "1.6448340718480652", "kind": "complex"},
        }
    )


class Counterexample(CustomModel):
    law: str
    input: str
    left: str | None = None
    right: str | None = None


class IdentityReport(CustomModel):
    """Outcome of comparing both sides of a generating-function identity."""

    name: str
    ok: bool
    order: int
    degree: int | None = Field(None, description="First differing power of lambda")
    difference: str | None = None
    parts: list[str] = Field(default_factory=list)


class CheckReport(CustomModel):
    suite: str
    ok: bool
    laws: list[str] = Field(default_factory=list)
    checked: int = 0
    failures: list[Counterexample] = Field(default_factory=list)
    params: dict[str, Any] = Field(default_factory=dict)
