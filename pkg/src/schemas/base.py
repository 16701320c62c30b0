"""Base schema types shared by all models."""

from typing import Annotated
from typing import Any

from pydantic import BaseModel
from pydantic import BeforeValidator
from pydantic import ConfigDict
from pydantic import PlainSerializer

from src.utils.cyclotomic import CycNum


def _serialize_amplitude(value: CycNum) -> dict[str, Any]:
    return value.to_json()


# Exact scalar held by models, written as {order, coeffs}
Amplitude = Annotated[
    CycNum,
    BeforeValidator(CycNum.from_json),
    PlainSerializer(_serialize_amplitude, return_type=dict[str, Any]),
]


class FrozenModel(BaseModel):
    """Immutable model base with unknown fields rejected."""

    model_config = ConfigDict(
        frozen=True,
        extra="forbid",
        arbitrary_types_allowed=True,
    )
