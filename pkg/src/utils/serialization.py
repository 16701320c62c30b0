"""Canonical JSON encoding of documents and reports."""

import sys
from pathlib import Path
from typing import Any

import orjson
from loguru import logger
from pydantic import BaseModel
from pydantic import ValidationError

from src.core.errors import InvalidArgumentError
from src.core.errors import MalformedInputError
from src.schemas.documents import DecompositionDocument
from src.schemas.documents import Document
from src.schemas.documents import StateSetDocument


CANONICAL_OPTIONS = (
    orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2 | orjson.OPT_APPEND_NEWLINE
)


def dumps(value: BaseModel | dict[str, Any]) -> bytes:
    """Canonical JSON: sorted keys, two-space indent, trailing newline.

    Args:
        value: Model or plain JSON-compatible mapping.

    Returns:
        Encoded bytes, identical for equal inputs.
    """
    if isinstance(value, BaseModel):
        value = value.model_dump(mode="json")
    return orjson.dumps(value, option=CANONICAL_OPTIONS)


def loads(data: bytes | str) -> Any:
    """Decode JSON.

    Raises:
        MalformedInputError: If the input is not valid JSON.
    """
    try:
        return orjson.loads(data)
    except orjson.JSONDecodeError as e:
        raise MalformedInputError(f"Invalid JSON: {e}") from e


def parse_document(data: bytes | str) -> Document:
    """Decode a decomposition or state-set document.

    Raises:
        MalformedInputError: If the JSON, its kind or its contents are invalid.
    """
    raw = loads(data)
    if not isinstance(raw, dict):
        raise MalformedInputError("Document must be a JSON object")

    kind = raw.get("kind")
    model: type[Document]
    if kind == "decomposition":
        model = DecompositionDocument
    elif kind == "states":
        model = StateSetDocument
    else:
        raise MalformedInputError(f"Unknown document kind: {kind!r}")

    try:
        document = model.model_validate(raw)
        # Rebuild once so domain-level validation runs on input too
        document.to_domain()
    except (ValidationError, InvalidArgumentError) as e:
        raise MalformedInputError(f"Invalid {kind} document: {e}") from e
    return document


def read_document(path: Path) -> Document:
    """Read a document from a file.

    Raises:
        MalformedInputError: If the file cannot be read or parsed.
    """
    try:
        data = path.read_bytes()
    except OSError as e:
        raise MalformedInputError(f"Cannot read {path}: {e}") from e
    logger.debug(f"Read {len(data)} bytes from {path}")
    return parse_document(data)


def write_output(data: bytes | str, path: Path | None = None) -> None:
    """Write to a file, or to stdout when no path is given."""
    payload = data.encode() if isinstance(data, str) else data
    if path is None:
        sys.stdout.buffer.write(payload)
        sys.stdout.buffer.flush()
        return
    path.write_bytes(payload)
    logger.info(f"Wrote {len(payload)} bytes to {path}")
