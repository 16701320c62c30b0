"""The construct command."""

from loguru import logger

from src.core.constants import EXIT_OK
from src.core.enums import ArtifactKind
from src.core.errors import UsageError
from src.deps import get_decomposition
from src.deps import get_state_set
from src.schemas.documents import DecompositionDocument
from src.schemas.documents import Document
from src.schemas.documents import StateSetDocument
from src.schemas.hypercube import PartyDims
from src.schemas.requests import RunConfig
from src.utils.serialization import dumps
from src.utils.serialization import write_output


def build_document(dims: PartyDims, kind: ArtifactKind) -> Document:
    """Build the requested artifact as a document."""
    if kind is ArtifactKind.DECOMPOSITION:
        return DecompositionDocument.from_domain(get_decomposition(dims))
    return StateSetDocument.from_domain(get_state_set(dims, kind))


def cmd_construct(config: RunConfig) -> int:
    """Write the canonical JSON of a decomposition or state set.

    Raises:
        UsageError: If dims or kind are missing.
        InvalidDimensionsError: If the dims are unsupported.
    """
    if config.dims is None or config.kind is None:
        raise UsageError("construct needs --dims and --kind")
    dims = PartyDims(dims=config.dims)
    document = build_document(dims, config.kind)
    write_output(dumps(document), config.output)
    logger.info(f"Constructed {config.kind.value} of {dims}")
    return EXIT_OK
