"""Shared factories and the worker pool."""

from collections.abc import Callable
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache

from loguru import logger

from src.core.config import settings
from src.core.enums import ArtifactKind
from src.core.errors import InvalidArgumentError
from src.schemas.hypercube import Decomposition
from src.schemas.hypercube import PartyDims
from src.schemas.states import StateSet
from src.services.hypercube import build_decomposition
from src.services.states import build_opb
from src.services.states import build_ops
from src.services.states import build_upb


# Singleton factories with lru_cache
@lru_cache(maxsize=32)
def get_decomposition(dims: PartyDims) -> Decomposition:
    """Get the decomposition of a grid, built once per dims."""
    return build_decomposition(dims)


STATE_BUILDERS: dict[ArtifactKind, Callable[[PartyDims], StateSet]] = {
    ArtifactKind.OPB: build_opb,
    ArtifactKind.OPS: build_ops,
    ArtifactKind.UPB: build_upb,
}


@lru_cache(maxsize=32)
def get_state_set(dims: PartyDims, kind: ArtifactKind) -> StateSet:
    """Get a constructed state set, built once per dims and kind.

    Raises:
        InvalidArgumentError: If the kind is not a state-set kind.
    """
    builder = STATE_BUILDERS.get(kind)
    if builder is None:
        raise InvalidArgumentError(f"{kind.value} is not a state set")
    return builder(dims)


def parallel_map[T, R](
    func: Callable[[T], R], items: Sequence[T], threads: int | None = None
) -> list[R]:
    """Map independent work items, in input order.

    Args:
        func: Picklable module-level function.
        items: Work items.
        threads: Worker cap; defaults to the configured THREADS.

    Returns:
        Results in the order of ``items``.
    """
    workers = min(threads or settings.THREADS, len(items))
    if workers <= 1:
        return [func(item) for item in items]

    logger.debug(f"Spreading {len(items)} work items over {workers} processes")
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))
