"""The render command."""

from src.core.constants import EXIT_OK
from src.core.enums import RenderStyle
from src.core.errors import UsageError
from src.deps import get_decomposition
from src.schemas.hypercube import PartyDims
from src.schemas.requests import RunConfig
from src.services.render import render_slices
from src.services.render import render_table
from src.utils.serialization import write_output


def cmd_render(config: RunConfig) -> int:
    """Print a decomposition as a table or as per-slice grids.

    Raises:
        UsageError: If dims are missing, or slices are asked for N != 3.
    """
    if config.dims is None:
        raise UsageError("render needs --dims")
    dims = PartyDims(dims=config.dims)
    if config.style is RenderStyle.SLICES and dims.n != 3:
        raise UsageError(f"--style slices needs three parties, got {dims.n}")

    dec = get_decomposition(dims)
    if config.style is RenderStyle.SLICES:
        text = render_slices(dec)
    else:
        text = render_table(dec)
    write_output(text, config.output)
    return EXIT_OK
