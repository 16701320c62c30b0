"""Plain-text views of a decomposition."""

from src.core.enums import FactorTag
from src.core.enums import Family
from src.core.errors import InvalidArgumentError
from src.schemas.hypercube import Decomposition
from src.schemas.hypercube import Factor
from src.schemas.hypercube import Subcube
from src.services.hypercube import locate


def _factor_text(factor: Factor, all_three: bool) -> str:
    if factor.lo == factor.hi:
        return f"{{{factor.lo}}}"
    if all_three and factor.tag is FactorTag.ETA_RANGE:
        return "{eta}"
    if all_three and factor.tag is FactorTag.XI_RANGE:
        return "{xi}"
    return f"{{{factor.lo}..{factor.hi}}}"


def block_text(block: Subcube, all_three: bool = False) -> str:
    """Cartesian product of the block's intervals, e.g. ``{eta}x{xi}x{2}``."""
    return "x".join(_factor_text(f, all_three) for f in block.factors)


def kset_text(kset: tuple[int, ...]) -> str:
    """K-set in party notation, e.g. ``{A1,A2}``."""
    return "{" + ",".join(f"A{j}" for j in kset) + "}"


def _table(rows: list[list[str]]) -> list[str]:
    widths = [max(len(row[c]) for row in rows) for c in range(len(rows[0]))]
    lines = []
    for index, row in enumerate(rows):
        cells = [cell.ljust(width) for cell, width in zip(row, widths, strict=True)]
        lines.append(("| " + " | ".join(cells) + " |").rstrip())
        if index == 0:
            lines.append("|" + "|".join("-" * (w + 2) for w in widths) + "|")
    return lines


def render_table(dec: Decomposition) -> str:
    """One K / C_K / D_K table per layer, then the central block.

    Args:
        dec: Decomposition.

    Returns:
        Text ending in a newline.
    """
    all_three = dec.dims.all_three
    lines = [f"Decomposition of {dec.dims}", ""]
    for k in range(1, dec.dims.layers + 1):
        ksets = list(dict.fromkeys(b.kset for b in dec.blocks if b.layer == k))
        rows = [["K", "C_K", "D_K"]]
        for kset in ksets:
            row = [kset_text(kset)]
            for family in (Family.C, Family.D):
                block = dec.block((k, kset, family.value))
                row.append(block_text(block, all_three) if block else "-")
            rows.append(row)
        lines.append(f"Layer {k}")
        lines.extend(_table(rows))
        lines.append("")

    central = dec.central
    if central is not None:
        lines.append(f"Central block: {block_text(central)}")
    return "\n".join(lines).rstrip("\n") + "\n"


def render_slices(dec: Decomposition) -> str:
    """Per-A3 slice grids of block ids for a three-party decomposition.

    Rows run over A1, columns over A2.

    Raises:
        InvalidArgumentError: If the grid does not have three parties.
    """
    if dec.dims.n != 3:
        raise InvalidArgumentError(
            f"Slice rendering needs three parties, got {dec.dims.n}"
        )
    d1, d2, d3 = dec.dims.dims
    sections = []
    for j3 in range(d3):
        ids = [
            [locate(dec, (j1, j2, j3)).short_id for j2 in range(d2)]
            for j1 in range(d1)
        ]
        columns = [f"A2={j2}" for j2 in range(d2)]
        width = max(len(cell) for cell in [*columns, *(c for row in ids for c in row)])
        lines = [f"A3 = {j3}", " " * 6 + " ".join(c.ljust(width) for c in columns)]
        for j1, row in enumerate(ids):
            cells = " ".join(cell.ljust(width) for cell in row)
            lines.append(f"A1={j1}  {cells}")
        sections.append("\n".join(line.rstrip() for line in lines))
    return "\n\n".join(sections) + "\n"
