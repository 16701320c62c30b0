"""Layered subcube decompositions of Z_{d_1} x ... x Z_{d_N}."""

import itertools
import math
from collections.abc import Iterable
from collections.abc import Iterator
from collections.abc import Sequence

from loguru import logger

from src.core.enums import FactorTag
from src.core.enums import Family
from src.core.errors import InvalidArgumentError
from src.core.errors import PreconditionError
from src.schemas.hypercube import CornerReport
from src.schemas.hypercube import Decomposition
from src.schemas.hypercube import Factor
from src.schemas.hypercube import PartitionReport
from src.schemas.hypercube import PartyDims
from src.schemas.hypercube import Subcube
from src.utils.common import validate_party_count


# =============================================================================
# INDEX SETS AND TABLE I
# =============================================================================
def index_family(n: int) -> list[tuple[int, ...]]:
    """List every even-size subset of the parties {1..N}.

    Args:
        n: Number of parties, odd and >= 3.

    Returns:
        Subsets ordered by size, then lexicographically; 2^(N-1) of them.

    Raises:
        InvalidDimensionsError: If N is even or below 3.
    """
    validate_party_count(n)
    parties = range(1, n + 1)
    return [
        kset
        for size in range(0, n + 1, 2)
        for kset in itertools.combinations(parties, size)
    ]


def next_tag(current: FactorTag, next_in_kset: bool) -> FactorTag:
    """Factor of party i+1 given the factor of party i (Table I).

    A party outside K keeps the side of its predecessor as a point; a
    party in K takes the range of the opposite side.
    """
    if current.is_low_side:
        return FactorTag.XI_RANGE if next_in_kset else FactorTag.LO_POINT
    return FactorTag.ETA_RANGE if next_in_kset else FactorTag.HI_POINT


def tag_interval(tag: FactorTag, d: int, k: int, layers: int) -> tuple[int, int]:
    """Resolve a factor tag to its index interval at layer k.

    Args:
        tag: Factor shape.
        d: Local dimension of the party.
        k: Layer index (ignored for the central range).
        layers: Number of layers of the decomposition.

    Returns:
        Inclusive (lo, hi).
    """
    match tag:
        case FactorTag.LO_POINT:
            return k - 1, k - 1
        case FactorTag.HI_POINT:
            return d - k, d - k
        case FactorTag.ETA_RANGE:
            return k - 1, d - k - 1
        case FactorTag.XI_RANGE:
            return k, d - k
        case FactorTag.CENTER_RANGE:
            return layers, d - layers - 1


# =============================================================================
# CONSTRUCTION
# =============================================================================
def build_subcube(
    dims: PartyDims, k: int, kset: Iterable[int], family: Family
) -> Subcube:
    """Build the C_K or D_K subcube of layer k.

    The factor of A_1 is seeded from the family (low side for C, high side
    for D) and every later factor follows Table I. Since |K| is even the
    walk closes: the factor of A_1 also follows from the factor of A_N.

    Args:
        dims: Party dimensions.
        k: Layer, 1 <= k <= floor((d_1 - 1) / 2).
        kset: Even-size set of 1-based parties holding range factors.
        family: C or D.

    Returns:
        The subcube.

    Raises:
        InvalidArgumentError: If the layer or K-set is out of range.
    """
    members = tuple(sorted(set(kset)))
    if not 1 <= k <= dims.layers:
        raise InvalidArgumentError(
            f"Layer {k} out of range 1..{dims.layers} for {dims}"
        )
    if len(members) % 2 or any(not 1 <= j <= dims.n for j in members):
        raise InvalidArgumentError(
            f"K-set {members} must be an even subset of 1..{dims.n}"
        )

    low = family is Family.C
    if 1 in members:
        tag = FactorTag.ETA_RANGE if low else FactorTag.XI_RANGE
    else:
        tag = FactorTag.LO_POINT if low else FactorTag.HI_POINT

    factors = []
    for party in range(1, dims.n + 1):
        if party > 1:
            tag = next_tag(tag, party in members)
        lo, hi = tag_interval(tag, dims.dims[party - 1], k, dims.layers)
        factors.append(Factor(party=party, tag=tag, lo=lo, hi=hi))

    return Subcube(layer=k, family=family, kset=members, factors=tuple(factors))


def build_central_block(dims: PartyDims) -> Subcube:
    """Build the central block B_0 left inside all layers."""
    factors = []
    for party, d in enumerate(dims.dims, start=1):
        lo, hi = tag_interval(FactorTag.CENTER_RANGE, d, 0, dims.layers)
        factors.append(Factor(party=party, tag=FactorTag.CENTER_RANGE, lo=lo, hi=hi))
    return Subcube(layer=0, factors=tuple(factors))


def build_decomposition(dims: PartyDims) -> Decomposition:
    """Build the central block and every layer subcube.

    Args:
        dims: Party dimensions.

    Returns:
        Decomposition with blocks ordered central first, then by layer,
        K-set size, K-set and family.
    """
    blocks = [build_central_block(dims)]
    for k in range(1, dims.layers + 1):
        for kset in index_family(dims.n):
            for family in (Family.C, Family.D):
                blocks.append(build_subcube(dims, k, kset, family))

    logger.debug(f"Built decomposition of {dims}: {len(blocks)} blocks")
    return Decomposition(dims=dims, blocks=tuple(blocks))


# =============================================================================
# GRID HELPERS
# =============================================================================
def grid_points(dims: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Enumerate the grid lexicographically."""
    return itertools.product(*(range(d) for d in dims))


def layer_of(dims: PartyDims, point: Sequence[int]) -> int:
    """Layer index of a grid point, 0 for the central block.

    Args:
        dims: Party dimensions.
        point: Grid point.

    Returns:
        k such that the point lies in layer k, or 0.
    """
    _check_point(dims, point)
    depth = min(min(j, d - 1 - j) for j, d in zip(point, dims.dims, strict=True))
    k = depth + 1
    return k if k <= dims.layers else 0


def _check_point(dims: PartyDims, point: Sequence[int]) -> None:
    if len(point) != dims.n or any(
        not 0 <= j < d for j, d in zip(point, dims.dims, strict=False)
    ):
        raise InvalidArgumentError(f"Point {tuple(point)} is outside the {dims} grid")


# =============================================================================
# CHECKS
# =============================================================================
def layer_identity(dims: PartyDims, k: int) -> bool:
    """Check the block-size identity of layer k.

    sum over even K of 2 * prod_{j in K}(d_j - 2k + 1) must equal
    prod_j(d_j - 2k + 2) - prod_j(d_j - 2k). Holds only for odd N.
    """
    lengths = [d - 2 * k + 1 for d in dims.dims]
    total = sum(
        2 * math.prod(lengths[j - 1] for j in kset) for kset in index_family(dims.n)
    )
    outer = math.prod(x + 1 for x in lengths)
    inner = math.prod(x - 1 for x in lengths)
    return total == outer - inner


def corner_identity(n: int) -> bool:
    """Check 1 + sum_i 2 * C(N, 2i) * 4^i = 3^N for odd N."""
    validate_party_count(n)
    total = 1 + sum(2 * math.comb(n, 2 * i) * 4**i for i in range((n - 1) // 2 + 1))
    return total == 3**n


def verify_partition(dec: Decomposition) -> PartitionReport:
    """Check that the blocks partition the grid, by exhaustive enumeration.

    Args:
        dec: Decomposition to check, possibly tampered with.

    Returns:
        Partition flags plus the counting identities.
    """
    dims = dec.dims
    radix = _radix(dims.dims)
    counts = bytearray(dims.size)
    for block in dec.blocks:
        ranges = [range(f.lo, f.hi + 1) for f in block.factors]
        for point in itertools.product(*ranges):
            index = sum(j * r for j, r in zip(point, radix, strict=True))
            counts[index] = min(counts[index] + 1, 255)

    pairwise = all(
        any(not fa.intersects(fb) for fa, fb in zip(a.factors, b.factors, strict=True))
        for a, b in itertools.combinations(dec.blocks, 2)
    )
    expected = dims.layers * 2**dims.n + 1
    report = PartitionReport(
        disjoint=max(counts, default=0) <= 1,
        covering=min(counts, default=0) >= 1,
        count_ok=len(dec.blocks) == expected,
        pairwise_party_disjoint=pairwise,
        block_count=len(dec.blocks),
        expected_count=expected,
        grid_size=dims.size,
        layer_identities=tuple(
            layer_identity(dims, k) for k in range(1, dims.layers + 1)
        ),
        corner_identity=corner_identity(dims.n) if dims.all_three else None,
    )
    logger.debug(f"Partition of {dims}: passed={report.passed}")
    return report


def _radix(dims: Sequence[int]) -> list[int]:
    # Mixed-radix weights, last party fastest
    weights = [1] * len(dims)
    for i in range(len(dims) - 2, -1, -1):
        weights[i] = weights[i + 1] * dims[i + 1]
    return weights


def verify_cyclic_invariance(dec: Decomposition) -> bool:
    """Check the block set is invariant under A_1 -> A_2 -> ... -> A_N -> A_1.

    Args:
        dec: Decomposition with equal local dimensions.

    Returns:
        True iff rotating every block by one party yields the same set of
        vertex sets.

    Raises:
        InvalidArgumentError: If the local dimensions differ.
    """
    if not dec.dims.equal:
        raise InvalidArgumentError(
            f"Cyclic invariance needs equal local dimensions, got {dec.dims}"
        )
    shapes = {b.intervals for b in dec.blocks}
    rotated = {shape[1:] + shape[:1] for shape in shapes}
    return rotated == shapes


# =============================================================================
# MEMBERSHIP
# =============================================================================
def locate(dec: Decomposition, point: Sequence[int]) -> Subcube:
    """Find the block containing a point by walking Table I.

    Inside layer k the index k-1 plays the part of 0, d_i-k the part of
    2 and every index in between the part of 1. The walk starts at a
    party sitting on the layer boundary, whose side (low or high) is then
    known, and determines each following factor from the next coordinate.
    After N steps the factor of the starting party is fixed too.

    Args:
        dec: Decomposition built by build_decomposition.
        point: Grid point.

    Returns:
        The unique block containing the point.

    Raises:
        InvalidArgumentError: If the point is outside the grid.
        PreconditionError: If the decomposition lacks the block.
    """
    dims = dec.dims
    k = layer_of(dims, point)
    if k == 0:
        key: tuple[int, tuple[int, ...], str | None] = (0, (), None)
    else:
        n = dims.n
        start = next(
            i for i in range(n) if point[i] in (k - 1, dims.dims[i] - k)
        )
        tag = (
            FactorTag.LO_POINT if point[start] == k - 1 else FactorTag.HI_POINT
        )
        tags: list[FactorTag | None] = [None] * n
        for step in range(1, n + 1):
            i = (start + step) % n
            if tag.is_low_side:
                tag = FactorTag.LO_POINT if point[i] == k - 1 else FactorTag.XI_RANGE
            else:
                d = dims.dims[i]
                tag = FactorTag.HI_POINT if point[i] == d - k else FactorTag.ETA_RANGE
            tags[i] = tag

        kset = tuple(i + 1 for i, t in enumerate(tags) if t is not None and t.is_range)
        first = tags[0]
        family = Family.C if first is not None and first.is_low_side else Family.D
        key = (k, kset, family.value)

    block = dec.block(key)
    if block is None or not block.contains(tuple(point)):
        raise PreconditionError(f"No block of the decomposition holds {tuple(point)}")
    return block


def locate_by_scan(dec: Decomposition, point: Sequence[int]) -> Subcube:
    """Find the block containing a point by linear scan.

    Raises:
        InvalidArgumentError: If the point is outside the grid.
        PreconditionError: If no block holds the point.
    """
    _check_point(dec.dims, point)
    target = tuple(point)
    for block in dec.blocks:
        if block.contains(target):
            return block
    raise PreconditionError(f"No block of the decomposition holds {target}")


def corner_census(dec: Decomposition) -> CornerReport:
    """Count layer corners inside every layer block.

    A corner of layer k is a point of {k-1, d_1-k} x ... x {k-1, d_N-k}.
    Every layer block must hold exactly one corner of its layer and the
    blocks of a layer must hit all 2^N corners. Outside all-3 dimensions
    this is checked as an empirical property.

    Args:
        dec: Decomposition to inspect.

    Returns:
        Census report.
    """
    dims = dec.dims
    failures: list[str] = []
    hit: dict[int, set[tuple[int, ...]]] = {}
    checked = 0

    for block in dec.blocks:
        if block.layer == 0:
            continue
        checked += 1
        k = block.layer
        options = [
            [c for c in (k - 1, d - k) if f.contains(c)]
            for f, d in zip(block.factors, dims.dims, strict=True)
        ]
        corners = list(itertools.product(*options))
        if len(corners) != 1:
            failures.append(block.short_id)
        hit.setdefault(k, set()).update(corners)

    exhausted = all(
        len(hit.get(k, ())) == 2**dims.n for k in range(1, dims.layers + 1)
    )
    return CornerReport(
        blocks_checked=checked,
        single_corner=not failures,
        corners_exhausted=exhausted,
        conjecture=not dims.all_three,
        failures=tuple(failures),
    )
