"""Hypercube decomposition models."""

import math
from functools import cached_property

from pydantic import Field
from pydantic import field_validator

from src.core.enums import FactorTag
from src.core.enums import Family
from src.schemas.base import FrozenModel
from src.utils.common import validate_party_dims


class PartyDims(FrozenModel):
    """Local dimensions d_1 <= ... <= d_N of an odd number of parties.

    Attributes:
        dims: Local dimension of every party, in party order.
    """

    dims: tuple[int, ...]

    @field_validator("dims", mode="before")  # noqa
    @classmethod
    def validate_dims(cls, v: object) -> tuple[int, ...]:
        """Reject dimensions the construction is undefined for.

        Raises:
            InvalidDimensionsError: If N is even or < 3, some d_i < 3, or
                the dimensions decrease.
        """
        if not isinstance(v, list | tuple):
            raise TypeError(f"dims must be a sequence, got {type(v).__name__}")
        return validate_party_dims(v)

    @property
    def n(self) -> int:
        """Number of parties."""
        return len(self.dims)

    @property
    def layers(self) -> int:
        """Number of concentric layers, floor((d_1 - 1) / 2)."""
        return (self.dims[0] - 1) // 2

    @property
    def size(self) -> int:
        """Number of grid points."""
        return math.prod(self.dims)

    @property
    def all_three(self) -> bool:
        """Whether every party is a qutrit."""
        return all(d == 3 for d in self.dims)

    @property
    def equal(self) -> bool:
        """Whether all local dimensions agree."""
        return len(set(self.dims)) == 1

    def __str__(self) -> str:
        return "x".join(str(d) for d in self.dims)


class Factor(FrozenModel):
    """Index interval of one party inside a subcube.

    Attributes:
        party: 1-based party index.
        tag: Shape of the interval (point, Eta/Xi range or central range).
        lo: First index of the interval.
        hi: Last index of the interval (inclusive).
    """

    party: int = Field(..., ge=1)
    tag: FactorTag
    lo: int = Field(..., ge=0)
    hi: int = Field(..., ge=0)

    @property
    def length(self) -> int:
        """Number of indices covered."""
        return self.hi - self.lo + 1

    def contains(self, index: int) -> bool:
        """Check whether an index lies in the interval."""
        return self.lo <= index <= self.hi

    def intersects(self, other: "Factor") -> bool:
        """Check whether two intervals share an index."""
        return self.lo <= other.hi and other.lo <= self.hi


class Subcube(FrozenModel):
    """Cartesian product of one index interval per party.

    Layer blocks carry a layer k >= 1, a family and an even-size K-set of
    parties holding range factors. The central block has layer 0, no
    family and an empty K-set.
    """

    layer: int = Field(..., ge=0)
    family: Family | None = None
    kset: tuple[int, ...] = ()
    factors: tuple[Factor, ...]

    @cached_property
    def key(self) -> tuple[int, tuple[int, ...], str | None]:
        """Identity of the block inside a decomposition."""
        return (self.layer, self.kset, self.family.value if self.family else None)

    @cached_property
    def short_id(self) -> str:
        """Compact label, ``B0`` for the central block or ``C1:12``."""
        if self.layer == 0:
            return "B0"
        members = "".join(str(j) for j in self.kset) if self.kset else "-"
        family = self.family.value if self.family else "?"
        return f"{family}{self.layer}:{members}"

    @property
    def intervals(self) -> tuple[tuple[int, int], ...]:
        """(lo, hi) per party."""
        return tuple((f.lo, f.hi) for f in self.factors)

    @property
    def size(self) -> int:
        """Number of grid points in the block."""
        return math.prod(f.length for f in self.factors)

    def contains(self, point: tuple[int, ...]) -> bool:
        """Check whether a grid point lies in the block."""
        return all(f.contains(j) for f, j in zip(self.factors, point, strict=True))


class Decomposition(FrozenModel):
    """Subcube blocks of Z_{d_1} x ... x Z_{d_N}, central block first.

    The block list is not validated as a partition here; verify_partition
    does that.
    """

    dims: PartyDims
    blocks: tuple[Subcube, ...]

    @property
    def central(self) -> Subcube | None:
        """The central block, if present."""
        return next((b for b in self.blocks if b.layer == 0), None)

    def block(self, key: tuple[int, tuple[int, ...], str | None]) -> Subcube | None:
        """Find a block by its key."""
        return self.block_index.get(key)

    @cached_property
    def block_index(self) -> dict[tuple[int, tuple[int, ...], str | None], Subcube]:
        """Blocks keyed by (layer, chosen parties, family)."""
        return {b.key: b for b in self.blocks}


class PartitionReport(FrozenModel):
    """Outcome of the exhaustive partition check."""

    disjoint: bool
    covering: bool
    count_ok: bool
    pairwise_party_disjoint: bool
    block_count: int
    expected_count: int
    grid_size: int
    layer_identities: tuple[bool, ...] = ()
    corner_identity: bool | None = None

    @property
    def passed(self) -> bool:
        """Whether every flag holds."""
        identities = all(self.layer_identities) and self.corner_identity is not False
        return (
            self.disjoint
            and self.covering
            and self.count_ok
            and self.pairwise_party_disjoint
            and identities
        )


class CornerReport(FrozenModel):
    """Outcome of the corner census.

    Attributes:
        blocks_checked: Number of layer blocks inspected.
        single_corner: Every layer block holds exactly one layer corner.
        corners_exhausted: The blocks of each layer hit every corner.
        conjecture: True when the dims are not all 3, where the property
            is an empirical check rather than an established fact.
        failures: Short ids of blocks violating the property.
    """

    blocks_checked: int
    single_corner: bool
    corners_exhausted: bool
    conjecture: bool
    failures: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        """Whether the census holds."""
        return self.single_corner and self.corners_exhausted
