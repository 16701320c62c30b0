"""Check, certificate and verdict models."""

from functools import cached_property

from pydantic import Field

from src.core.enums import CutStatus
from src.core.enums import Rule
from src.core.enums import StateRole
from src.core.enums import UpbStatus
from src.schemas.base import Amplitude
from src.schemas.base import FrozenModel
from src.schemas.states import LocalVector
from src.schemas.states import ProductState
from src.schemas.states import StateLabel


# =============================================================================
# ORTHOGONALITY
# =============================================================================
class Violation(FrozenModel):
    """Pair of members with a nonzero inner product.

    Attributes:
        first: Position of the first state.
        second: Position of the second state.
        first_label: Label of the first state.
        second_label: Label of the second state.
        overlap: Exact inner product (exact backend only).
        magnitude: |<first|second>| as a float.
    """

    first: int
    second: int
    first_label: StateLabel
    second_label: StateLabel
    overlap: Amplitude | None = None
    magnitude: float


class OrthoReport(FrozenModel):
    """Outcome of a pairwise orthogonality sweep."""

    total_pairs: int
    violations: tuple[Violation, ...] = ()
    backend: str = "exact"

    @property
    def orthogonal(self) -> bool:
        """Whether the set is pairwise orthogonal."""
        return not self.violations


# =============================================================================
# NONLOCALITY
# =============================================================================
class Cut(FrozenModel):
    """Bipartition of one excluded party A_i against the rest.

    Coordinates of the joint party are mixed-radix indices over the
    remaining parties in order, last party fastest.
    """

    excluded_party: int = Field(..., ge=1)
    dims: tuple[int, ...]

    @property
    def joint_dims(self) -> tuple[int, ...]:
        """Dimensions of the remaining parties."""
        i = self.excluded_party - 1
        return self.dims[:i] + self.dims[i + 1 :]

    @property
    def size(self) -> int:
        """Number of joint coordinates."""
        size = 1
        for d in self.joint_dims:
            size *= d
        return size

    def index(self, coords: tuple[int, ...]) -> int:
        """Mixed-radix index of a joint coordinate."""
        value = 0
        for c, d in zip(coords, self.joint_dims, strict=True):
            value = value * d + c
        return value

    def coords(self, index: int) -> tuple[int, ...]:
        """Joint coordinate of a mixed-radix index."""
        digits = []
        for d in reversed(self.joint_dims):
            index, c = divmod(index, d)
            digits.append(c)
        return tuple(reversed(digits))


class ProjectedBlock(FrozenModel):
    """A block of a state set seen through a cut.

    Attributes:
        block_id: Short id of the block.
        key: (layer, K-set, family) of the block.
        excluded_lo: First index of the block on the excluded party.
        excluded_hi: Last index of the block on the excluded party.
        support: Joint coordinates of the block, ascending.
        structured: States match the block's point and Fourier vectors.
        slices: Excluded-party Fourier index to the number of joint
            multi-indices present with it.
        family_size: Number of joint multi-indices of a complete slice.
        full_slices: Excluded-party Fourier indices whose slice is complete.
        excluded_factors: Excluded-party vector of every full slice.
        representatives: A member label for every full slice.
    """

    block_id: str
    key: tuple[int, tuple[int, ...], str | None]
    excluded_lo: int
    excluded_hi: int
    support: tuple[int, ...]
    structured: bool
    slices: dict[int, int]
    family_size: int
    full_slices: tuple[int, ...]
    excluded_factors: tuple[LocalVector, ...]
    representatives: tuple[StateLabel, ...]

    @cached_property
    def mask(self) -> int:
        """Bitmask of the support."""
        mask = 0
        for u in self.support:
            mask |= 1 << u
        return mask

    @property
    def usable(self) -> bool:
        """Whether the block can feed the inference rules."""
        return self.structured and bool(self.full_slices)

    def intersects(self, other: "ProjectedBlock") -> bool:
        """Whether the excluded-party intervals share an index."""
        return (
            self.excluded_lo <= other.excluded_hi
            and other.excluded_lo <= self.excluded_hi
        )


class TraceStep(FrozenModel):
    """One applied inference rule.

    Attributes:
        rule: Rule name.
        blocks: Short ids of the blocks involved.
        coords: Anchor coordinate (block_trivial) or the coordinate
            joining the resolved set (zero_row).
        witnesses: Labels of the states whose excluded-party factors have
            a nonzero overlap (block_zeros) or that share a complete
            slice (block_trivial).
    """

    rule: Rule
    blocks: tuple[str, ...] = ()
    coords: tuple[int, ...] = ()
    witnesses: tuple[StateLabel, ...] = ()


class DeductionState(FrozenModel):
    """Per-cut workspace snapshot.

    Attributes:
        cut: The cut.
        zero_rows: Bitmask per coordinate of entries known to vanish.
        classes: Representative per coordinate of its diagonal class.
        resolved: Coordinates with a full zero row and the reference
            diagonal value, ascending.
        reference: Coordinate fixing the reference diagonal value.
        applied: Blocks the block_trivial rule has fired on.
        trace: Applied rules in order.
    """

    cut: Cut
    zero_rows: tuple[int, ...]
    classes: tuple[int, ...]
    resolved: tuple[int, ...] = ()
    reference: int | None = None
    applied: tuple[str, ...] = ()
    trace: tuple[TraceStep, ...] = ()

    @property
    def complete(self) -> bool:
        """Whether every coordinate is resolved."""
        return len(self.resolved) == self.cut.size


class Frontier(FrozenModel):
    """Where a cut stalled."""

    unresolved: tuple[tuple[int, ...], ...]
    unusable_blocks: tuple[str, ...] = ()
    unapplied_blocks: tuple[str, ...] = ()


class CutResult(FrozenModel):
    """Verdict of one cut."""

    excluded_party: int
    status: CutStatus
    grid_size: int
    resolved_count: int
    rule_counts: dict[str, int]
    trace: tuple[TraceStep, ...] = ()
    frontier: Frontier | None = None


class Certificate(FrozenModel):
    """Strong-nonlocality certificate over all cuts.

    Undecided is never a refutation: the triviality condition is
    sufficient, not necessary.
    """

    status: CutStatus
    role: StateRole
    dims: tuple[int, ...]
    state_count: int
    skipped: tuple[str, ...] = ()
    cuts: tuple[CutResult, ...]
    notes: tuple[str, ...] = ()


# =============================================================================
# UNEXTENDIBILITY
# =============================================================================
class LocalFactorIndex(FrozenModel):
    """Distinct local factors of one party, up to nonzero scaling.

    Attributes:
        party: 1-based party index.
        factors: Distinct factors in first-seen order.
        state_factor: Factor id of every state, by state position.
        factor_states: State positions carrying each factor.
    """

    party: int
    factors: tuple[LocalVector, ...]
    state_factor: tuple[int, ...]
    factor_states: tuple[tuple[int, ...], ...]


class KillOption(FrozenModel):
    """Maximal set of a party's factors lying in one hyperplane.

    A product state whose factor on this party is the hyperplane normal is
    orthogonal to every killed state.

    Attributes:
        party: 1-based party index.
        factor_ids: Factors inside the hyperplane.
        rank: Exact rank of those factors, at most d - 1.
        killed: Positions of the states whose factor lies in the set.
        normal: Exact normal vector of the hyperplane.
        maximal: Whether no further factor fits the hyperplane.
    """

    party: int
    factor_ids: tuple[int, ...]
    rank: int
    killed: tuple[int, ...]
    normal: LocalVector
    maximal: bool = True

    @cached_property
    def mask(self) -> int:
        """Bitmask of killed states."""
        mask = 0
        for s in self.killed:
            mask |= 1 << s
        return mask


class UpbVerdict(FrozenModel):
    """Outcome of the unextendibility search.

    Attributes:
        status: UPB, Extendible or Inconclusive-by-budget.
        state_count: Size of the input set.
        witness: Product state orthogonal to every member, if found.
        chosen: Kill option per party behind the witness.
        nodes: Search nodes visited.
        budget: Node budget in force.
        options_per_party: Kill options available per party.
        options: Kill options of every party, in party order.
        restricted: Whether an option filter narrowed the search, in which
            case UPB only means no witness of the filtered form exists.
    """

    status: UpbStatus
    state_count: int
    witness: ProductState | None = None
    chosen: tuple[KillOption, ...] = ()
    nodes: int
    budget: int
    options_per_party: tuple[int, ...]
    options: tuple[tuple[KillOption, ...], ...] = ()
    restricted: bool = False
