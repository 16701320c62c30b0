"""Product-state models."""

import math
from functools import cached_property

from pydantic import Field
from pydantic import field_validator
from pydantic import model_validator

from src.core.enums import Family
from src.core.enums import StateRole
from src.schemas.base import Amplitude
from src.schemas.base import FrozenModel


class LocalVector(FrozenModel):
    """Unnormalized local vector of one party.

    Attributes:
        party: 1-based party index.
        amps: Exact amplitudes of |0>, |1>, ...; the local dimension is
            their count. All amplitudes share one cyclotomic order.
    """

    party: int = Field(..., ge=1)
    amps: tuple[Amplitude, ...]

    @field_validator("amps")  # noqa
    @classmethod
    def validate_amps(cls, v: tuple[Amplitude, ...]) -> tuple[Amplitude, ...]:
        """Reject the zero vector and bring amplitudes to a common order.

        Raises:
            ValueError: If the vector is empty or all-zero.
        """
        if not v:
            raise ValueError("Local vector needs at least one amplitude")
        if all(a.is_zero() for a in v):
            raise ValueError("Local vector cannot be zero")
        order = math.lcm(*(a.order for a in v))
        return tuple(a.lift(order) for a in v)

    @property
    def dim(self) -> int:
        """Local dimension."""
        return len(self.amps)

    @property
    def order(self) -> int:
        """Common cyclotomic order of the amplitudes."""
        return self.amps[0].order

    @cached_property
    def support(self) -> int:
        """Bitmask of indices with nonzero amplitude."""
        mask = 0
        for i, a in enumerate(self.amps):
            if a:
                mask |= 1 << i
        return mask

    @property
    def support_indices(self) -> tuple[int, ...]:
        """Indices with nonzero amplitude, ascending."""
        return tuple(i for i, a in enumerate(self.amps) if a)


class StateLabel(FrozenModel):
    """Origin of a state inside a construction.

    Block states carry the block (layer, K-set, family) and the Fourier
    multi-index. States outside any block (stopper, witness) carry
    ``layer=None`` and a name.
    """

    layer: int | None = Field(None, ge=0)
    kset: tuple[int, ...] = ()
    family: Family | None = None
    fourier: tuple[int, ...] = ()
    name: str | None = None

    @property
    def block_key(self) -> tuple[int, tuple[int, ...], str | None] | None:
        """Key of the originating block, None outside blocks."""
        if self.layer is None:
            return None
        return (self.layer, self.kset, self.family.value if self.family else None)

    @property
    def labeled(self) -> bool:
        """Whether the label identifies a block or names the state."""
        return self.layer is not None or bool(self.name)

    def __str__(self) -> str:
        if self.layer is None:
            return self.name or "?"
        if self.layer == 0:
            block = "B0"
        else:
            members = "".join(str(j) for j in self.kset) or "-"
            family = self.family.value if self.family else "?"
            block = f"{family}{self.layer}:{members}"
        return f"{block}[{','.join(str(n) for n in self.fourier)}]"


class ProductState(FrozenModel):
    """Product state, one local vector per party; never expanded."""

    factors: tuple[LocalVector, ...]
    label: StateLabel = Field(default_factory=StateLabel)

    @model_validator(mode="after")
    def validate_parties(self) -> "ProductState":
        """Require factors for parties 1..N in order.

        Raises:
            ValueError: If a factor sits at the wrong position.
        """
        for position, factor in enumerate(self.factors, start=1):
            if factor.party != position:
                raise ValueError(
                    f"Factor at position {position} belongs to party {factor.party}"
                )
        return self

    @property
    def n(self) -> int:
        """Number of parties."""
        return len(self.factors)


class StateSet(FrozenModel):
    """Set of product states on a common grid.

    Attributes:
        dims: Local dimension per party. Plain integers, so fixtures such
            as three qubits fit too.
        role: What the set claims to be.
        states: Members, in construction order.
    """

    dims: tuple[int, ...]
    role: StateRole = StateRole.CUSTOM
    states: tuple[ProductState, ...] = ()

    @model_validator(mode="after")
    def validate_shapes(self) -> "StateSet":
        """Require every state to match the party dimensions.

        Raises:
            ValueError: If a state has the wrong party count or dimension.
        """
        for index, state in enumerate(self.states):
            if state.n != len(self.dims):
                raise ValueError(
                    f"State {index} has {state.n} parties, expected {len(self.dims)}"
                )
            for factor, d in zip(state.factors, self.dims, strict=True):
                if factor.dim != d:
                    raise ValueError(
                        f"State {index} party {factor.party} has dimension "
                        f"{factor.dim}, expected {d}"
                    )
        return self

    def __len__(self) -> int:
        return len(self.states)

    def without(self, indices: set[int]) -> "StateSet":
        """Copy of the set with the given member positions removed."""
        kept = tuple(s for i, s in enumerate(self.states) if i not in indices)
        return StateSet(dims=self.dims, role=self.role, states=kept)
