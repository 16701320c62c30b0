"""JSON document models read and written by the command line."""

from typing import Literal

from pydantic import Field

from src import __version__
from src.core.enums import Backend
from src.core.enums import Check
from src.core.enums import Outcome
from src.core.enums import StateRole
from src.schemas.base import FrozenModel
from src.schemas.hypercube import CornerReport
from src.schemas.hypercube import Decomposition
from src.schemas.hypercube import PartitionReport
from src.schemas.hypercube import PartyDims
from src.schemas.hypercube import Subcube
from src.schemas.reports import Certificate
from src.schemas.reports import OrthoReport
from src.schemas.reports import UpbVerdict
from src.schemas.states import ProductState
from src.schemas.states import StateSet


class DecompositionDocument(FrozenModel):
    """Serialized decomposition.

    Attributes:
        version: Tool version that wrote the document.
        kind: Always ``decomposition``.
        dims: Local dimensions.
        blocks: Blocks, central first.
    """

    version: str = __version__
    kind: Literal["decomposition"] = "decomposition"
    dims: tuple[int, ...]
    blocks: tuple[Subcube, ...]

    @classmethod
    def from_domain(cls, dec: Decomposition) -> "DecompositionDocument":
        """Wrap a decomposition."""
        return cls(dims=dec.dims.dims, blocks=dec.blocks)

    def to_domain(self) -> Decomposition:
        """Rebuild the decomposition.

        Raises:
            InvalidDimensionsError: If the dimensions are unsupported.
        """
        return Decomposition(dims=PartyDims(dims=self.dims), blocks=self.blocks)


class StateSetDocument(FrozenModel):
    """Serialized state set.

    Attributes:
        version: Tool version that wrote the document.
        kind: Always ``states``.
        dims: Local dimensions.
        role: What the set claims to be.
        states: Members with labels and exact factors.
    """

    version: str = __version__
    kind: Literal["states"] = "states"
    dims: tuple[int, ...]
    role: StateRole = StateRole.CUSTOM
    states: tuple[ProductState, ...]

    @classmethod
    def from_domain(cls, states: StateSet) -> "StateSetDocument":
        """Wrap a state set."""
        return cls(dims=states.dims, role=states.role, states=states.states)

    def to_domain(self) -> StateSet:
        """Rebuild the state set."""
        return StateSet(dims=self.dims, role=self.role, states=self.states)


Document = DecompositionDocument | StateSetDocument


class CheckResult(FrozenModel):
    """Result of one requested check; only the matching detail is set."""

    check: Check
    outcome: Outcome
    backend: Backend = Backend.EXACT
    summary: str
    partition: PartitionReport | None = None
    corners: CornerReport | None = None
    orthogonality: OrthoReport | None = None
    certificate: Certificate | None = None
    verdict: UpbVerdict | None = None


class VerifyReport(FrozenModel):
    """Machine-readable outcome of the verify command.

    Attributes:
        version: Tool version.
        kind: Always ``report``.
        input_kind: Kind of the verified document.
        dims: Local dimensions of the input.
        checks: Results in the requested order.
        outcome: Refuted beats undecided beats pass.
        exit_code: Process exit code matching the outcome.
    """

    version: str = __version__
    kind: Literal["report"] = "report"
    input_kind: str
    dims: tuple[int, ...]
    checks: tuple[CheckResult, ...] = Field(default_factory=tuple)
    outcome: Outcome
    exit_code: int
