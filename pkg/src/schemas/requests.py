"""Command request models."""

from pathlib import Path

from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field
from pydantic import model_validator

from src.core.config import settings
from src.core.enums import ArtifactKind
from src.core.enums import Backend
from src.core.enums import Check
from src.core.enums import RenderStyle
from src.core.enums import TraceVerbosity
from src.core.errors import UsageError


class RunConfig(BaseModel):
    """Options of one command invocation.

    Flags fill the fields; Settings supplies the defaults.

    Attributes:
        dims: Local dimensions (construct, render).
        kind: Artifact to construct.
        checks: Checks to run (verify).
        backend: Arithmetic for orthogonality decisions.
        float_tolerance: Zero threshold of the float backend.
        node_budget: Cover-search node budget.
        trace_verbosity: How much of each deduction trace to report.
        style: Render style.
        input_path: Document to verify.
        output: File to write; stdout when unset.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    dims: tuple[int, ...] | None = None
    kind: ArtifactKind | None = None
    checks: tuple[Check, ...] = ()
    backend: Backend = Backend.EXACT
    float_tolerance: float = Field(
        default_factory=lambda: settings.FLOAT_TOLERANCE, gt=0.0, lt=1.0
    )
    node_budget: int = Field(default_factory=lambda: settings.NODE_BUDGET, ge=1)
    trace_verbosity: TraceVerbosity = TraceVerbosity.SUMMARY
    style: RenderStyle = RenderStyle.TABLE
    input_path: Path | None = None
    output: Path | None = None

    @model_validator(mode="after")
    def validate_backend(self) -> "RunConfig":
        """Allow the float backend only for cross-checkable checks.

        Raises:
            UsageError: If a requested check needs exact arithmetic.
        """
        if self.backend is Backend.FLOAT:
            exact_only = [c.value for c in self.checks if not c.cross_checkable]
            if exact_only:
                raise UsageError(
                    f"Float backend cannot run {', '.join(exact_only)}; "
                    "use --backend exact"
                )
        return self
