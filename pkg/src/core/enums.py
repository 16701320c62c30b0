"""Application enums."""

from enum import Enum
from enum import unique


@unique
class FactorTag(str, Enum):
    """Shape of a subcube factor on one party."""

    LO_POINT = "lo"
    HI_POINT = "hi"
    ETA_RANGE = "eta"
    XI_RANGE = "xi"
    CENTER_RANGE = "center"

    @property
    def is_range(self) -> bool:
        """Whether the tag denotes an Eta or Xi range."""
        return self in (FactorTag.ETA_RANGE, FactorTag.XI_RANGE)

    @property
    def is_low_side(self) -> bool:
        """Whether the tag sits on the low side of Table I (Lo or Eta)."""
        return self in (FactorTag.LO_POINT, FactorTag.ETA_RANGE)


@unique
class Family(str, Enum):
    """Subcube family of a layer block."""

    C = "C"
    D = "D"


@unique
class StateRole(str, Enum):
    """Role of a state set."""

    OPB = "OPB"
    OPS = "OPS"
    UPB = "UPB"
    CUSTOM = "custom"


@unique
class ArtifactKind(str, Enum):
    """Artifact produced by the construct command."""

    DECOMPOSITION = "decomposition"
    OPB = "opb"
    OPS = "ops"
    UPB = "upb"


@unique
class Check(str, Enum):
    """Checks the verify command can run."""

    PARTITION = "partition"
    CYCLIC = "cyclic"
    CORNERS = "corners"
    ORTHOGONALITY = "orthogonality"
    COMPLETENESS = "completeness"
    NONLOCALITY = "nonlocality"
    UNEXTENDIBILITY = "unextendibility"

    @property
    def cross_checkable(self) -> bool:
        """Whether the float backend may run this check."""
        return self is Check.ORTHOGONALITY

    @property
    def needs_states(self) -> bool:
        """Whether the check runs on a state set rather than a decomposition."""
        return self not in (Check.PARTITION, Check.CYCLIC, Check.CORNERS)


@unique
class Backend(str, Enum):
    """Arithmetic backend for orthogonality decisions."""

    EXACT = "exact"
    FLOAT = "float"


@unique
class TraceVerbosity(str, Enum):
    """How much of a deduction trace goes into reports."""

    NONE = "none"
    SUMMARY = "summary"
    FULL = "full"


@unique
class RenderStyle(str, Enum):
    """Text rendering style."""

    TABLE = "table"
    SLICES = "slices"


@unique
class Outcome(str, Enum):
    """Outcome of one requested check."""

    PASS = "pass"
    REFUTED = "refuted"
    UNDECIDED = "undecided"


@unique
class CutStatus(str, Enum):
    """Verdict of the nonlocality engine."""

    CERTIFIED = "Certified"
    UNDECIDED = "Undecided"


@unique
class Rule(str, Enum):
    """Inference rules applied by the nonlocality engine."""

    BLOCK_ZEROS = "block_zeros"
    BLOCK_TRIVIAL = "block_trivial"
    ZERO_ROW = "zero_row"


@unique
class UpbStatus(str, Enum):
    """Verdict of the unextendibility search."""

    UPB = "UPB"
    EXTENDIBLE = "Extendible"
    INCONCLUSIVE = "Inconclusive-by-budget"
