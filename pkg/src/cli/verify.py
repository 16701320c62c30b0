"""The verify command."""

from collections.abc import Callable

from loguru import logger

from src.core.constants import EXIT_OK
from src.core.constants import EXIT_REFUTED
from src.core.constants import EXIT_UNDECIDED
from src.core.enums import Backend
from src.core.enums import Check
from src.core.enums import CutStatus
from src.core.enums import Outcome
from src.core.enums import UpbStatus
from src.core.errors import NonOrthogonalError
from src.core.errors import PreconditionError
from src.core.errors import UsageError
from src.schemas.documents import CheckResult
from src.schemas.documents import DecompositionDocument
from src.schemas.documents import VerifyReport
from src.schemas.hypercube import Decomposition
from src.schemas.requests import RunConfig
from src.schemas.states import StateSet
from src.services.hypercube import corner_census
from src.services.hypercube import verify_cyclic_invariance
from src.services.hypercube import verify_partition
from src.services.nonlocality import certify_strong_nonlocality
from src.services.upb import certify_unextendible
from src.services.verify import check_completeness
from src.services.verify import check_orthogonal_float
from src.services.verify import check_pairwise_orthogonal
from src.utils.serialization import dumps
from src.utils.serialization import read_document
from src.utils.serialization import write_output


EXIT_CODES = {
    Outcome.PASS: EXIT_OK,
    Outcome.REFUTED: EXIT_REFUTED,
    Outcome.UNDECIDED: EXIT_UNDECIDED,
}

DEFAULT_CHECKS = {
    "decomposition": (Check.PARTITION, Check.CORNERS),
    "states": (Check.ORTHOGONALITY,),
}


def _outcome(passed: bool) -> Outcome:
    return Outcome.PASS if passed else Outcome.REFUTED


def combine(outcomes: list[Outcome]) -> Outcome:
    """Overall outcome: refuted beats undecided beats pass."""
    if Outcome.REFUTED in outcomes:
        return Outcome.REFUTED
    if Outcome.UNDECIDED in outcomes:
        return Outcome.UNDECIDED
    return Outcome.PASS


# =============================================================================
# DECOMPOSITION CHECKS
# =============================================================================
def _partition(dec: Decomposition, config: RunConfig) -> CheckResult:
    report = verify_partition(dec)
    return CheckResult(
        check=Check.PARTITION,
        outcome=_outcome(report.passed),
        summary=f"{report.block_count} blocks over {report.grid_size} points",
        partition=report,
    )


def _cyclic(dec: Decomposition, config: RunConfig) -> CheckResult:
    if not dec.dims.equal:
        raise UsageError(f"Cyclic invariance needs equal dimensions, got {dec.dims}")
    invariant = verify_cyclic_invariance(dec)
    return CheckResult(
        check=Check.CYCLIC,
        outcome=_outcome(invariant),
        summary="invariant under cyclic party shift" if invariant else "not invariant",
    )


def _corners(dec: Decomposition, config: RunConfig) -> CheckResult:
    report = corner_census(dec)
    summary = f"{report.blocks_checked} layer blocks, one corner each"
    if not report.passed:
        summary = f"corner census fails on {', '.join(report.failures) or 'layers'}"
    return CheckResult(
        check=Check.CORNERS,
        outcome=_outcome(report.passed),
        summary=summary,
        corners=report,
    )


# =============================================================================
# STATE-SET CHECKS
# =============================================================================
def _orthogonality(states: StateSet, config: RunConfig) -> CheckResult:
    if config.backend is Backend.FLOAT:
        report = check_orthogonal_float(states, config.float_tolerance)
    else:
        report = check_pairwise_orthogonal(states)
    return CheckResult(
        check=Check.ORTHOGONALITY,
        outcome=_outcome(report.orthogonal),
        backend=config.backend,
        summary=f"{len(report.violations)} violations in {report.total_pairs} pairs",
        orthogonality=report,
    )


def _completeness(states: StateSet, config: RunConfig) -> CheckResult:
    try:
        complete = check_completeness(states)
    except PreconditionError as e:
        return CheckResult(
            check=Check.COMPLETENESS, outcome=Outcome.REFUTED, summary=e.message
        )
    return CheckResult(
        check=Check.COMPLETENESS,
        outcome=_outcome(complete),
        summary=f"{len(states)} states, {'complete' if complete else 'incomplete'}",
    )


def _nonlocality(states: StateSet, config: RunConfig) -> CheckResult:
    try:
        certificate = certify_strong_nonlocality(states, config.trace_verbosity)
    except NonOrthogonalError as e:
        return CheckResult(
            check=Check.NONLOCALITY, outcome=Outcome.REFUTED, summary=e.message
        )
    certified = certificate.status is CutStatus.CERTIFIED
    return CheckResult(
        check=Check.NONLOCALITY,
        outcome=Outcome.PASS if certified else Outcome.UNDECIDED,
        summary=certificate.status.value,
        certificate=certificate,
    )


def _unextendibility(states: StateSet, config: RunConfig) -> CheckResult:
    try:
        verdict = certify_unextendible(states, config.node_budget)
    except NonOrthogonalError as e:
        return CheckResult(
            check=Check.UNEXTENDIBILITY, outcome=Outcome.REFUTED, summary=e.message
        )
    outcome = {
        UpbStatus.UPB: Outcome.PASS,
        UpbStatus.EXTENDIBLE: Outcome.REFUTED,
        UpbStatus.INCONCLUSIVE: Outcome.UNDECIDED,
    }[verdict.status]
    return CheckResult(
        check=Check.UNEXTENDIBILITY,
        outcome=outcome,
        summary=(
            f"{verdict.status.value} after {verdict.nodes} nodes, kill options "
            + "/".join(str(c) for c in verdict.options_per_party)
        ),
        verdict=verdict,
    )


DECOMPOSITION_CHECKS: dict[Check, Callable[[Decomposition, RunConfig], CheckResult]] = {
    Check.PARTITION: _partition,
    Check.CYCLIC: _cyclic,
    Check.CORNERS: _corners,
}

STATE_CHECKS: dict[Check, Callable[[StateSet, RunConfig], CheckResult]] = {
    Check.ORTHOGONALITY: _orthogonality,
    Check.COMPLETENESS: _completeness,
    Check.NONLOCALITY: _nonlocality,
    Check.UNEXTENDIBILITY: _unextendibility,
}


def run_checks(
    document_kind: str, target: Decomposition | StateSet, config: RunConfig
) -> VerifyReport:
    """Run the requested checks on a decoded document.

    Raises:
        UsageError: If a check does not apply to the document kind.
    """
    checks = config.checks or DEFAULT_CHECKS[document_kind]
    results = []
    for check in checks:
        if check.needs_states != (document_kind == "states"):
            raise UsageError(f"Check {check.value} does not apply to a {document_kind}")
        if isinstance(target, Decomposition):
            result = DECOMPOSITION_CHECKS[check](target, config)
        else:
            result = STATE_CHECKS[check](target, config)
        logger.info(f"{check.value}: {result.outcome.value} ({result.summary})")
        results.append(result)

    outcome = combine([r.outcome for r in results])
    return VerifyReport(
        input_kind=document_kind,
        dims=target.dims.dims if isinstance(target, Decomposition) else target.dims,
        checks=tuple(results),
        outcome=outcome,
        exit_code=EXIT_CODES[outcome],
    )


def cmd_verify(config: RunConfig) -> int:
    """Run checks on a document and write the report.

    Returns:
        0 when everything passes, 1 when a check is refuted, 2 when a
        check is undecided.

    Raises:
        UsageError: If no input is given or a check does not apply.
        MalformedInputError: If the input cannot be decoded.
    """
    if config.input_path is None:
        raise UsageError("verify needs --in")
    document = read_document(config.input_path)
    target = document.to_domain()
    kind = "decomposition" if isinstance(document, DecompositionDocument) else "states"

    report = run_checks(kind, target, config)
    write_output(dumps(report), config.output)
    return report.exit_code
