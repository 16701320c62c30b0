"""Strong-nonlocality certification by block inference on every cut.

For a cut separating party A_i from the joint party B, the engine tracks
which entries of an orthogonality-preserving POVM element E on B are
known to vanish and which diagonal entries are known to agree. Two rules
grow that knowledge:

* block_zeros: if two blocks have excluded-party factors with a nonzero
  overlap, and each such factor is paired with a complete product
  Fourier family on the block's joint support, the cross entries between
  the two supports vanish.
* block_trivial: if one coordinate of a block's support already has a
  zero row inside the support, E restricted to the support is a multiple
  of the identity.

A coordinate whose whole row vanishes and whose diagonal equals the
reference diagonal is resolved. The cut is certified once every
coordinate is resolved, so E is proportional to the identity.
"""

from collections import Counter
from collections.abc import Sequence
from itertools import product

from loguru import logger

from src.core.enums import CutStatus
from src.core.enums import Rule
from src.core.enums import StateRole
from src.core.enums import TraceVerbosity
from src.core.errors import CertificationError
from src.core.errors import InvalidArgumentError
from src.core.errors import NonOrthogonalError
from src.deps import get_decomposition
from src.deps import parallel_map
from src.schemas.hypercube import PartyDims
from src.schemas.reports import Certificate
from src.schemas.reports import Cut
from src.schemas.reports import CutResult
from src.schemas.reports import DeductionState
from src.schemas.reports import Frontier
from src.schemas.reports import ProjectedBlock
from src.schemas.reports import TraceStep
from src.schemas.states import ProductState
from src.schemas.states import StateLabel
from src.schemas.states import StateSet
from src.services.states import cyc_inner
from src.services.states import global_order
from src.services.states import party_families
from src.services.verify import check_pairwise_orthogonal


# =============================================================================
# PROJECTION
# =============================================================================
def project_blocks(states: StateSet, cut: Cut) -> list[ProjectedBlock]:
    """Group a labeled state set by block and project every block on a cut.

    Named states outside blocks (stopper, witness) are skipped.

    Args:
        states: State set built from a decomposition.
        cut: The cut.

    Returns:
        Projected blocks in decomposition order.

    Raises:
        InvalidArgumentError: If a state is unlabeled or names a block the
            decomposition does not have.
    """
    dims = PartyDims(dims=states.dims)
    dec = get_decomposition(dims)
    order = global_order(dims)

    groups: dict[tuple[int, tuple[int, ...], str | None], list[ProductState]] = {}
    for position, state in enumerate(states.states):
        key = state.label.block_key
        if key is None:
            if state.label.name:
                continue
            raise InvalidArgumentError(f"State {position} carries no block label")
        if dec.block(key) is None:
            raise InvalidArgumentError(f"State {position} names unknown block {key}")
        groups.setdefault(key, []).append(state)

    i = cut.excluded_party - 1
    projected = []
    for block in dec.blocks:
        members = groups.get(block.key)
        if not members:
            continue
        families = party_families(block, dims, order)
        joint = families[:i] + families[i + 1 :]
        family_size = 1
        for f in joint:
            family_size *= len(f)

        structured = True
        slices: dict[int, set[tuple[int, ...]]] = {}
        first: dict[int, ProductState] = {}
        for state in members:
            fourier = state.label.fourier
            if len(fourier) != dims.n or any(
                not 0 <= n < len(f) for n, f in zip(fourier, families, strict=True)
            ):
                structured = False
                continue
            if any(
                factor.amps != f[n].amps
                for factor, f, n in zip(state.factors, families, fourier, strict=True)
            ):
                structured = False
            a = fourier[i]
            slices.setdefault(a, set()).add(fourier[:i] + fourier[i + 1 :])
            first.setdefault(a, state)

        full = tuple(
            sorted(a for a, rest in slices.items() if len(rest) == family_size)
        )
        ranges = [range(f.lo, f.hi + 1) for j, f in enumerate(block.factors) if j != i]
        support = tuple(sorted(cut.index(c) for c in product(*ranges)))
        excluded = block.factors[i]
        projected.append(
            ProjectedBlock(
                block_id=block.short_id,
                key=block.key,
                excluded_lo=excluded.lo,
                excluded_hi=excluded.hi,
                support=support,
                structured=structured,
                slices={a: len(rest) for a, rest in sorted(slices.items())},
                family_size=family_size,
                full_slices=full,
                excluded_factors=tuple(first[a].factors[i] for a in full),
                representatives=tuple(first[a].label for a in full),
            )
        )
    return projected


def _overlap_witness(
    p: ProjectedBlock, q: ProjectedBlock
) -> tuple[StateLabel, StateLabel] | None:
    for u, label_u in zip(p.excluded_factors, p.representatives, strict=True):
        for v, label_v in zip(q.excluded_factors, q.representatives, strict=True):
            if u.support & v.support and not cyc_inner(u, v).is_zero():
                return label_u, label_v
    return None


# =============================================================================
# WORKSPACE
# =============================================================================
class _Workspace:
    """Mutable deduction state of one cut."""

    def __init__(self, cut: Cut) -> None:
        self.cut = cut
        self.size = cut.size
        self.full = (1 << self.size) - 1
        self.rows = [0] * self.size
        self.parent = list(range(self.size))
        self.resolved: list[int] = []
        self.resolved_set: set[int] = set()
        self.reference: int | None = None
        self.applied: list[str] = []
        self.trace: list[TraceStep] = []

    @classmethod
    def from_state(cls, state: DeductionState) -> "_Workspace":
        ws = cls(state.cut)
        ws.rows = list(state.zero_rows)
        ws.parent = list(state.classes)
        ws.resolved = list(state.resolved)
        ws.resolved_set = set(state.resolved)
        ws.reference = state.reference
        ws.applied = list(state.applied)
        ws.trace = list(state.trace)
        return ws

    def snapshot(self) -> DeductionState:
        return DeductionState(
            cut=self.cut,
            zero_rows=tuple(self.rows),
            classes=tuple(self.find(u) for u in range(self.size)),
            resolved=tuple(sorted(self.resolved)),
            reference=self.reference,
            applied=tuple(self.applied),
            trace=tuple(self.trace),
        )

    def find(self, u: int) -> int:
        root = u
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[u] != root:
            self.parent[u], u = root, self.parent[u]
        return root

    def union(self, u: int, v: int) -> None:
        ru, rv = self.find(u), self.find(v)
        if ru != rv:
            lo, hi = min(ru, rv), max(ru, rv)
            self.parent[hi] = lo

    def mark(self, support: Sequence[int], mask: int) -> None:
        for u in support:
            self.rows[u] |= mask & ~(1 << u)

    def full_row(self, u: int) -> bool:
        return self.rows[u] | (1 << u) == self.full

    def anchor(self, block: ProjectedBlock) -> int | None:
        """First support coordinate with a zero row inside the support."""
        for u in block.support:
            need = block.mask & ~(1 << u)
            if self.rows[u] & need == need:
                return u
        return None

    def block_zeros(
        self,
        p: ProjectedBlock,
        q: ProjectedBlock,
        witness: tuple[StateLabel, StateLabel],
    ) -> None:
        self.mark(p.support, q.mask)
        self.mark(q.support, p.mask)
        self.trace.append(
            TraceStep(
                rule=Rule.BLOCK_ZEROS,
                blocks=(p.block_id, q.block_id),
                witnesses=witness,
            )
        )

    def block_trivial(self, block: ProjectedBlock, anchor: int) -> None:
        self.mark(block.support, block.mask)
        for u in block.support:
            self.union(anchor, u)
        self.applied.append(block.block_id)
        self.trace.append(
            TraceStep(
                rule=Rule.BLOCK_TRIVIAL,
                blocks=(block.block_id,),
                coords=(anchor,),
                witnesses=block.representatives[:1],
            )
        )

    def zero_row(self, u: int) -> None:
        if self.reference is None:
            self.reference = u
        self.resolved.append(u)
        self.resolved_set.add(u)
        self.trace.append(TraceStep(rule=Rule.ZERO_ROW, coords=(u,)))

    def resolve(self) -> bool:
        """Move full-row coordinates of the reference class into M."""
        if self.reference is None:
            seed = next((u for u in range(self.size) if self.full_row(u)), None)
            if seed is None:
                return False
            self.zero_row(seed)
        grew = False
        root = self.find(self.reference)
        for u in range(self.size):
            if u in self.resolved_set or not self.full_row(u):
                continue
            if self.find(u) == root:
                self.zero_row(u)
                grew = True
        return grew


# =============================================================================
# RULES
# =============================================================================
def seed_zero_blocks(cut: Cut, projected: Sequence[ProjectedBlock]) -> DeductionState:
    """Apply block_zeros to every pair of blocks with intersecting intervals.

    Args:
        cut: The cut.
        projected: Projected blocks of the cut.

    Returns:
        Deduction state holding the seeded zero relation.
    """
    ws = _Workspace(cut)
    usable = [b for b in projected if b.usable]
    for index, p in enumerate(usable):
        for q in usable[index + 1 :]:
            if not p.intersects(q):
                continue
            witness = _overlap_witness(p, q)
            if witness is not None:
                ws.block_zeros(p, q, witness)
    return ws.snapshot()


def propagate(
    state: DeductionState, projected: Sequence[ProjectedBlock]
) -> DeductionState:
    """Run block_trivial and zero_row to a fixpoint.

    Both rules only add knowledge, so the loop ends after at most one
    pass per block.

    Args:
        state: Seeded deduction state.
        projected: Projected blocks of the cut.

    Returns:
        Deduction state at the fixpoint.
    """
    ws = _Workspace.from_state(state)
    pending = [
        b
        for b in projected
        if b.usable and len(b.support) > 1 and b.block_id not in ws.applied
    ]
    ws.resolve()
    while True:
        fired = False
        for block in list(pending):
            anchor = ws.anchor(block)
            if anchor is None:
                continue
            ws.block_trivial(block, anchor)
            pending.remove(block)
            fired = True
        ws.resolve()
        if not fired:
            break
    return ws.snapshot()


def replay(
    cut: Cut, projected: Sequence[ProjectedBlock], trace: Sequence[TraceStep]
) -> DeductionState:
    """Rebuild a deduction state from its trace, re-checking every step.

    Args:
        cut: The cut.
        projected: Projected blocks of the cut.
        trace: Steps to apply in order.

    Returns:
        The rebuilt deduction state.

    Raises:
        CertificationError: If a step's hypothesis does not hold.
    """
    ws = _Workspace(cut)
    blocks = {b.block_id: b for b in projected}

    for step in trace:
        match step.rule:
            case Rule.BLOCK_ZEROS:
                p, q = (blocks[b] for b in step.blocks)
                u = p.excluded_factors[p.representatives.index(step.witnesses[0])]
                v = q.excluded_factors[q.representatives.index(step.witnesses[1])]
                if not p.intersects(q) or cyc_inner(u, v).is_zero():
                    raise CertificationError(
                        f"Witness of {step.blocks} has zero overlap"
                    )
                ws.block_zeros(p, q, (step.witnesses[0], step.witnesses[1]))
            case Rule.BLOCK_TRIVIAL:
                block = blocks[step.blocks[0]]
                anchor = step.coords[0]
                need = block.mask & ~(1 << anchor)
                if not block.usable or ws.rows[anchor] & need != need:
                    raise CertificationError(
                        f"Anchor {anchor} of {block.block_id} fails"
                    )
                ws.block_trivial(block, anchor)
            case Rule.ZERO_ROW:
                u = step.coords[0]
                in_class = ws.reference is None or ws.find(u) == ws.find(ws.reference)
                if not ws.full_row(u) or not in_class:
                    raise CertificationError(
                        f"Coordinate {u} cannot join the resolved set"
                    )
                ws.zero_row(u)
    return ws.snapshot()


# =============================================================================
# CERTIFICATION
# =============================================================================
def certify_cut(
    states: StateSet,
    excluded_party: int,
    verbosity: TraceVerbosity = TraceVerbosity.SUMMARY,
) -> CutResult:
    """Run the engine on one cut.

    Args:
        states: Labeled, pairwise orthogonal state set.
        excluded_party: 1-based party A_i split from the rest.
        verbosity: How much of the trace to keep in the result.

    Returns:
        Verdict of the cut, with the stalled frontier when undecided.
    """
    cut = Cut(excluded_party=excluded_party, dims=states.dims)
    projected = project_blocks(states, cut)
    state = propagate(seed_zero_blocks(cut, projected), projected)

    status = CutStatus.CERTIFIED if state.complete else CutStatus.UNDECIDED
    counts = Counter(step.rule.value for step in state.trace)
    frontier = None
    if status is CutStatus.UNDECIDED:
        resolved = set(state.resolved)
        frontier = Frontier(
            unresolved=tuple(
                cut.coords(u) for u in range(cut.size) if u not in resolved
            ),
            unusable_blocks=tuple(b.block_id for b in projected if not b.usable),
            unapplied_blocks=tuple(
                b.block_id
                for b in projected
                if b.usable and len(b.support) > 1 and b.block_id not in state.applied
            ),
        )

    logger.info(
        f"Cut A_{excluded_party}: {status.value}, "
        f"resolved {len(state.resolved)}/{cut.size}"
    )
    return CutResult(
        excluded_party=excluded_party,
        status=status,
        grid_size=cut.size,
        resolved_count=len(state.resolved),
        rule_counts={rule.value: counts.get(rule.value, 0) for rule in Rule},
        trace=state.trace if verbosity is TraceVerbosity.FULL else (),
        frontier=frontier if verbosity is not TraceVerbosity.NONE else None,
    )


def _certify_cut_job(job: tuple[StateSet, int, TraceVerbosity]) -> CutResult:
    states, party, verbosity = job
    return certify_cut(states, party, verbosity)


def certify_strong_nonlocality(
    states: StateSet,
    verbosity: TraceVerbosity = TraceVerbosity.SUMMARY,
    threads: int | None = None,
) -> Certificate:
    """Certify strong nonlocality through every cut.

    The verdict is Certified iff every cut resolves its whole grid.
    Undecided is not a refutation.

    Args:
        states: Labeled state set.
        verbosity: Trace detail kept per cut.
        threads: Worker cap for the cuts.

    Returns:
        Certificate over all cuts.

    Raises:
        NonOrthogonalError: If the set is not pairwise orthogonal.
        InvalidDimensionsError: If the dimensions have no decomposition.
        InvalidArgumentError: If a state is unlabeled.
    """
    report = check_pairwise_orthogonal(states, stop_at_first=True)
    if not report.orthogonal:
        v = report.violations[0]
        raise NonOrthogonalError(
            f"States {v.first} ({v.first_label}) and {v.second} ({v.second_label}) "
            "are not orthogonal"
        )
    dims = PartyDims(dims=states.dims)

    jobs = [(states, party, verbosity) for party in range(1, dims.n + 1)]
    cuts = parallel_map(_certify_cut_job, jobs, threads)
    status = (
        CutStatus.CERTIFIED
        if all(c.status is CutStatus.CERTIFIED for c in cuts)
        else CutStatus.UNDECIDED
    )

    notes = []
    if not dims.all_three:
        notes.append(
            "General dimensions: the verdict mechanically stands in for the "
            "layered triviality argument."
        )
    if states.role is StateRole.OPB:
        notes.append("Verdict on a full basis is reported without a published claim.")

    skipped = tuple(
        s.label.name or "" for s in states.states if s.label.block_key is None
    )
    logger.info(f"Strong nonlocality of {len(states)} states: {status.value}")
    return Certificate(
        status=status,
        role=states.role,
        dims=states.dims,
        state_count=len(states),
        skipped=skipped,
        cuts=tuple(cuts),
        notes=tuple(notes),
    )
