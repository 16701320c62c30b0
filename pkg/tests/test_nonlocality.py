"""Tests for the strong-nonlocality engine."""

import pytest

from src.core.enums import CutStatus
from src.core.enums import Rule
from src.core.enums import StateRole
from src.core.enums import TraceVerbosity
from src.core.errors import CertificationError
from src.core.errors import InvalidArgumentError
from src.core.errors import NonOrthogonalError
from src.schemas.hypercube import PartyDims
from src.schemas.reports import Cut
from src.schemas.reports import TraceStep
from src.schemas.states import ProductState
from src.schemas.states import StateSet
from src.services.nonlocality import certify_cut
from src.services.nonlocality import certify_strong_nonlocality
from src.services.nonlocality import project_blocks
from src.services.nonlocality import propagate
from src.services.nonlocality import replay
from src.services.nonlocality import seed_zero_blocks
from src.services.states import build_ops
from src.services.states import build_upb
from src.services.states import point_vector
from src.services.states import stopper


def _only_block(states: StateSet, block_id: str) -> StateSet:
    keep = tuple(s for s in states.states if str(s.label).split("[")[0] == block_id)
    return StateSet(dims=states.dims, role=StateRole.CUSTOM, states=keep)


def _without_block(states: StateSet, block_id: str) -> StateSet:
    keep = tuple(s for s in states.states if str(s.label).split("[")[0] != block_id)
    return StateSet(dims=states.dims, role=StateRole.CUSTOM, states=keep)


class TestCertification:
    """Tests for the verdict over all cuts."""

    def test_ops_333(self, ops333: StateSet):
        """The first layer of Z_3^3 is strongly nonlocal."""
        certificate = certify_strong_nonlocality(ops333)
        assert certificate.status is CutStatus.CERTIFIED
        assert certificate.state_count == 26
        assert len(certificate.cuts) == 3
        assert not certificate.notes

    @pytest.mark.parametrize("dims", [(3, 4, 5), (4, 4, 4), (5, 5, 5)])
    def test_ops_general_dims(self, dims: tuple[int, ...]):
        """Unequal and larger dimensions certify with a note."""
        certificate = certify_strong_nonlocality(build_ops(PartyDims(dims=dims)))
        assert certificate.status is CutStatus.CERTIFIED
        assert certificate.notes

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [5, 7])
    def test_ops_many_parties(self, n: int):
        """Z_3^5 and Z_3^7 certify on every cut."""
        certificate = certify_strong_nonlocality(
            build_ops(PartyDims(dims=(3,) * n)), verbosity=TraceVerbosity.NONE
        )
        assert certificate.status is CutStatus.CERTIFIED
        assert len(certificate.cuts) == n

    def test_upb_skips_stopper(self, upb333: StateSet):
        """The stopper is outside every block and is reported as skipped."""
        certificate = certify_strong_nonlocality(upb333)
        assert certificate.skipped == ("stopper",)
        assert certificate.role is StateRole.UPB
        assert certificate.status in (CutStatus.CERTIFIED, CutStatus.UNDECIDED)

    @pytest.mark.slow
    def test_upb_five_parties(self):
        """The Z_3^5 UPB gets a verdict; Undecided is not a refutation."""
        upb = build_upb(PartyDims(dims=(3,) * 5))
        certificate = certify_strong_nonlocality(upb, verbosity=TraceVerbosity.NONE)
        assert certificate.status in (CutStatus.CERTIFIED, CutStatus.UNDECIDED)

    def test_certified_cut_resolves_every_coordinate(self, ops333: StateSet):
        """One zero_row step per grid coordinate."""
        result = certify_cut(ops333, 2)
        assert result.status is CutStatus.CERTIFIED
        assert result.resolved_count == result.grid_size == 9
        assert result.rule_counts[Rule.ZERO_ROW.value] == result.grid_size
        assert result.frontier is None
        assert result.trace == ()


class TestStalling:
    """Tests for undecided cuts."""

    def test_single_block_stalls(self, ops333: StateSet):
        """Four states of one block say nothing about the rest of the grid."""
        states = _only_block(ops333, "C1:12")
        assert len(states) == 4
        result = certify_cut(states, 3)
        assert result.status is CutStatus.UNDECIDED
        assert result.resolved_count == 0
        assert result.frontier is not None
        assert len(result.frontier.unresolved) == 9

    def test_frontier_hidden_without_trace(self, ops333: StateSet):
        """Verbosity none drops the frontier."""
        states = _only_block(ops333, "C1:12")
        result = certify_cut(states, 3, TraceVerbosity.NONE)
        assert result.frontier is None

    def test_undecided_overall(self, ops333: StateSet):
        """A stalled cut makes the whole certificate Undecided."""
        certificate = certify_strong_nonlocality(_only_block(ops333, "C1:12"))
        assert certificate.status is CutStatus.UNDECIDED

    @pytest.mark.parametrize(
        ("block_id", "unresolved"),
        [
            ("C1:-", [7, 7, 7]),
            ("D1:-", [7, 7, 7]),
            ("C1:12", [4, 1, 1]),
            ("D1:23", [1, 4, 1]),
        ],
    )
    def test_incomplete_set_is_never_certified(
        self, ops333: StateSet, block_id: str, unresolved: list[int]
    ):
        """Removing one whole block leaves coordinates no rule can resolve."""
        states = _without_block(ops333, block_id)
        assert len(states) < len(ops333)
        certificate = certify_strong_nonlocality(states)
        assert certificate.status is CutStatus.UNDECIDED
        assert all(c.status is CutStatus.UNDECIDED for c in certificate.cuts)
        assert [c.grid_size - c.resolved_count for c in certificate.cuts] == unresolved


class TestCyclicSymmetry:
    """Equal dimensions make every cut look alike."""

    def test_three_parties(self, ops333: StateSet):
        """The three cuts of Z_3^3 apply the same rules equally often."""
        certificate = certify_strong_nonlocality(ops333, TraceVerbosity.NONE)
        counts = [c.rule_counts for c in certificate.cuts]
        assert all(c == counts[0] for c in counts)

    @pytest.mark.slow
    def test_five_parties(self):
        """All five cuts of Z_3^5 share one rule census."""
        ops = build_ops(PartyDims(dims=(3,) * 5))
        certificate = certify_strong_nonlocality(ops, TraceVerbosity.NONE)
        assert len(certificate.cuts) == 5
        for cut in certificate.cuts:
            assert cut.rule_counts == {
                Rule.BLOCK_ZEROS.value: 304,
                Rule.BLOCK_TRIVIAL.value: 30,
                Rule.ZERO_ROW.value: 81,
            }


class TestReplay:
    """Tests for trace replay."""

    @pytest.mark.parametrize("party", [1, 2, 3])
    def test_full_trace_replays(self, ops333: StateSet, party: int):
        """Replaying a full trace rebuilds the same deduction state."""
        result = certify_cut(ops333, party, TraceVerbosity.FULL)
        assert result.trace

        cut = Cut(excluded_party=party, dims=ops333.dims)
        projected = project_blocks(ops333, cut)
        expected = propagate(seed_zero_blocks(cut, projected), projected)
        rebuilt = replay(cut, projected, result.trace)
        assert rebuilt == expected
        assert rebuilt.complete

    def test_rejects_premature_zero_row(self, ops333: StateSet):
        """A zero_row step before any zero is known fails the re-check."""
        cut = Cut(excluded_party=1, dims=ops333.dims)
        projected = project_blocks(ops333, cut)
        with pytest.raises(CertificationError):
            replay(cut, projected, [TraceStep(rule=Rule.ZERO_ROW, coords=(0,))])

    def test_rejects_unfounded_block_trivial(self, ops333: StateSet):
        """block_trivial needs an anchor with a zero row inside the block."""
        cut = Cut(excluded_party=1, dims=ops333.dims)
        projected = project_blocks(ops333, cut)
        block = next(b for b in projected if len(b.support) > 1)
        step = TraceStep(
            rule=Rule.BLOCK_TRIVIAL,
            blocks=(block.block_id,),
            coords=(block.support[0],),
        )
        with pytest.raises(CertificationError):
            replay(cut, projected, [step])


class TestProjection:
    """Tests for block projection."""

    def test_blocks_of_a_cut(self, ops333: StateSet):
        """Each of the eight layer blocks projects to a complete family."""
        cut = Cut(excluded_party=1, dims=ops333.dims)
        projected = project_blocks(ops333, cut)
        assert len(projected) == 8
        assert all(b.structured and b.usable for b in projected)
        assert sum(len(b.full_slices) * b.family_size for b in projected) == 26

    def test_cut_grid(self):
        """The joint grid drops the excluded party."""
        cut = Cut(excluded_party=2, dims=(3, 4, 5))
        assert cut.joint_dims == (3, 5)
        assert cut.size == 15
        assert cut.coords(cut.index((2, 4))) == (2, 4)


class TestInputErrors:
    """Tests for rejected inputs."""

    def test_non_orthogonal(self, ops333: StateSet):
        """The stopper overlaps plus states of the OPS."""
        s = stopper(PartyDims(dims=ops333.dims))
        broken = StateSet(dims=ops333.dims, states=(*ops333.states, s))
        with pytest.raises(NonOrthogonalError):
            certify_strong_nonlocality(broken)

    def test_unlabeled_state(self):
        """States must name their block."""
        state = ProductState(factors=tuple(point_vector(p, 0, 3) for p in (1, 2, 3)))
        states = StateSet(dims=(3, 3, 3), states=(state,))
        with pytest.raises(InvalidArgumentError):
            project_blocks(states, Cut(excluded_party=1, dims=(3, 3, 3)))
        with pytest.raises(InvalidArgumentError):
            certify_strong_nonlocality(states)
