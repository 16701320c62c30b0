"""Tests for the layered subcube decomposition."""

import math

import pytest

from src.core.enums import FactorTag
from src.core.enums import Family
from src.core.errors import InvalidArgumentError
from src.core.errors import InvalidDimensionsError
from src.core.errors import PreconditionError
from src.schemas.hypercube import Decomposition
from src.schemas.hypercube import Factor
from src.schemas.hypercube import PartyDims
from src.schemas.hypercube import Subcube
from src.services.hypercube import build_decomposition
from src.services.hypercube import build_subcube
from src.services.hypercube import corner_census
from src.services.hypercube import corner_identity
from src.services.hypercube import grid_points
from src.services.hypercube import index_family
from src.services.hypercube import layer_identity
from src.services.hypercube import layer_of
from src.services.hypercube import locate
from src.services.hypercube import locate_by_scan
from src.services.hypercube import next_tag
from src.services.hypercube import verify_cyclic_invariance
from src.services.hypercube import verify_partition
from tests.conftest import LEMMA_DIMS


# Rows of the Z_3^3 and Z_3^5 tables: K -> (C_K, D_K), one symbol per party,
# e = {0,1}, x = {1,2}, digits are points
TABLE_333 = {
    (): ("000", "222"),
    (1, 2): ("ex2", "xe0"),
    (1, 3): ("e0x", "x2e"),
    (2, 3): ("0xe", "2ex"),
}

TABLE_33333 = {
    (): ("00000", "22222"),
    (1, 2): ("ex222", "xe000"),
    (1, 3): ("e0x22", "x2e00"),
    (1, 4): ("e00x2", "x22e0"),
    (1, 5): ("e000x", "x222e"),
    (2, 3): ("0xe00", "2ex22"),
    (2, 4): ("0x2e0", "2e0x2"),
    (2, 5): ("0x22e", "2e00x"),
    (3, 4): ("00xe0", "22ex2"),
    (3, 5): ("00x2e", "22e0x"),
    (4, 5): ("000xe", "222ex"),
    (1, 2, 3, 4): ("exex2", "xexe0"),
    (1, 2, 3, 5): ("exe0x", "xex2e"),
    (1, 2, 4, 5): ("ex2ex", "xe0xe"),
    (1, 3, 4, 5): ("e0xex", "x2exe"),
    (2, 3, 4, 5): ("0xexe", "2exex"),
}

SYMBOLS = {"0": (0, 0), "2": (2, 2), "e": (0, 1), "x": (1, 2)}


def _expected(row: str) -> tuple[tuple[int, int], ...]:
    return tuple(SYMBOLS[s] for s in row)


class TestIndexFamily:
    """Tests for the even subsets of parties."""

    @pytest.mark.parametrize("n", [3, 5, 7, 9])
    def test_size(self, n: int):
        """There are 2^(N-1) even subsets."""
        assert len(index_family(n)) == 2 ** (n - 1)

    def test_order(self):
        """Ordered by size then lexicographically."""
        assert index_family(3) == [(), (1, 2), (1, 3), (2, 3)]

    @pytest.mark.parametrize("n", [2, 4, 1])
    def test_rejects_bad_party_count(self, n: int):
        """N must be odd and at least 3."""
        with pytest.raises(InvalidDimensionsError):
            index_family(n)


class TestPartyDims:
    """Tests for dimension validation."""

    @pytest.mark.parametrize(
        "dims", [(3, 3), (3, 3, 3, 3), (2, 3, 3), (3, 5, 4), (3, 2, 3)]
    )
    def test_rejects(self, dims: tuple[int, ...]):
        """Even N, small or decreasing dimensions are rejected."""
        with pytest.raises(InvalidDimensionsError):
            PartyDims(dims=dims)

    def test_properties(self):
        """Layer count follows the smallest dimension."""
        dims = PartyDims(dims=(5, 6, 7))
        assert dims.layers == 2
        assert dims.size == 210
        assert not dims.all_three
        assert str(dims) == "5x6x7"


class TestTableRule:
    """Tests for the party-to-party recurrence."""

    @pytest.mark.parametrize(
        ("current", "in_kset", "expected"),
        [
            (FactorTag.LO_POINT, False, FactorTag.LO_POINT),
            (FactorTag.LO_POINT, True, FactorTag.XI_RANGE),
            (FactorTag.ETA_RANGE, False, FactorTag.LO_POINT),
            (FactorTag.ETA_RANGE, True, FactorTag.XI_RANGE),
            (FactorTag.HI_POINT, False, FactorTag.HI_POINT),
            (FactorTag.HI_POINT, True, FactorTag.ETA_RANGE),
            (FactorTag.XI_RANGE, False, FactorTag.HI_POINT),
            (FactorTag.XI_RANGE, True, FactorTag.ETA_RANGE),
        ],
    )
    def test_next_tag(self, current: FactorTag, in_kset: bool, expected: FactorTag):
        """Next factor keeps the side outside K and flips inside K."""
        assert next_tag(current, in_kset) is expected

    def test_inner_layer_block(self):
        """C_{12} of layer 2 in 5x5x5 is {1,2}x{2,3}x{3}."""
        block = build_subcube(PartyDims(dims=(5, 5, 5)), 2, (1, 2), Family.C)
        assert block.intervals == ((1, 2), (2, 3), (3, 3))

    def test_rejects_odd_kset(self, dims333: PartyDims):
        """K-sets have even size."""
        with pytest.raises(InvalidArgumentError):
            build_subcube(dims333, 1, (1,), Family.C)

    def test_rejects_layer_out_of_range(self, dims333: PartyDims):
        """Z_3^N has one layer."""
        with pytest.raises(InvalidArgumentError):
            build_subcube(dims333, 2, (), Family.C)


class TestGoldens:
    """Tests against the published decomposition tables."""

    @pytest.mark.parametrize(
        ("dec_name", "table"), [("dec333", TABLE_333), ("dec33333", TABLE_33333)]
    )
    def test_layer_blocks(
        self, dec_name: str, table: dict, request: pytest.FixtureRequest
    ):
        """Every C_K and D_K matches its table row."""
        dec: Decomposition = request.getfixturevalue(dec_name)
        for kset, (c_row, d_row) in table.items():
            assert dec.block((1, kset, "C")).intervals == _expected(c_row)
            assert dec.block((1, kset, "D")).intervals == _expected(d_row)

    def test_central_block(self, dec333: Decomposition):
        """B_0 is the single point (1, 1, 1)."""
        assert dec333.central is not None
        assert dec333.central.intervals == ((1, 1), (1, 1), (1, 1))
        assert dec333.blocks[0].short_id == "B0"

    def test_short_ids(self, dec333: Decomposition):
        """Ids name family, layer and K-set."""
        ids = {b.short_id for b in dec333.blocks}
        assert ids == {
            "B0",
            "C1:-",
            "D1:-",
            "C1:12",
            "D1:12",
            "C1:13",
            "D1:13",
            "C1:23",
            "D1:23",
        }


class TestCounting:
    """Tests for the block counts and counting identities."""

    @pytest.mark.parametrize("n", [3, 5, 7])
    def test_block_count(self, n: int):
        """2^N + 1 blocks for all-3 dimensions."""
        dec = build_decomposition(PartyDims(dims=(3,) * n))
        assert len(dec.blocks) == 2**n + 1

    @pytest.mark.parametrize("n", [3, 5, 7, 9, 11, 13])
    def test_corner_identity(self, n: int):
        """1 + sum 2 C(N, 2i) 4^i = 3^N."""
        assert corner_identity(n)

    @pytest.mark.parametrize("dims", [(3, 4, 5), (5, 6, 7), (4, 4, 4, 4, 4)])
    def test_layer_identity(self, dims: tuple[int, ...]):
        """Layer sizes add up for every layer."""
        party_dims = PartyDims(dims=dims)
        for k in range(1, party_dims.layers + 1):
            assert layer_identity(party_dims, k)

    def test_block_sizes_sum_to_grid(self):
        """Block sizes add up to d_1...d_N."""
        dec = build_decomposition(PartyDims(dims=(5, 6, 7)))
        assert sum(b.size for b in dec.blocks) == 210
        assert len(dec.blocks) == 2 * 8 + 1


class TestLemmas:
    """Partition, cyclic invariance and corner census on the acceptance dims."""

    @pytest.mark.parametrize("dims", LEMMA_DIMS)
    def test_partition(self, dims: tuple[int, ...]):
        """Blocks are disjoint, cover the grid and are pairwise separated."""
        report = verify_partition(build_decomposition(PartyDims(dims=dims)))
        assert report.passed
        assert report.block_count == report.expected_count

    @pytest.mark.parametrize("dims", [d for d in LEMMA_DIMS if len(set(d)) == 1])
    def test_cyclic_invariance(self, dims: tuple[int, ...]):
        """Rotating the parties maps the block set onto itself."""
        assert verify_cyclic_invariance(build_decomposition(PartyDims(dims=dims)))

    def test_cyclic_invariance_needs_equal_dims(self):
        """Unequal dimensions have no cyclic symmetry to check."""
        dec = build_decomposition(PartyDims(dims=(3, 4, 5)))
        with pytest.raises(InvalidArgumentError):
            verify_cyclic_invariance(dec)

    def test_cyclic_invariance_detects_tampering(self, dec333: Decomposition):
        """Swapping two parties' intervals in one block breaks the symmetry."""
        block = dec333.block((1, (1, 2), "C"))
        assert block is not None
        first, second, third = block.factors
        swapped = Subcube(
            layer=block.layer,
            family=block.family,
            kset=block.kset,
            factors=(
                Factor(party=1, tag=second.tag, lo=second.lo, hi=second.hi),
                Factor(party=2, tag=first.tag, lo=first.lo, hi=first.hi),
                third,
            ),
        )
        blocks = tuple(swapped if b.key == block.key else b for b in dec333.blocks)
        tampered = Decomposition(dims=dec333.dims, blocks=blocks)
        assert swapped.intervals != block.intervals
        assert not verify_cyclic_invariance(tampered)

    @pytest.mark.parametrize("dims", LEMMA_DIMS)
    def test_walk_closes_cyclically(self, dims: tuple[int, ...]):
        """Stepping from the last party back to the first reproduces A_1."""
        dec = build_decomposition(PartyDims(dims=dims))
        for block in dec.blocks:
            if block.layer == 0:
                continue
            closing = next_tag(block.factors[-1].tag, 1 in block.kset)
            assert closing is block.factors[0].tag, block.short_id

    @pytest.mark.parametrize("dims", LEMMA_DIMS)
    def test_corner_census(self, dims: tuple[int, ...]):
        """Every layer block holds one corner and all corners are hit."""
        report = corner_census(build_decomposition(PartyDims(dims=dims)))
        assert report.passed
        assert report.conjecture == (set(dims) != {3})

    def test_tampered_decomposition_fails(self, dec333: Decomposition):
        """Dropping a block breaks coverage and the count."""
        broken = Decomposition(dims=dec333.dims, blocks=dec333.blocks[:-1])
        report = verify_partition(broken)
        assert not report.covering
        assert not report.count_ok
        assert not report.passed

    def test_duplicated_block_fails(self, dec333: Decomposition):
        """Repeating a block breaks disjointness."""
        doubled = Decomposition(
            dims=dec333.dims, blocks=(*dec333.blocks, dec333.blocks[1])
        )
        report = verify_partition(doubled)
        assert not report.disjoint
        assert not report.pairwise_party_disjoint


class TestLocate:
    """Tests for point membership."""

    def test_examples(self, dec333: Decomposition):
        """Points land in their table blocks."""
        assert locate(dec333, (1, 1, 1)).short_id == "B0"
        assert locate(dec333, (0, 0, 0)).short_id == "C1:-"
        assert locate(dec333, (0, 2, 2)).short_id == "C1:12"
        assert locate(dec333, (2, 1, 0)).short_id == "D1:12"
        assert locate(dec333, (1, 0, 2)).short_id == "C1:13"

    @pytest.mark.parametrize(
        "dims", [(3, 3, 3), (3, 3, 3, 3, 3), (3, 4, 5), (4, 4, 4), (5, 6, 7)]
    )
    def test_walk_agrees_with_scan(self, dims: tuple[int, ...]):
        """The walk and the linear scan agree on every grid point."""
        dec = build_decomposition(PartyDims(dims=dims))
        for point in grid_points(dims):
            assert locate(dec, point) == locate_by_scan(dec, point)

    def test_layer_of(self):
        """Layer index is the depth of the shell."""
        dims = PartyDims(dims=(5, 5, 5))
        assert layer_of(dims, (0, 2, 2)) == 1
        assert layer_of(dims, (1, 2, 3)) == 2
        assert layer_of(dims, (2, 2, 2)) == 0

    def test_point_outside_grid(self, dec333: Decomposition):
        """Coordinates must lie in the grid."""
        with pytest.raises(InvalidArgumentError):
            locate(dec333, (0, 3, 0))
        with pytest.raises(InvalidArgumentError):
            locate(dec333, (0, 0))

    def test_missing_block(self, dec333: Decomposition):
        """A decomposition without the block cannot place the point."""
        pruned = Decomposition(dims=dec333.dims, blocks=dec333.blocks[:1])
        with pytest.raises(PreconditionError):
            locate(pruned, (0, 0, 0))
        with pytest.raises(PreconditionError):
            locate_by_scan(pruned, (0, 0, 0))

    def test_grid_points(self):
        """Enumeration is lexicographic and complete."""
        points = list(grid_points((3, 4)))
        assert len(points) == math.prod((3, 4))
        assert points[:2] == [(0, 0), (0, 1)]
