"""Exact product-state families attached to a decomposition."""

import itertools
import math
from collections.abc import Sequence

from loguru import logger

from src.core.constants import STOPPER_NAME
from src.core.enums import StateRole
from src.core.errors import InvalidArgumentError
from src.schemas.hypercube import PartyDims
from src.schemas.hypercube import Subcube
from src.schemas.states import LocalVector
from src.schemas.states import ProductState
from src.schemas.states import StateLabel
from src.schemas.states import StateSet
from src.services.hypercube import build_central_block
from src.services.hypercube import build_decomposition
from src.utils.cyclotomic import CycNum


def global_order(dims: PartyDims) -> int:
    """Common root-of-unity order L of a construction.

    L is the lcm of every range length d_j - 2k + 1 over the layers and
    of the central interval lengths, so every Fourier phase is a power of
    w_L.
    """
    lengths = [d - 2 * dims.layers for d in dims.dims]
    for k in range(1, dims.layers + 1):
        lengths.extend(d - 2 * k + 1 for d in dims.dims)
    return math.lcm(*lengths)


def cyc_inner(u: LocalVector, v: LocalVector) -> CycNum:
    """Hermitian inner product <u|v>, conjugate-linear in u.

    Raises:
        InvalidArgumentError: If the vectors live on different spaces.
    """
    if u.party != v.party or u.dim != v.dim:
        raise InvalidArgumentError(
            f"Cannot pair party {u.party} dim {u.dim} with party {v.party} dim {v.dim}"
        )
    total = CycNum.zero(u.order)
    for a, b in zip(u.amps, v.amps, strict=True):
        if a and b:
            total = total + a.conjugate() * b
    return total


def point_vector(party: int, index: int, dim: int, order: int = 1) -> LocalVector:
    """Computational basis vector |index> of one party."""
    amps = [CycNum.zero(order)] * dim
    amps[index] = CycNum.from_int(1, order)
    return LocalVector(party=party, amps=tuple(amps))


def fourier_basis(
    party: int, lo: int, hi: int, dim: int, order: int | None = None
) -> list[LocalVector]:
    """Fourier basis of the coordinate subspace spanned by |lo>..|hi>.

    Vector n has amplitude w_m^((i - lo) * n) at i in [lo, hi] with
    m = hi - lo + 1, so n = 0 is the all-ones vector on the interval.

    Args:
        party: 1-based party index.
        lo: First index.
        hi: Last index (inclusive).
        dim: Local dimension.
        order: Cyclotomic order to express phases in, a multiple of m.
            Defaults to m.

    Returns:
        The m vectors, n = 0..m-1.

    Raises:
        InvalidArgumentError: If the interval or order is invalid.
    """
    if not 0 <= lo <= hi < dim:
        raise InvalidArgumentError(f"Bad interval [{lo}, {hi}] in dimension {dim}")
    m = hi - lo + 1
    order = order or m
    if order % m:
        raise InvalidArgumentError(
            f"Order {order} is not a multiple of range length {m}"
        )
    step = order // m
    zero = CycNum.zero(order)

    basis = []
    for n in range(m):
        amps = [zero] * dim
        for i in range(lo, hi + 1):
            amps[i] = CycNum.root((i - lo) * n * step, order)
        basis.append(LocalVector(party=party, amps=tuple(amps)))
    return basis


def party_families(
    sc: Subcube, dims: PartyDims, order: int
) -> list[list[LocalVector]]:
    """Point vector or Fourier basis of every party of a block."""
    family = []
    for factor, d in zip(sc.factors, dims.dims, strict=True):
        if factor.lo == factor.hi:
            family.append([point_vector(factor.party, factor.lo, d, order)])
        else:
            family.append(fourier_basis(factor.party, factor.lo, factor.hi, d, order))
    return family


def _label(sc: Subcube, fourier: Sequence[int]) -> StateLabel:
    return StateLabel(
        layer=sc.layer, kset=sc.kset, family=sc.family, fourier=tuple(fourier)
    )


def states_from_subcube(
    sc: Subcube, dims: PartyDims, order: int | None = None
) -> list[ProductState]:
    """All product Fourier states of a block.

    Args:
        sc: Block of a decomposition of ``dims``.
        dims: Party dimensions.
        order: Cyclotomic order; defaults to the global order of ``dims``.

    Returns:
        prod over range factors of their lengths states, in lexicographic
        Fourier multi-index order.
    """
    order = order or global_order(dims)
    family = party_families(sc, dims, order)
    states = []
    for fourier in itertools.product(*(range(len(f)) for f in family)):
        factors = tuple(f[n] for f, n in zip(family, fourier, strict=True))
        states.append(ProductState(factors=factors, label=_label(sc, fourier)))
    return states


def central_block_states(
    dims: PartyDims, order: int | None = None
) -> list[ProductState]:
    """Fourier product basis of the central block."""
    return states_from_subcube(build_central_block(dims), dims, order)


def plus_state(sc: Subcube, dims: PartyDims, order: int | None = None) -> ProductState:
    """The state of a block with all-zero Fourier multi-index."""
    order = order or global_order(dims)
    factors = tuple(family[0] for family in party_families(sc, dims, order))
    return ProductState(factors=factors, label=_label(sc, [0] * dims.n))


def stopper(dims: PartyDims, order: int | None = None) -> ProductState:
    """All-ones product state on every party."""
    order = order or global_order(dims)
    one = CycNum.from_int(1, order)
    factors = tuple(
        LocalVector(party=party, amps=(one,) * d)
        for party, d in enumerate(dims.dims, start=1)
    )
    return ProductState(factors=factors, label=StateLabel(name=STOPPER_NAME))


def build_opb(dims: PartyDims) -> StateSet:
    """Orthogonal product basis: states of every block, central first."""
    order = global_order(dims)
    states: list[ProductState] = []
    for block in build_decomposition(dims).blocks:
        states.extend(states_from_subcube(block, dims, order))
    logger.info(f"Built OPB of {dims}: {len(states)} states")
    return StateSet(dims=dims.dims, role=StateRole.OPB, states=tuple(states))


def build_ops(dims: PartyDims) -> StateSet:
    """Orthogonal product set of the first layer only."""
    order = global_order(dims)
    states: list[ProductState] = []
    for block in build_decomposition(dims).blocks:
        if block.layer == 1:
            states.extend(states_from_subcube(block, dims, order))
    logger.info(f"Built OPS of {dims}: {len(states)} states")
    return StateSet(dims=dims.dims, role=StateRole.OPS, states=tuple(states))


def build_upb(dims: PartyDims) -> StateSet:
    """Unextendible product basis: stopper plus every block minus its plus state.

    Size is d_1...d_N - 2^N * floor((d_1 - 1) / 2).
    """
    order = global_order(dims)
    states = [stopper(dims, order)]
    for block in build_decomposition(dims).blocks:
        for state in states_from_subcube(block, dims, order):
            if any(state.label.fourier):
                states.append(state)
    logger.info(f"Built UPB of {dims}: {len(states)} states")
    return StateSet(dims=dims.dims, role=StateRole.UPB, states=tuple(states))


def shifts_upb() -> StateSet:
    """The four-state Shifts UPB of three qubits.

    |0>|1>|+>, |1>|+>|0>, |+>|0>|1>, |->|->|-> with |+-> = |0> +- |1>.
    """
    zero, one, minus = (CycNum.from_int(v, 2) for v in (0, 1, -1))
    vectors = {
        "0": (one, zero),
        "1": (zero, one),
        "+": (one, one),
        "-": (one, minus),
    }
    rows = ("01+", "1+0", "+01", "---")
    states = tuple(
        ProductState(
            factors=tuple(
                LocalVector(party=party, amps=vectors[symbol])
                for party, symbol in enumerate(row, start=1)
            ),
            label=StateLabel(name=f"shift-{index}"),
        )
        for index, row in enumerate(rows, start=1)
    )
    return StateSet(dims=(2, 2, 2), role=StateRole.UPB, states=states)
