"""Unextendibility of orthogonal product sets.

A product state |w_1>...|w_N> is orthogonal to a member exactly when it is
orthogonal to the member on at least one party. The search therefore picks
one kill option per party, a maximal set of that party's local factors
lying in a common hyperplane, and asks whether the killed sets cover every
member. A cover yields a witness built from the hyperplane normals; an
exhausted search certifies the set as unextendible.
"""

import random
from collections.abc import Callable
from collections.abc import Sequence

from loguru import logger

from src.core.config import settings
from src.core.constants import WITNESS_NAME
from src.core.enums import UpbStatus
from src.core.errors import CertificationError
from src.core.errors import InvalidArgumentError
from src.core.errors import NonOrthogonalError
from src.schemas.reports import KillOption
from src.schemas.reports import LocalFactorIndex
from src.schemas.reports import UpbVerdict
from src.schemas.states import LocalVector
from src.schemas.states import ProductState
from src.schemas.states import StateLabel
from src.schemas.states import StateSet
from src.services.states import cyc_inner
from src.services.verify import check_pairwise_orthogonal
from src.services.verify import exact_rank
from src.services.verify import nullspace_vector
from src.services.verify import state_inner


OptionFilter = Callable[[KillOption], bool]


class _BudgetExhaustedError(Exception):
    pass


# =============================================================================
# LOCAL FACTORS
# =============================================================================
def parallel(u: LocalVector, v: LocalVector) -> bool:
    """Whether two local vectors agree up to a nonzero scalar.

    Compared by cross products against the first nonzero coordinate, so no
    division is needed.
    """
    if u.dim != v.dim or u.support != v.support:
        return False
    pivot = u.support_indices[0]
    a, b = u.amps[pivot], v.amps[pivot]
    return all(u.amps[i] * b == v.amps[i] * a for i in u.support_indices[1:])


def build_factor_index(states: StateSet, party: int) -> LocalFactorIndex:
    """Deduplicate the local factors of one party.

    Args:
        states: State set.
        party: 1-based party index.

    Returns:
        Distinct factors in first-seen order with back-references.

    Raises:
        InvalidArgumentError: If the party is out of range.
    """
    if not 1 <= party <= len(states.dims):
        raise InvalidArgumentError(f"Party {party} out of range 1..{len(states.dims)}")

    factors: list[LocalVector] = []
    by_support: dict[int, list[int]] = {}
    state_factor: list[int] = []
    for state in states.states:
        vector = state.factors[party - 1]
        bucket = by_support.setdefault(vector.support, [])
        found = next((i for i in bucket if parallel(factors[i], vector)), None)
        if found is None:
            found = len(factors)
            factors.append(vector)
            bucket.append(found)
        state_factor.append(found)

    factor_states: list[list[int]] = [[] for _ in factors]
    for position, fid in enumerate(state_factor):
        factor_states[fid].append(position)

    return LocalFactorIndex(
        party=party,
        factors=tuple(factors),
        state_factor=tuple(state_factor),
        factor_states=tuple(tuple(s) for s in factor_states),
    )


def _kill_option(
    index: LocalFactorIndex, fids: Sequence[int], rank: int, normal: LocalVector
) -> KillOption:
    killed = sorted(s for fid in fids for s in index.factor_states[fid])
    return KillOption(
        party=index.party,
        factor_ids=tuple(sorted(fids)),
        rank=rank,
        killed=tuple(killed),
        normal=normal,
    )


def enumerate_kill_options(
    states: StateSet, party: int, index: LocalFactorIndex | None = None
) -> list[KillOption]:
    """All maximal sets of a party's factors lying in one hyperplane.

    When the factors span at most a hyperplane there is a single option
    killing every state. Otherwise every maximal set is the trace of a
    hyperplane spanned by d - 1 independent factors; those are enumerated
    with incremental rank pruning and closed under membership.

    Args:
        states: State set.
        party: 1-based party index.
        index: Precomputed factor index of the party.

    Returns:
        Options ordered by their smallest factor ids.
    """
    if index is None:
        index = build_factor_index(states, party)
    dim = states.dims[party - 1]
    factors = index.factors

    total = exact_rank(factors)
    if total <= dim - 1:
        normal = nullspace_vector(factors, dim, party)
        return [_kill_option(index, range(len(factors)), total, normal)]

    closures: list[frozenset[int]] = []
    options: list[KillOption] = []

    def close(chosen: list[int]) -> None:
        if any(closure.issuperset(chosen) for closure in closures):
            return
        normal = nullspace_vector([factors[i] for i in chosen], dim, party)
        members = frozenset(
            i for i, f in enumerate(factors) if cyc_inner(f, normal).is_zero()
        )
        closures.append(members)
        options.append(_kill_option(index, sorted(members), dim - 1, normal))

    def extend(chosen: list[int], start: int) -> None:
        if len(chosen) == dim - 1:
            close(chosen)
            return
        for i in range(start, len(factors)):
            trial = [*chosen, i]
            if exact_rank([factors[j] for j in trial]) == len(trial):
                extend(trial, i + 1)

    extend([], 0)
    options.sort(key=lambda option: option.factor_ids)
    logger.debug(
        f"Party {party}: {len(factors)} distinct factors, "
        f"{len(options)} kill options"
    )
    return options


# =============================================================================
# COVER SEARCH
# =============================================================================
def _party_order(option_counts: Sequence[int], seed: int) -> list[int]:
    # Fail-first: fewest options first, seeded tie-break
    rng = random.Random(seed)
    keys = [(count, rng.random(), i) for i, count in enumerate(option_counts)]
    return [i for _, _, i in sorted(keys)]


def _search_cover(
    levels: Sequence[Sequence[KillOption]], full: int, budget: int
) -> tuple[list[KillOption] | None, int]:
    """Depth-first search for one option per level covering ``full``.

    Returns:
        The chosen options (None when no cover exists) and visited nodes.

    Raises:
        _BudgetExhaustedError: When more than ``budget`` nodes are visited.
    """
    reach = [0] * (len(levels) + 1)
    for depth in range(len(levels) - 1, -1, -1):
        union = 0
        for option in levels[depth]:
            union |= option.mask
        reach[depth] = reach[depth + 1] | union

    failed: list[list[int]] = [[] for _ in levels]
    chosen: list[KillOption] = []
    nodes = 0

    def visit(depth: int, covered: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _BudgetExhaustedError
        missing = full & ~covered
        if depth == len(levels):
            return not missing
        if missing & ~reach[depth]:
            return False
        if any(covered & ~seen == 0 for seen in failed[depth]):
            return False

        ranked = sorted(levels[depth], key=lambda o: -(o.mask & missing).bit_count())
        for option in ranked:
            chosen.append(option)
            if visit(depth + 1, covered | option.mask):
                return True
            chosen.pop()

        failed[depth] = [s for s in failed[depth] if s & ~covered] + [covered]
        return False

    found = visit(0, 0)
    return (list(chosen) if found else None), nodes


def certify_unextendible(
    states: StateSet,
    node_budget: int | None = None,
    option_filter: OptionFilter | None = None,
) -> UpbVerdict:
    """Decide whether an orthogonal product set is unextendible.

    Args:
        states: Pairwise orthogonal state set.
        node_budget: Search nodes before giving up; defaults to the
            configured NODE_BUDGET.
        option_filter: Keeps only the kill options it accepts, restricting
            the witnesses searched for.

    Returns:
        UPB, Extendible with an exactly verified witness, or
        Inconclusive-by-budget.

    Raises:
        NonOrthogonalError: If the set is not pairwise orthogonal.
        InvalidArgumentError: If the node budget is below 1.
        CertificationError: If a constructed witness fails verification.
    """
    report = check_pairwise_orthogonal(states, stop_at_first=True)
    if not report.orthogonal:
        v = report.violations[0]
        raise NonOrthogonalError(
            f"States {v.first_label} and {v.second_label} are not orthogonal"
        )

    budget = settings.NODE_BUDGET if node_budget is None else node_budget
    if budget < 1:
        raise InvalidArgumentError(f"Node budget must be at least 1, got {budget}")
    n = len(states.dims)
    per_party: list[list[KillOption]] = []
    for party in range(1, n + 1):
        options = enumerate_kill_options(states, party)
        if option_filter is not None:
            options = [o for o in options if option_filter(o)]
        per_party.append(options)
    counts = tuple(len(o) for o in per_party)
    inventory = tuple(tuple(o) for o in per_party)

    order = _party_order(counts, settings.SEED)
    full = (1 << len(states)) - 1
    try:
        cover, nodes = _search_cover([per_party[i] for i in order], full, budget)
    except _BudgetExhaustedError:
        logger.warning(f"Cover search exceeded the node budget of {budget}")
        return UpbVerdict(
            status=UpbStatus.INCONCLUSIVE,
            state_count=len(states),
            nodes=budget,
            budget=budget,
            options_per_party=counts,
            options=inventory,
            restricted=option_filter is not None,
        )

    if cover is None:
        logger.info(
            f"No product state extends the {len(states)} states ({nodes} nodes)"
        )
        return UpbVerdict(
            status=UpbStatus.UPB,
            state_count=len(states),
            nodes=nodes,
            budget=budget,
            options_per_party=counts,
            options=inventory,
            restricted=option_filter is not None,
        )

    chosen = tuple(sorted(cover, key=lambda o: o.party))
    witness = ProductState(
        factors=tuple(o.normal for o in chosen), label=StateLabel(name=WITNESS_NAME)
    )
    for member in states.states:
        if not state_inner(witness, member).is_zero():
            raise CertificationError(f"Witness is not orthogonal to {member.label}")

    logger.info(f"Found a product state orthogonal to all {len(states)} states")
    return UpbVerdict(
        status=UpbStatus.EXTENDIBLE,
        state_count=len(states),
        witness=witness,
        chosen=chosen,
        nodes=nodes,
        budget=budget,
        options_per_party=counts,
        options=inventory,
        restricted=option_filter is not None,
    )

