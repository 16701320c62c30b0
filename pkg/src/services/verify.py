"""Exact linear algebra over the cyclotomic integers."""

import math
from collections.abc import Sequence

from loguru import logger

from src.adapters.numeric import FloatBackend
from src.core.errors import InvalidArgumentError
from src.core.errors import PreconditionError
from src.schemas.reports import OrthoReport
from src.schemas.reports import Violation
from src.schemas.states import LocalVector
from src.schemas.states import ProductState
from src.schemas.states import StateSet
from src.services.states import cyc_inner
from src.utils.cyclotomic import CycNum


# =============================================================================
# ORTHOGONALITY
# =============================================================================
def state_inner(first: ProductState, second: ProductState) -> CycNum:
    """<first|second> of two product states, computed party by party.

    Parties are visited by ascending support overlap; a party with
    disjoint supports or an exact zero factor ends the product at once.
    """
    overlaps = []
    for u, v in zip(first.factors, second.factors, strict=True):
        common = (u.support & v.support).bit_count()
        if not common:
            return CycNum.zero(u.order)
        overlaps.append((common, u.party, u, v))
    overlaps.sort(key=lambda item: (item[0], item[1]))

    value: CycNum | None = None
    for _, _, u, v in overlaps:
        factor = cyc_inner(u, v)
        if factor.is_zero():
            return factor
        value = factor if value is None else value * factor
    return value if value is not None else CycNum.from_int(1, 1)


def check_pairwise_orthogonal(
    states: StateSet, stop_at_first: bool = False
) -> OrthoReport:
    """Exhaustive pairwise orthogonality sweep with exact zero tests.

    Args:
        states: State set.
        stop_at_first: Return as soon as one violation is found.

    Returns:
        Report with every nonzero pair.
    """
    members = states.states
    total = len(members) * (len(members) - 1) // 2
    supports = [tuple(f.support for f in s.factors) for s in members]
    violations = []

    for i in range(len(members)):
        si = supports[i]
        for j in range(i + 1, len(members)):
            if any(not (a & b) for a, b in zip(si, supports[j], strict=True)):
                continue
            value = state_inner(members[i], members[j])
            if value.is_zero():
                continue
            violations.append(
                Violation(
                    first=i,
                    second=j,
                    first_label=members[i].label,
                    second_label=members[j].label,
                    overlap=value,
                    magnitude=abs(value.to_complex()),
                )
            )
            if stop_at_first:
                return OrthoReport(total_pairs=total, violations=tuple(violations))

    logger.debug(f"Orthogonality sweep: {total} pairs, {len(violations)} violations")
    return OrthoReport(total_pairs=total, violations=tuple(violations))


def check_orthogonal_float(
    states: StateSet, tolerance: float | None = None
) -> OrthoReport:
    """Float cross-check of the pairwise sweep.

    Args:
        states: State set.
        tolerance: Zero threshold; defaults to the configured tolerance.

    Returns:
        Report whose violations carry magnitudes only.
    """
    backend = FloatBackend(tolerance)
    members = states.states
    total = len(members) * (len(members) - 1) // 2
    violations = []
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            value = backend.overlap(members[i], members[j])
            if backend.is_zero(value):
                continue
            violations.append(
                Violation(
                    first=i,
                    second=j,
                    first_label=members[i].label,
                    second_label=members[j].label,
                    magnitude=abs(value),
                )
            )
    return OrthoReport(total_pairs=total, violations=tuple(violations), backend="float")


def check_completeness(states: StateSet, dims: Sequence[int] | None = None) -> bool:
    """Whether an orthogonal set is a basis: its size is d_1...d_N.

    Args:
        states: State set.
        dims: Dimensions to compare against; defaults to the set's own.

    Returns:
        True iff the set is orthogonal with full cardinality.

    Raises:
        PreconditionError: If the set is not pairwise orthogonal.
    """
    if not states.states:
        return False
    if not check_pairwise_orthogonal(states, stop_at_first=True).orthogonal:
        raise PreconditionError("Completeness needs a pairwise orthogonal set")
    return len(states) == math.prod(dims or states.dims)


# =============================================================================
# RANK AND DETERMINANTS
# =============================================================================
def _common_rows(vectors: Sequence[LocalVector]) -> list[list[CycNum]]:
    if not vectors:
        return []
    party, dim = vectors[0].party, vectors[0].dim
    if any(v.party != party or v.dim != dim for v in vectors):
        raise InvalidArgumentError("Rank needs vectors of one party and dimension")
    order = math.lcm(*(v.order for v in vectors))
    return [[a.lift(order) for a in v.amps] for v in vectors]


def _bareiss(matrix: list[list[CycNum]], ncols: int) -> tuple[int, int]:
    # Fraction-free elimination in place with column skipping.
    # Returns (rank, sign of the row permutation).
    rows = len(matrix)
    if not rows:
        return 0, 1
    order = matrix[0][0].order if ncols else 1
    previous = CycNum.from_int(1, order)
    rank = 0
    sign = 1
    for col in range(ncols):
        if rank == rows:
            break
        pivot = next((r for r in range(rank, rows) if matrix[r][col]), None)
        if pivot is None:
            continue
        if pivot != rank:
            matrix[rank], matrix[pivot] = matrix[pivot], matrix[rank]
            sign = -sign
        head = matrix[rank]
        p = head[col]
        for r in range(rank + 1, rows):
            row = matrix[r]
            lead = row[col]
            for c in range(col + 1, ncols):
                value = p * row[c] - lead * head[c]
                row[c] = value.exact_div(previous) if value else value
            row[col] = CycNum.zero(order)
        previous = p
        rank += 1
    return rank, sign


def exact_rank(vectors: Sequence[LocalVector]) -> int:
    """Rank over the cyclotomic field, by fraction-free elimination.

    Raises:
        InvalidArgumentError: If the vectors belong to different spaces.
    """
    rows = _common_rows(vectors)
    if not rows:
        return 0
    rank, _ = _bareiss(rows, len(rows[0]))
    return rank


def determinant(matrix: Sequence[Sequence[CycNum]]) -> CycNum:
    """Bareiss determinant of a square matrix of cyclotomic integers.

    Raises:
        InvalidArgumentError: If the matrix is not square.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise InvalidArgumentError("Determinant needs a square matrix")
    if n == 0:
        return CycNum.from_int(1, 1)
    order = math.lcm(*(a.order for row in matrix for a in row))
    work = [[a.lift(order) for a in row] for row in matrix]
    rank, sign = _bareiss(work, n)
    if rank < n:
        return CycNum.zero(order)
    return work[n - 1][n - 1] * sign


def nullspace_vector(
    vectors: Sequence[LocalVector], dim: int, party: int | None = None
) -> LocalVector:
    """Nonzero w with <f|w> = 0 for every given f.

    The rows conj(f) are completed to a rank dim-1 system with unit rows,
    and w is the signed cofactor vector of that system, divided by the
    content of its integer coefficients.

    Args:
        vectors: Vectors to be orthogonal to, of rank at most dim - 1.
        dim: Local dimension.
        party: Party of the result; defaults to that of the vectors.

    Returns:
        Exact normal vector.

    Raises:
        InvalidArgumentError: If the vectors span the whole space.
    """
    if party is None:
        party = vectors[0].party if vectors else 1
    order = math.lcm(1, *(v.order for v in vectors))
    zero, one = CycNum.zero(order), CycNum.from_int(1, order)

    basis: list[list[CycNum]] = []
    candidates = [[a.lift(order).conjugate() for a in v.amps] for v in vectors]
    candidates += [[one if c == r else zero for c in range(dim)] for r in range(dim)]
    for row in candidates:
        if len(basis) == dim - 1:
            break
        trial = [list(r) for r in (*basis, row)]
        if _bareiss(trial, dim)[0] == len(basis) + 1:
            basis.append(row)

    spanning = any(
        _bareiss([list(r) for r in (*basis, row)], dim)[0] == dim
        for row in candidates[: len(vectors)]
    )
    if len(basis) < dim - 1 or spanning:
        raise InvalidArgumentError(f"Vectors span the whole {dim}-dimensional space")

    amps = []
    for j in range(dim):
        minor = [[row[c] for c in range(dim) if c != j] for row in basis]
        value = determinant(minor) if minor else one
        amps.append(value if j % 2 == 0 else -value)

    content = math.gcd(*(c for a in amps for c in a.coeffs))
    if content > 1:
        amps = [a.exact_div(CycNum.from_int(content, order)) for a in amps]
    return LocalVector(party=party, amps=tuple(a.lift(order) for a in amps))
