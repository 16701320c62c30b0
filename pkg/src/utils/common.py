"""Common utility functions."""

from collections.abc import Sequence

from src.core.constants import JSON_SAFE_INT
from src.core.errors import InvalidDimensionsError


def json_int(value: int) -> int | str:
    """Encode an integer so it survives any JSON reader.

    Args:
        value: Integer to encode.

    Returns:
        The integer itself, or its decimal string beyond +-(2^53 - 1).

    Examples:
        >>> json_int(7)
        7
        >>> json_int(2**60)
        '1152921504606846976'
    """
    return value if -JSON_SAFE_INT <= value <= JSON_SAFE_INT else str(value)


def parse_json_int(value: object) -> int:
    """Decode an integer written by json_int.

    Args:
        value: JSON integer or decimal string.

    Returns:
        Parsed integer.

    Raises:
        ValueError: If the value is neither.
    """
    if isinstance(value, bool):
        raise ValueError(f"Expected integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        return int(value.strip())
    raise ValueError(f"Expected integer, got {value!r}")


def parse_dims(text: str) -> tuple[int, ...]:
    """Parse a comma-separated dimension list such as ``3,4,5``.

    Args:
        text: Command-line dimension string.

    Returns:
        Tuple of local dimensions.

    Raises:
        ValueError: If an entry is not an integer.
    """
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise ValueError("Dimension list cannot be empty")
    return tuple(int(p) for p in parts)


def validate_party_dims(dims: Sequence[int]) -> tuple[int, ...]:
    """Check dimensions the construction is defined for.

    Args:
        dims: Local dimensions d_1..d_N.

    Returns:
        The dimensions as a tuple.

    Raises:
        InvalidDimensionsError: If N is even or below 3, a dimension is
            below 3, or the dimensions are not nondecreasing.
    """
    values = tuple(int(d) for d in dims)
    n = len(values)
    if n < 3 or n % 2 == 0:
        raise InvalidDimensionsError(f"Party count must be odd and >= 3, got {n}")
    if min(values) < 3:
        raise InvalidDimensionsError(
            f"Every local dimension must be >= 3, got {values}"
        )
    if any(a > b for a, b in zip(values, values[1:], strict=False)):
        raise InvalidDimensionsError(f"Dimensions must be nondecreasing, got {values}")
    return values


def validate_party_count(n: int) -> int:
    """Check a party count is odd and at least 3.

    Raises:
        InvalidDimensionsError: If it is not.
    """
    if n < 3 or n % 2 == 0:
        raise InvalidDimensionsError(f"Party count must be odd and >= 3, got {n}")
    return n
