"""Exact arithmetic over the cyclotomic integers Z[w_L]."""

import cmath
import math
from collections.abc import Iterable
from collections.abc import Mapping
from fractions import Fraction
from functools import lru_cache
from typing import Any

import sympy

from src.core.config import settings
from src.core.errors import InvalidArgumentError
from src.utils.common import json_int
from src.utils.common import parse_json_int


class CyclotomicRing:
    """Reduction context for Z[w_L] = Z[x] / Phi_L(x).

    Attributes:
        order: The root-of-unity order L.
        degree: Euler phi(L), the length of a reduced coefficient vector.
        modulus: Coefficients of the monic cyclotomic polynomial, low to high.
        powers: Reduced coefficient vector of x^e for every e in [0, L).
        units: Exponents t coprime to L (the Galois group).
        trace_weights: Tr(w_L^e) / phi(L) for every reduced exponent e, the
            same for a value at any order it is written in.
    """

    def __init__(self, order: int) -> None:
        """Build the reduction tables for one order.

        Args:
            order: Root-of-unity order L >= 1.
        """
        x = sympy.Symbol("x")
        poly = sympy.Poly(sympy.cyclotomic_poly(order, x), x)

        self.order = order
        self.modulus = tuple(int(c) for c in reversed(poly.all_coeffs()))
        self.degree = len(self.modulus) - 1
        self.units = tuple(t for t in range(1, order + 1) if math.gcd(t, order) == 1)

        powers = []
        current = [1] + [0] * (self.degree - 1)
        for _ in range(order):
            powers.append(tuple(current))
            # Multiply by x and fold the overflow term back with the modulus
            shifted = [0, *current]
            top = shifted.pop()
            for j in range(self.degree):
                shifted[j] -= top * self.modulus[j]
            current = shifted
        self.powers = tuple(powers)
        self.trace_weights = tuple(
            _trace_weight(order // math.gcd(e, order)) for e in range(self.degree)
        )

    def reduce(
        self, raw: Mapping[int, int] | Iterable[tuple[int, int]]
    ) -> tuple[int, ...]:
        """Reduce sum c_e x^e (any integer exponents) modulo Phi_L.

        Args:
            raw: Exponent to coefficient pairs.

        Returns:
            Reduced coefficient tuple with trailing zeros stripped.
        """
        items = raw.items() if isinstance(raw, Mapping) else raw
        acc = [0] * self.degree
        for exponent, coeff in items:
            if not coeff:
                continue
            exponent %= self.order
            if exponent < self.degree:
                acc[exponent] += coeff
                continue
            for j, p in enumerate(self.powers[exponent]):
                if p:
                    acc[j] += coeff * p
        return _strip(acc)


def _trace_weight(m: int) -> Fraction:
    # Ramanujan sum over phi(L): mu(m) / phi(m) with m = L / gcd(e, L)
    factors = sympy.factorint(m)
    if any(e > 1 for e in factors.values()):
        return Fraction(0)
    return Fraction((-1) ** len(factors), math.prod(int(p) - 1 for p in factors))


@lru_cache(maxsize=64)
def get_ring(order: int) -> CyclotomicRing:
    """Get the cached reduction context for an order.

    Args:
        order: Root-of-unity order L.

    Returns:
        Shared CyclotomicRing instance.

    Raises:
        InvalidArgumentError: If the order is not positive.
    """
    if order < 1:
        raise InvalidArgumentError(f"Cyclotomic order must be positive, got {order}")
    return CyclotomicRing(order)


def _strip(values: list[int]) -> tuple[int, ...]:
    end = len(values)
    while end and not values[end - 1]:
        end -= 1
    return tuple(values[:end])


class CycNum:
    """Exact element of Z[w_L], stored reduced modulo Phi_L.

    The value is zero iff the reduced coefficient vector is empty, so
    every zero test is exact.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable[int] = ()) -> None:
        """Create a number from coefficients of w_L^0, w_L^1, ...

        Coefficients may have any length; they are reduced here.

        Args:
            order: Root-of-unity order L.
            coeffs: Integer coefficients indexed by exponent.
        """
        ring = get_ring(order)
        values = [int(c) for c in coeffs]
        self.order = order
        if len(values) <= ring.degree:
            self.coeffs = _strip(values)
        else:
            self.coeffs = ring.reduce(enumerate(values))

    @classmethod
    def _raw(cls, order: int, coeffs: tuple[int, ...]) -> "CycNum":
        # Trusted constructor for already reduced, stripped coefficients
        obj = cls.__new__(cls)
        obj.order = order
        obj.coeffs = coeffs
        return obj

    @classmethod
    def zero(cls, order: int) -> "CycNum":
        """Zero of Z[w_L]."""
        return cls._raw(order, ())

    @classmethod
    def from_int(cls, value: int, order: int) -> "CycNum":
        """Embed an integer."""
        return cls._raw(order, (value,) if value else ())

    @classmethod
    def root(cls, exponent: int, order: int) -> "CycNum":
        """The root of unity w_L^exponent."""
        ring = get_ring(order)
        return cls._raw(order, _strip(list(ring.powers[exponent % order])))

    # -------------------------------------------------------------------------
    # arithmetic
    # -------------------------------------------------------------------------
    def _coerce(self, other: Any) -> tuple["CycNum", "CycNum"] | None:
        if isinstance(other, int):
            return self, CycNum.from_int(other, self.order)
        if not isinstance(other, CycNum):
            return None
        if other.order == self.order:
            return self, other
        common = math.lcm(self.order, other.order)
        return self.lift(common), other.lift(common)

    def lift(self, order: int) -> "CycNum":
        """Re-express the value in Z[w_M] for a multiple M of the order.

        Args:
            order: Target order, a multiple of the current one.

        Returns:
            Same value with order M.

        Raises:
            InvalidArgumentError: If M is not a multiple of L.
        """
        if order == self.order:
            return self
        if order % self.order:
            raise InvalidArgumentError(
                f"Cannot lift order {self.order} to non-multiple {order}"
            )
        step = order // self.order
        ring = get_ring(order)
        return CycNum._raw(
            order, ring.reduce((j * step, c) for j, c in enumerate(self.coeffs))
        )

    def __add__(self, other: Any) -> "CycNum":
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        size = max(len(a.coeffs), len(b.coeffs))
        values = [0] * size
        for j, c in enumerate(a.coeffs):
            values[j] += c
        for j, c in enumerate(b.coeffs):
            values[j] += c
        return CycNum._raw(a.order, _strip(values))

    __radd__ = __add__

    def __neg__(self) -> "CycNum":
        return CycNum._raw(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other: Any) -> "CycNum":
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other: Any) -> "CycNum":
        return (-self) + other

    def __mul__(self, other: Any) -> "CycNum":
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        if not a.coeffs or not b.coeffs:
            return CycNum._raw(a.order, ())
        ring = get_ring(a.order)
        if ring.degree == 1:
            return CycNum._raw(a.order, _strip([a.coeffs[0] * b.coeffs[0]]))
        conv: dict[int, int] = {}
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                if y:
                    conv[i + j] = conv.get(i + j, 0) + x * y
        return CycNum._raw(a.order, ring.reduce(conv))

    __rmul__ = __mul__

    def galois(self, t: int) -> "CycNum":
        """Apply the automorphism w_L -> w_L^t (t coprime to L)."""
        ring = get_ring(self.order)
        return CycNum._raw(
            self.order, ring.reduce((j * t, c) for j, c in enumerate(self.coeffs))
        )

    def conjugate(self) -> "CycNum":
        """Complex conjugate: exponent j maps to L - j."""
        if get_ring(self.order).degree == 1:
            return self
        return self.galois(-1)

    def norm(self) -> int:
        """Field norm: product of all Galois conjugates, an integer."""
        ring = get_ring(self.order)
        product = CycNum.from_int(1, self.order)
        for t in ring.units:
            product = product * self.galois(t)
        return product.coeffs[0] if product.coeffs else 0

    def exact_div(self, other: "CycNum") -> "CycNum":
        """Divide when the quotient is known to be a cyclotomic integer.

        Uses a / b = a * prod_{t != 1} sigma_t(b) / N(b).

        Args:
            other: Nonzero divisor.

        Returns:
            The exact quotient.

        Raises:
            ZeroDivisionError: If the divisor is zero.
            ArithmeticError: If the quotient is not integral.
        """
        pair = self._coerce(other)
        if pair is None:
            raise TypeError(f"Cannot divide CycNum by {type(other).__name__}")
        a, b = pair
        if not b.coeffs:
            raise ZeroDivisionError("CycNum division by zero")
        if len(b.coeffs) == 1:
            divisor = b.coeffs[0]
            numerator = a
        else:
            ring = get_ring(a.order)
            cofactor = CycNum.from_int(1, a.order)
            for t in ring.units:
                if t % a.order != 1 % a.order:
                    cofactor = cofactor * b.galois(t)
            numerator = a * cofactor
            divisor = (b * cofactor).coeffs[0]
        if any(c % divisor for c in numerator.coeffs):
            raise ArithmeticError(f"{a!r} is not divisible by {b!r}")
        return CycNum._raw(a.order, tuple(c // divisor for c in numerator.coeffs))

    # -------------------------------------------------------------------------
    # comparison and conversion
    # -------------------------------------------------------------------------
    def is_zero(self) -> bool:
        """Exact zero test."""
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.coeffs == ((other,) if other else ())
        if not isinstance(other, CycNum):
            return NotImplemented
        if other.order == self.order:
            return self.coeffs == other.coeffs
        pair = self._coerce(other)
        return pair is not None and pair[0].coeffs == pair[1].coeffs

    def __hash__(self) -> int:
        # The normalized trace does not depend on the order, and an integer
        # hashes like the int itself
        if len(self.coeffs) <= 1:
            return hash(self.coeffs[0] if self.coeffs else 0)
        weights = get_ring(self.order).trace_weights
        return hash(sum(c * w for c, w in zip(self.coeffs, weights, strict=False)))

    def to_int(self) -> int | None:
        """Integer value if the number is rational, else None."""
        if not self.coeffs:
            return 0
        if len(self.coeffs) == 1:
            return self.coeffs[0]
        return None

    def to_complex(self) -> complex:
        """Floating-point value, for cross-checks only."""
        return sum(
            (
                c * cmath.exp(2j * cmath.pi * k / self.order)
                for k, c in enumerate(self.coeffs)
            ),
            start=0j,
        )

    def to_json(self) -> dict[str, Any]:
        """JSON form {order, coeffs}, big coefficients as strings."""
        return {"order": self.order, "coeffs": [json_int(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: Any) -> "CycNum":
        """Parse the JSON form written by to_json.

        Args:
            data: Mapping with order and coeffs, or a bare integer.

        Returns:
            Parsed number.

        Raises:
            ValueError: If the payload is not a valid amplitude.
        """
        if isinstance(data, CycNum):
            return data
        if isinstance(data, int) and not isinstance(data, bool):
            return cls.from_int(data, 1)
        if not isinstance(data, Mapping) or set(data) != {"order", "coeffs"}:
            raise ValueError(f"Amplitude must be {{order, coeffs}}, got {data!r}")
        order = parse_json_int(data["order"])
        if order < 1:
            raise ValueError(f"Amplitude order must be positive, got {order}")
        if order > settings.MAX_AMPLITUDE_ORDER:
            raise ValueError(
                f"Amplitude order {order} exceeds {settings.MAX_AMPLITUDE_ORDER}"
            )
        return cls(order, [parse_json_int(c) for c in data["coeffs"]])

    def __repr__(self) -> str:
        terms = [f"{c}*w{self.order}^{k}" for k, c in enumerate(self.coeffs) if c]
        return f"CycNum({' + '.join(terms) or '0'})"
