"""Floating-point backend using NumPy, for cross-checks only."""

import cmath

import numpy as np
from loguru import logger

from src.core.config import settings
from src.schemas.states import LocalVector
from src.schemas.states import ProductState


class FloatBackend:
    """Complex float evaluation of exact amplitudes.

    Zero decisions use an absolute tolerance; exact results always take
    precedence over this backend.
    """

    def __init__(self, tolerance: float | None = None) -> None:
        """Init float backend.

        Args:
            tolerance: Magnitude at or below which a value counts as zero.
                Defaults to the configured FLOAT_TOLERANCE.
        """
        if tolerance is None:
            tolerance = settings.FLOAT_TOLERANCE
        self.tolerance = tolerance
        self._arrays: dict[int, np.ndarray] = {}
        logger.debug(f"Float backend tolerance: {self.tolerance}")

    def array(self, vector: LocalVector) -> np.ndarray:
        """Complex array of a local vector, memoized per object."""
        key = id(vector)
        cached = self._arrays.get(key)
        if cached is None:
            roots = np.exp(2j * np.pi * np.arange(vector.order) / vector.order)
            cached = np.array(
                [
                    complex(np.dot(roots[: len(a.coeffs)], a.coeffs)) if a else 0j
                    for a in vector.amps
                ],
                dtype=np.complex128,
            )
            self._arrays[key] = cached
        return cached

    def overlap(self, first: ProductState, second: ProductState) -> complex:
        """<first|second> as a float, party by party."""
        value = 1 + 0j
        for u, v in zip(first.factors, second.factors, strict=True):
            value *= complex(np.vdot(self.array(u), self.array(v)))
            if abs(value) <= self.tolerance:
                return 0j
        return value

    def is_zero(self, value: complex) -> bool:
        """Zero decision under the tolerance."""
        return cmath.isclose(abs(value), 0.0, abs_tol=self.tolerance)
