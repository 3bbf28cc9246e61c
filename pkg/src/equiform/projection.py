"""Axonometric view of E^7 in 3-space."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

import numpy as np

Vec3 = Tuple[float, float, float]


@dataclass(frozen=True)
class ProjectionMap:
    """Images of E_4..E_7; E_1, E_2, E_3 go to the standard basis of 3-space."""

    e4: Vec3 = (1, 1, 0)
    e5: Vec3 = (1, 0, 1)
    e6: Vec3 = (0, 1, 1)
    e7: Vec3 = (1, 1, 1)

    def matrix(self) -> np.ndarray:
        """The 3x7 matrix whose columns are the images of E_1..E_7."""
        cols = [(1, 0, 0), (0, 1, 0), (0, 0, 1), self.e4, self.e5, self.e6, self.e7]
        return np.array(cols, dtype=float).T

    def exact_image(self, v: Sequence) -> Tuple[Fraction, Fraction, Fraction]:
        cols = [(1, 0, 0), (0, 1, 0), (0, 0, 1), self.e4, self.e5, self.e6, self.e7]
        return tuple(sum(Fraction(c[r]) * Fraction(x) for c, x in zip(cols, v)) for r in range(3))


DEFAULT_MAP = ProjectionMap()


def axonometric_project(p, pmap: ProjectionMap = DEFAULT_MAP) -> np.ndarray:
    """Project a point (or an (..., 7) array of points) of E^7 to 3-space."""
    return np.asarray(p, dtype=float) @ pmap.matrix().T


def projected_translation(b_prime: Sequence, pmap: ProjectionMap = DEFAULT_MAP):
    """B' = (B'_1, B'_2, B'_3), the image of the translational velocity."""
    return pmap.exact_image(b_prime)
