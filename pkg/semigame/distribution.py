# Semigame - Exact Probability Vectors
# Distribution over the vertices of a digraph with exact rational weights

from fractions import Fraction
from typing import Any, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .exceptions import InputError
from .utilities.rational_utils import format_rational, to_fraction


class Distribution:
    """
    Exact probability vector indexed by vertex

    Weights are non-negative Fractions summing to exactly 1. When `allowed`
    is given, weight outside it is rejected.
    """

    __slots__ = ("_weights",)

    def __init__(self, weights: Sequence[Any], allowed: Optional[Iterable[int]] = None):
        values = tuple(to_fraction(w) for w in weights)
        if not values:
            raise InputError("Distribution needs at least one vertex")
        for v, w in enumerate(values):
            if w < 0:
                raise InputError(f"Negative probability {w} at vertex {v}")
        total = sum(values, Fraction(0))
        if total != 1:
            raise InputError(f"Probabilities sum to {total}, not 1")
        if allowed is not None:
            allowed_set = set(allowed)
            outside = [v for v, w in enumerate(values) if w and v not in allowed_set]
            if outside:
                raise InputError(f"Probability on vertices {outside} outside allowed set {sorted(allowed_set)}")
        self._weights: Tuple[Fraction, ...] = values

    @classmethod
    def point_mass(cls, k: int, v: int) -> "Distribution":
        if not 0 <= v < k:
            raise InputError(f"Vertex {v} out of range for {k} vertices")
        return cls([1 if u == v else 0 for u in range(k)])

    @classmethod
    def uniform_over(cls, k: int, vertices: Iterable[int]) -> "Distribution":
        chosen = sorted(set(vertices))
        if not chosen:
            raise InputError("Cannot spread probability over an empty vertex set")
        share = Fraction(1, len(chosen))
        return cls([share if v in chosen else 0 for v in range(k)])

    @classmethod
    def proportional(cls, counts: Sequence[int]) -> "Distribution":
        """Weights count_v / sum(counts)"""
        total = sum(counts)
        if total <= 0:
            raise InputError(f"Cannot normalize counts {list(counts)} with non-positive total")
        return cls([Fraction(c, total) for c in counts])

    @classmethod
    def from_list(cls, items: Sequence[str]) -> "Distribution":
        return cls([to_fraction(x) for x in items])

    @property
    def weights(self) -> Tuple[Fraction, ...]:
        return self._weights

    @property
    def k(self) -> int:
        return len(self._weights)

    def support(self) -> Tuple[int, ...]:
        return tuple(v for v, w in enumerate(self._weights) if w)

    def to_list(self) -> List[str]:
        return [format_rational(w) for w in self._weights]

    def as_floats(self) -> np.ndarray:
        return np.array([float(w) for w in self._weights], dtype=np.float64)

    def __getitem__(self, v: int) -> Fraction:
        return self._weights[v]

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self._weights)

    def __len__(self) -> int:
        return len(self._weights)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Distribution):
            return NotImplemented
        return self._weights == other._weights

    def __hash__(self) -> int:
        return hash(self._weights)

    def __repr__(self) -> str:
        return f"Distribution({self.to_list()})"
