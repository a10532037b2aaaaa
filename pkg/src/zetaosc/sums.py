"""Deterministic compensated reductions.

Every reduction whose length depends on a table size or a sampling budget
goes through these helpers so that results are reproducible bit-for-bit
across runs and across chunked/streamed evaluation.  `math.fsum` is exact
for float inputs, so a sum of chunk partials equals the flat sum exactly,
which is what makes chunked streaming safe.
"""

from __future__ import annotations

import math
from typing import Iterable

import numpy as np


def csum(values) -> float:
    """Exact (correctly rounded) sum of a 1-d array or iterable of floats."""
    arr = np.asarray(values, dtype=float)
    return math.fsum(arr.ravel().tolist())


def cdot(a, b) -> float:
    """Compensated dot product in ascending index order."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return math.fsum((a * b).tolist())


class StreamingSum:
    """Accumulates chunk partial sums; total is exact regardless of chunking."""

    def __init__(self) -> None:
        self._partials: list[float] = []
        self.count = 0

    def add_chunk(self, values) -> None:
        arr = np.asarray(values, dtype=float)
        self._partials.append(math.fsum(arr.tolist()))
        self.count += arr.size

    @property
    def total(self) -> float:
        return math.fsum(self._partials)

    @property
    def mean(self) -> float:
        if self.count == 0:
            raise ValueError("empty streaming sum")
        return self.total / self.count


def prefix_sum(values) -> np.ndarray:
    """Cumulative sum carried in extended precision, returned as float64.

    Used for the big arithmetic prefix tables (psi, weighted psi) where a
    plain float64 cumsum would let rounding drift grow with the table.
    The sequential order is fixed, so the output is deterministic.
    """
    acc = np.cumsum(np.asarray(values, dtype=np.longdouble))
    return acc.astype(float)
