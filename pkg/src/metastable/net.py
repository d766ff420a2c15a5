"""Metric spaces, nets over windows, and window-level Cauchy checks."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional

from .order import DirectedWindow, product

__all__ = [
    "MetricSpace",
    "Net",
    "SpaceError",
    "binary_space",
    "unit_interval_space",
    "half_line_space",
    "euclidean_space",
    "table_space",
    "self_distance",
    "mutual_distance",
    "distance_to_point",
    "window_cauchy_index",
]

BINARY = "binary-discrete"
UNIT_INTERVAL = "unit-interval"
HALF_LINE = "half-line"
EUCLIDEAN = "euclidean"
TABLE = "custom-table"


class SpaceError(ValueError):
    """Raised for points outside a space or malformed distance tables."""


@dataclass(frozen=True)
class MetricSpace:
    """One of a small family of concrete metric spaces.

    Kinds: the two-point discrete space {0, 1}; the unit interval and the
    nonnegative half-line with |x - y|; Euclidean R^d; or a finite space
    given by a symbol list and a distance table (checked for symmetry,
    zero diagonal, and the triangle inequality at construction).
    """

    kind: str
    dim: Optional[int] = None
    symbols: Optional[tuple] = None
    table: Optional[tuple] = None
    diameter_bound: Optional[float] = None

    def contains(self, x):
        if self.kind == BINARY:
            return x in (0, 1)
        if self.kind == UNIT_INTERVAL:
            return isinstance(x, (int, float)) and 0.0 <= x <= 1.0
        if self.kind == HALF_LINE:
            return isinstance(x, (int, float)) and x >= 0.0
        if self.kind == EUCLIDEAN:
            return isinstance(x, tuple) and len(x) == self.dim
        return x in self.symbols

    def require(self, x):
        if not self.contains(x):
            raise SpaceError(f"{x!r} is not a point of {self.kind} space")
        return x

    def dist(self, x, y):
        self.require(x)
        self.require(y)
        if self.kind == BINARY:
            return 0.0 if x == y else 1.0
        if self.kind in (UNIT_INTERVAL, HALF_LINE):
            return abs(x - y)
        if self.kind == EUCLIDEAN:
            return math.dist(x, y)
        i = self.symbols.index(x)
        j = self.symbols.index(y)
        return self.table[i][j]


def binary_space():
    return MetricSpace(BINARY, diameter_bound=1.0)


def unit_interval_space():
    return MetricSpace(UNIT_INTERVAL, diameter_bound=1.0)


def half_line_space():
    return MetricSpace(HALF_LINE)


def euclidean_space(dim):
    if dim < 1:
        raise SpaceError("dimension must be positive")
    return MetricSpace(EUCLIDEAN, dim=dim)


def table_space(symbols, table):
    """Finite metric space from an explicit distance table, fully checked."""
    symbols = tuple(symbols)
    table = tuple(tuple(float(v) for v in row) for row in table)
    n = len(symbols)
    if len(table) != n or any(len(row) != n for row in table):
        raise SpaceError("distance table shape mismatch")
    for i in range(n):
        if table[i][i] != 0.0:
            raise SpaceError(f"nonzero self-distance at {symbols[i]!r}")
        for j in range(n):
            if table[i][j] < 0.0:
                raise SpaceError("negative distance")
            if table[i][j] != table[j][i]:
                raise SpaceError(f"asymmetric distances at {symbols[i]!r}, {symbols[j]!r}")
    for i, j, k in itertools.product(range(n), repeat=3):
        if table[i][k] > table[i][j] + table[j][k]:
            raise SpaceError(
                f"triangle inequality fails at {symbols[i]!r}, {symbols[j]!r}, {symbols[k]!r}"
            )
    bound = max((v for row in table for v in row), default=0.0)
    return MetricSpace(TABLE, symbols=symbols, table=table, diameter_bound=bound)


@dataclass(frozen=True)
class Net:
    """Total map from window elements to points of a metric space.

    ``values`` follows the window's enumeration order.  ``target`` is an
    optional declared limit point, required only for pointed verification.
    """

    window: DirectedWindow
    space: MetricSpace
    values: tuple
    target: object = None

    def __post_init__(self):
        if len(self.values) != len(self.window):
            raise SpaceError(
                f"net has {len(self.values)} values for a window of {len(self.window)}"
            )
        for v in self.values:
            self.space.require(v)
        if self.target is not None:
            self.space.require(self.target)

    def value(self, i):
        return self.values[self.window.index(i)]

    def dist(self, i, j):
        return self.space.dist(self.value(i), self.value(j))


def _distance_space(space):
    # Distances live in [0, 1] exactly when the source space is 1-bounded.
    if space.diameter_bound is not None and space.diameter_bound <= 1.0:
        return unit_interval_space()
    return half_line_space()


def mutual_distance(a, b):
    """Real net of pairwise distances d(a_i, b_j) on product(window_a, window_b)."""
    if a.space != b.space:
        raise SpaceError("mutual distance requires a shared metric space")
    p = product(a.window, b.window)
    values = tuple(a.space.dist(a.value(i), b.value(j)) for (i, j) in p.elements)
    return Net(p, _distance_space(a.space), values, target=None)


def self_distance(a):
    """Self-distance net: value at (i, j) is d(a_i, a_j), with target 0.

    The net converges to 0 exactly when ``a`` is Cauchy, so 0 is the
    canonical pointed target.
    """
    p = product(a.window, a.window)
    values = tuple(a.dist(i, j) for (i, j) in p.elements)
    return Net(p, _distance_space(a.space), values, target=0.0)


def distance_to_point(a, b):
    """Real net of distances from a fixed point: value at i is d(a_i, b)."""
    a.space.require(b)
    values = tuple(a.space.dist(v, b) for v in a.values)
    return Net(a.window, _distance_space(a.space), values, target=0.0)


def window_cauchy_index(a, eps):
    """Smallest index i0 with d(a_j, a_k) <= eps for all j, k above i0.

    Only indices with a non-trivial tail count: an element whose up-set is
    just itself (the window top) would qualify vacuously for every net,
    which carries no stability evidence on a truncation.  Returns None
    when no window element has the tail property.  Comparisons are exact
    <= on binary64; there is no tolerance slack.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    w = a.window
    if w.kind in ("omega-window", "ordinal-window"):
        # Tails are nested on a chain: fold the max pairwise distance in
        # from the top, O(n^2) overall instead of O(n^3).
        n = len(w)
        values = a.values
        dist = a.space.dist
        tail_max = [0.0] * n
        for p in range(n - 2, -1, -1):
            worst = max(dist(values[p], values[q]) for q in range(p + 1, n))
            tail_max[p] = max(tail_max[p + 1], worst)
        for p in range(n - 1):
            if tail_max[p] <= eps:
                return w.elements[p]
        return None
    for i0 in w.elements:
        tail = w.up_set(i0)
        if len(tail) < 2:
            continue
        if all(a.dist(j, k) <= eps for j, k in itertools.combinations_with_replacement(tail, 2)):
            return i0
    return None
