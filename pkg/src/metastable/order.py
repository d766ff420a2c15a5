"""Directed sets presented as finite windows, their products, and samplings.

A :class:`DirectedWindow` is a finite, explicitly enumerated fragment of a
directed set together with its partial order and a chosen explicit
upper-bound operation (``join``).  Windows are truncations: every quantifier
in this library ("for every index", "for every sampling") ranges over the
window only.  A :class:`Sampling` assigns to each index a nonempty finite
subset of its up-set.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce
from typing import Callable, Iterable, Iterator, Mapping, Sequence

__all__ = [
    "DirectedWindow",
    "Sampling",
    "WindowError",
    "SamplingViolation",
    "make_omega_window",
    "make_ordinal_window",
    "make_custom_window",
    "product",
    "validate_sampling",
    "require_valid_sampling",
    "identity_sampling",
    "successor_sampling",
    "doubling_sampling",
    "random_sampling",
    "induced_sampling",
    "project_set",
]

OMEGA = "omega-window"
ORDINAL = "ordinal-window"
PRODUCT = "product-window"
CUSTOM = "custom"


class WindowError(ValueError):
    """Raised when a window or sampling is structurally invalid."""


class DirectedWindow:
    """Finite fragment of a directed set with order and explicit join.

    Instances are immutable.  Chain windows (``omega-window``,
    ``ordinal-window``) and product windows are valid by construction;
    custom windows are fully validated when built (reflexivity,
    antisymmetry, transitivity, and that ``join`` is an upper bound
    lying inside the window).
    """

    __slots__ = ("kind", "_elements", "_index", "_factors", "_leq", "_join")

    def __init__(self, kind, elements, factors=None, leq_matrix=None, join_table=None):
        self.kind = kind
        self._elements = tuple(elements)
        self._index = {e: p for p, e in enumerate(self._elements)}
        self._factors = factors
        self._leq = leq_matrix
        self._join = join_table
        if not self._elements:
            raise WindowError("window must be nonempty")
        if len(self._index) != len(self._elements):
            raise WindowError("duplicate window elements")

    # -- structure ---------------------------------------------------------

    @property
    def elements(self):
        """Elements in canonical enumeration order."""
        return self._elements

    @property
    def factors(self):
        """Factor windows of a product window, else None."""
        return self._factors

    def index(self, a):
        """Position of element ``a`` in enumeration order."""
        try:
            return self._index[a]
        except KeyError:
            raise WindowError(f"{a!r} is not an element of this window") from None

    def __len__(self):
        return len(self._elements)

    def __iter__(self):
        return iter(self._elements)

    def __contains__(self, a):
        return a in self._index

    def leq(self, a, b):
        """Whether ``a`` precedes (or equals) ``b`` in the window order."""
        if self.kind in (OMEGA, ORDINAL):
            self.index(a), self.index(b)
            return a <= b
        if self.kind == PRODUCT:
            d, e = self._factors
            return d.leq(a[0], b[0]) and e.leq(a[1], b[1])
        return self._leq[self.index(a)][self.index(b)]

    def join(self, a, b):
        """The chosen explicit upper bound of ``a`` and ``b``."""
        if self.kind in (OMEGA, ORDINAL):
            self.index(a), self.index(b)
            return max(a, b)
        if self.kind == PRODUCT:
            d, e = self._factors
            return (d.join(a[0], b[0]), e.join(a[1], b[1]))
        return self._elements[self._join[self.index(a)][self.index(b)]]

    def join_all(self, items):
        """Upper bound of a nonempty collection, by repeated join.

        Items are joined in enumeration order so the result is
        deterministic regardless of input ordering.
        """
        ordered = sorted(items, key=self.index)
        if not ordered:
            raise WindowError("join_all of empty collection")
        return reduce(self.join, ordered)

    def up_set(self, a):
        """All elements ``b`` with ``a`` <= ``b``, in enumeration order."""
        if self.kind in (OMEGA, ORDINAL):
            return self._elements[self.index(a):]
        return tuple(b for b in self._elements if self.leq(a, b))

    def strictly_above(self, a):
        """Elements strictly above ``a``, in enumeration order."""
        return tuple(b for b in self._elements if b != a and self.leq(a, b))

    def top(self):
        """The (unique) maximum element of the window, if one exists."""
        for b in self._elements:
            if all(self.leq(a, b) for a in self._elements):
                return b
        return None

    def is_chain(self):
        return all(
            self.leq(a, b) or self.leq(b, a)
            for a, b in itertools.combinations(self._elements, 2)
        )

    def validate(self):
        """Re-verify the partial-order and majorization invariants.

        Chain and product windows satisfy these by construction; this full
        check is O(n^3) and intended for custom windows and for tests.
        """
        els = self._elements
        for a in els:
            if not self.leq(a, a):
                raise WindowError(f"order not reflexive at {a!r}")
        for a, b in itertools.combinations(els, 2):
            if self.leq(a, b) and self.leq(b, a):
                raise WindowError(f"order not antisymmetric on {a!r}, {b!r}")
        for a, b, c in itertools.product(els, repeat=3):
            if self.leq(a, b) and self.leq(b, c) and not self.leq(a, c):
                raise WindowError(f"order not transitive on {a!r}, {b!r}, {c!r}")
        for a, b in itertools.product(els, repeat=2):
            j = self.join(a, b)
            if j not in self:
                raise WindowError(f"join({a!r},{b!r}) leaves the window")
            if not (self.leq(a, j) and self.leq(b, j)):
                raise WindowError(f"join({a!r},{b!r}) = {j!r} is not an upper bound")

    # -- equality is structural -------------------------------------------

    def _key(self):
        if self.kind in (OMEGA, ORDINAL):
            return (self.kind, len(self._elements))
        if self.kind == PRODUCT:
            return (self.kind, self._factors)
        return (self.kind, self._elements, self._leq, self._join)

    def __eq__(self, other):
        if not isinstance(other, DirectedWindow):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"DirectedWindow({self.kind}, n={len(self)})"


def make_omega_window(n):
    """Chain window 0 < 1 < ... < n-1 with join = max."""
    if n < 1:
        raise WindowError("omega window needs at least one element")
    return DirectedWindow(OMEGA, range(n))


def make_ordinal_window(n):
    """Finite encoding of an ordinal chain; order-isomorphic to an omega window."""
    if n < 1:
        raise WindowError("ordinal window needs at least one element")
    return DirectedWindow(ORDINAL, range(n))


def make_custom_window(elements, leq, join, kind=CUSTOM):
    """Build a fully validated window from explicit order data.

    ``leq`` is a predicate or a boolean matrix indexed by element position;
    ``join`` is a binary callable on elements or a matrix of element
    positions.  Construction fails unless the order is a partial order and
    ``join`` is an upper-bound operation closed over the window.
    """
    elements = tuple(elements)
    n = len(elements)
    pos = {e: p for p, e in enumerate(elements)}
    if callable(leq):
        leq_matrix = tuple(tuple(bool(leq(a, b)) for b in elements) for a in elements)
    else:
        leq_matrix = tuple(tuple(bool(v) for v in row) for row in leq)
        if len(leq_matrix) != n or any(len(r) != n for r in leq_matrix):
            raise WindowError("leq matrix shape mismatch")
    if callable(join):
        join_table = []
        for a in elements:
            row = []
            for b in elements:
                j = join(a, b)
                if j not in pos:
                    raise WindowError(f"join({a!r},{b!r}) leaves the window")
                row.append(pos[j])
            join_table.append(tuple(row))
        join_table = tuple(join_table)
    else:
        join_table = tuple(tuple(int(v) for v in row) for row in join)
        if len(join_table) != n or any(len(r) != n for r in join_table):
            raise WindowError("join table shape mismatch")
    w = DirectedWindow(kind, elements, leq_matrix=leq_matrix, join_table=join_table)
    w.validate()
    return w


def product(d, e):
    """Product window: pairs under the componentwise order and join."""
    elements = tuple(itertools.product(d.elements, e.elements))
    return DirectedWindow(PRODUCT, elements, factors=(d, e))


# -- samplings -------------------------------------------------------------


@dataclass(frozen=True)
class Sampling:
    """Assignment of a finite candidate set to every window element.

    ``assign`` is dense: one entry per window element, in enumeration
    order.  The constructor does not validate; use
    :func:`validate_sampling` / :func:`require_valid_sampling`.
    """

    window: DirectedWindow
    assign: tuple

    @classmethod
    def from_mapping(cls, window, mapping):
        return cls(window, tuple(frozenset(mapping[e]) for e in window.elements))

    @classmethod
    def from_function(cls, window, fn):
        return cls(window, tuple(frozenset(fn(e)) for e in window.elements))

    def at(self, element):
        """The candidate set eta_i for window element ``i``."""
        return self.assign[self.window.index(element)]

    def items(self):
        return zip(self.window.elements, self.assign)


@dataclass(frozen=True)
class SamplingViolation:
    element: object
    offender: object  # None for an empty assignment
    reason: str


def validate_sampling(s):
    """Check the sampling invariants; return a list of violations (empty = ok)."""
    w = s.window
    violations = []
    if len(s.assign) != len(w):
        violations.append(
            SamplingViolation(None, None, f"assign has {len(s.assign)} entries for a window of {len(w)}")
        )
        return violations
    for i, eta_i in s.items():
        if not eta_i:
            violations.append(SamplingViolation(i, None, "empty candidate set"))
            continue
        for j in eta_i:
            if j not in w:
                violations.append(SamplingViolation(i, j, "not a window element"))
            elif not w.leq(i, j):
                violations.append(SamplingViolation(i, j, "not in the up-set"))
    return violations


def require_valid_sampling(s):
    violations = validate_sampling(s)
    if violations:
        raise WindowError(f"invalid sampling: {violations[:3]}{'...' if len(violations) > 3 else ''}")
    return s


def identity_sampling(window):
    """eta_i = {i}."""
    return Sampling.from_function(window, lambda i: {i})


def successor_sampling(window):
    """On chains: eta_i = {i, i+1}, clipped at the top element."""
    els = window.elements
    n = len(els)
    return Sampling(window, tuple(frozenset({els[p], els[min(p + 1, n - 1)]}) for p in range(n)))


def doubling_sampling(window):
    """On chains: eta_i = {i, 2i}, clipped at the top element."""
    els = window.elements
    n = len(els)
    return Sampling(window, tuple(frozenset({els[p], els[min(2 * p, n - 1)]}) for p in range(n)))


def random_sampling(window, rng, max_size=3):
    """Random valid sampling: each eta_i a nonempty subset of the up-set of i."""
    assign = []
    for i in window.elements:
        ups = window.up_set(i)
        size = rng.randint(1, min(max_size, len(ups)))
        assign.append(frozenset(rng.sample(ups, size)))
    return Sampling(window, tuple(assign))


def induced_sampling(eta, d):
    """Sampling on product(d, d) induced via the explicit join.

    At a pair (i, j) the induced sampling is eta_{i v j} x eta_{i v j}.
    """
    require_valid_sampling(eta)
    if eta.window != d:
        raise WindowError("sampling does not live on the given window")
    p = product(d, d)
    assign = []
    for (i, j) in p.elements:
        block = eta.at(d.join(i, j))
        assign.append(frozenset(itertools.product(block, block)))
    return Sampling(p, tuple(assign))


def project_set(s, d):
    """Image of a set of pairs under the join: {i v j : (i, j) in s}."""
    out = set()
    for pair in s:
        try:
            i, j = pair
        except (TypeError, ValueError):
            raise WindowError(f"{pair!r} is not a pair") from None
        if i not in d or j not in d:
            raise WindowError(f"pair {pair!r} is outside the product window")
        out.add(d.join(i, j))
    return frozenset(out)
