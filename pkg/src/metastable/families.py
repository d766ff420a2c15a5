"""The canonical example families of binary nets and their certificates.

Four families over a window:

* ``B``: non-increasing {0,1}-valued nets.  Admits a two-element uniform
  rate per sampling (:func:`rate_B`) that is independent of the tolerance.
* ``B0``: B minus the constant-1 net; every member is eventually zero, yet
  no uniform *pointed* rate near 0 exists.
* ``C``: all eventually-zero {0,1}-valued nets.  Not uniformly metastable
  at all; :func:`refute_C` produces a replayable counterexample for any
  candidate set with room above it.
* ``D``: one net per cutoff alpha on a chain, zero at even indices up to
  alpha and one elsewhere.  All members converge to 1 but no pointed
  uniform rate exists (:func:`refute_D_pointed`).

:func:`paracompact_nets` instantiates, on a finite discrete point set, the
bump-function construction whose per-point iterate sequences reproduce the
D-pattern.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .net import Net, binary_space, unit_interval_space
from .order import DirectedWindow, Sampling, WindowError, identity_sampling, successor_sampling
from .meta import RefutationCertificate

__all__ = [
    "FamilySpec",
    "FamilyError",
    "enumerate_family",
    "rate_B",
    "refute_C",
    "refute_D_pointed",
    "paracompact_nets",
    "closed_form_refutation",
    "BRUTE_FORCE_CAP",
]

#: Largest non-chain window brute-force family enumeration will attempt.
BRUTE_FORCE_CAP = 16

TAGS = ("B", "B0", "C", "D", "paracompact")


class FamilyError(ValueError):
    """Raised for invalid family parameters or windows too small to refute."""


@dataclass(frozen=True)
class FamilySpec:
    """A family tag plus the window (and tag-specific parameters) it lives on."""

    tag: str
    window: DirectedWindow
    parameters: Mapping = field(default_factory=dict)

    def __post_init__(self):
        if self.tag not in TAGS:
            raise FamilyError(f"unknown family tag {self.tag!r}")


def _is_chain(window):
    return window.kind in ("omega-window", "ordinal-window") or window.is_chain()


def _threshold_net(window, cutoff):
    # 1 on the first `cutoff` chain positions, 0 after; target is the tail value.
    n = len(window)
    values = tuple(1 if p < cutoff else 0 for p in range(n))
    return Net(window, binary_space(), values, target=1 if cutoff == n else 0)


def _nonincreasing(window, values):
    pos = {e: p for p, e in enumerate(window.elements)}
    return all(
        values[pos[i]] >= values[pos[j]]
        for i, j in itertools.permutations(window.elements, 2)
        if window.leq(i, j)
    )


def _eventually_zero(window, values):
    pos = {e: p for p, e in enumerate(window.elements)}
    for i in window.elements:
        if all(values[pos[j]] == 0 for j in window.up_set(i)):
            return True
    return False


def d_member(window, alpha):
    """The cutoff-alpha chain net: 0 at even indices <= alpha, 1 elsewhere.

    Index 0 counts as even.  Every value above alpha is 1, so the member
    converges to 1 within the window; its declared target is 1.
    """
    if not _is_chain(window):
        raise FamilyError("family D needs a chain window")
    n = len(window)
    if not 0 <= alpha < n:
        raise FamilyError(f"alpha={alpha} outside window of size {n}")
    values = tuple(0 if (i <= alpha and i % 2 == 0) else 1 for i in range(n))
    return Net(window, binary_space(), values, target=1)


def enumerate_family(spec):
    """Yield exactly the members of the tagged family on the spec's window.

    Chain windows use closed-form enumerations; other windows fall back to
    filtering all binary assignments, capped at :data:`BRUTE_FORCE_CAP`
    elements.  Each yielded member is re-checked against its family
    invariant.
    """
    window = spec.window
    tag = spec.tag
    if tag == "paracompact":
        n_points = spec.parameters.get("n_points", len(window))
        yield from paracompact_nets(n_points, len(window))
        return
    if tag == "D":
        if not _is_chain(window):
            raise FamilyError("family D needs a chain window")
        alphas = spec.parameters.get("alphas", range(len(window)))
        for alpha in alphas:
            yield d_member(window, alpha)
        return

    chain = _is_chain(window)
    if chain:
        n = len(window)
        if tag in ("B", "B0"):
            cutoffs = range(n, -1, -1) if tag == "B" else range(n - 1, -1, -1)
            for cutoff in cutoffs:
                member = _threshold_net(window, cutoff)
                assert _nonincreasing(window, member.values)
                yield member
            return
        # C on a chain: all binary nets with a zero tail.
        for head in itertools.product((0, 1), repeat=n - 1):
            values = head + (0,)
            assert _eventually_zero(window, values)
            yield Net(window, binary_space(), values, target=0)
        return

    if len(window) > BRUTE_FORCE_CAP:
        raise FamilyError(
            f"enumeration of {tag} on a non-chain window is capped at {BRUTE_FORCE_CAP} elements"
        )
    for values in itertools.product((0, 1), repeat=len(window)):
        if tag in ("B", "B0"):
            if not _nonincreasing(window, values):
                continue
            if tag == "B0" and all(v == 1 for v in values):
                continue
            target = 1 if all(v == 1 for v in values) else 0
            yield Net(window, binary_space(), values, target=target)
        elif tag == "C":
            if _eventually_zero(window, values):
                yield Net(window, binary_space(), values, target=0)


def rate_B(eta, window):
    """The two-element uniform candidate set for the non-increasing family.

    k is the first window element; l is an upper bound of eta_k.  For any
    tolerance below the space diameter, a non-increasing {0,1} net is
    either constant on eta_k (k witnesses) or hits 0 there, in which case
    monotonicity makes it identically 0 on eta_l (l witnesses).
    """
    if eta.window != window:
        raise WindowError("sampling does not live on the given window")
    k = window.elements[0]
    l = window.join_all(eta.at(k))
    return frozenset({k, l})


def refute_C(s, window, eps):
    """Certificate that no subset of ``s`` uniformly covers family C.

    Picks k strictly above the join of ``s`` and l strictly above k, sets
    eta_i = {k, l} on ``s`` (identity elsewhere), and takes the member
    that is 1 at k and 0 everywhere else.  Every i in ``s`` then samples a
    pair at distance 1.
    """
    s = frozenset(s)
    if not s:
        raise FamilyError("candidate set must be nonempty")
    if not 0 < eps < 1:
        raise FamilyError("refutation needs eps strictly between 0 and 1")
    for i in s:
        if i not in window:
            raise FamilyError(f"{i!r} is not a window element")
    bound = window.join_all(s)
    above = window.strictly_above(bound)
    k = next(iter(above), None)
    l = next((e for e in above if e != k and window.leq(k, e)), None) if k is not None else None
    if l is None:
        raise FamilyError("window has no two elements strictly above the candidate set")
    eta = Sampling.from_function(
        window, lambda i: {k, l} if i in s else {i}
    )
    values = tuple(1 if e == k else 0 for e in window.elements)
    member = Net(window, binary_space(), values, target=0)
    assert _eventually_zero(window, member.values)
    return RefutationCertificate(eps, eta, member, s, pointed_target=None)


def refute_D_pointed(s, window, eps=0.5):
    """Certificate that no subset of ``s`` is a pointed uniform rate for D.

    Uses the successor sampling eta_i = {i, i+1} (clipped at the top) and
    the member with cutoff alpha = max(s) + 1.  For each i in ``s`` the
    sampled pair contains an even index <= alpha, where the member is 0,
    at distance 1 from the target 1.
    """
    s = frozenset(s)
    if not s:
        raise FamilyError("candidate set must be nonempty")
    if not 0 < eps < 1:
        raise FamilyError("refutation needs eps strictly between 0 and 1")
    if not _is_chain(window):
        raise FamilyError("family D needs a chain window")
    for i in s:
        if i not in window:
            raise FamilyError(f"{i!r} is not a window element")
    n = len(window)
    alpha = max(s) + 1
    if alpha + 1 > n - 1:
        raise FamilyError("window too small: no room for the cutoff above the candidate set")
    eta = successor_sampling(window)
    member = d_member(window, alpha)
    return RefutationCertificate(eps, eta, member, s, pointed_target=1)


def paracompact_nets(n_points, horizon):
    """Per-point iterate nets of the bump-function counterexample.

    On the discrete point set {x_0, ..., x_{m-1}} take the indicator bumps
    g_j of the singletons, their partial sums, and the everywhere-1 total
    sum; the iterates alternate between partial and total sums.  The net
    at x_p has value 1 at step i iff i is even or i > p, so each net is
    eventually constant at 1 while the family reproduces the D-pattern
    (with the roles of 0 and 1 exchanged across parity).
    """
    if n_points < 1 or horizon < 1:
        raise FamilyError("counts must be positive")
    from .order import make_omega_window

    window = make_omega_window(horizon)
    nets = []
    for p in range(n_points):
        values = tuple(
            1.0 if (i % 2 == 0 or i > p) else 0.0 for i in range(horizon)
        )
        nets.append(Net(window, unit_interval_space(), values, target=1.0))
    return nets


def closed_form_refutation(spec, union, eps, pointed=False):
    """Replay the paper-style construction for a tagged family, if one applies.

    Returns a certificate or None (meaning: fall back to generic search).
    """
    window = spec.window
    try:
        if spec.tag == "C" and not pointed:
            return refute_C(union, window, eps)
        if spec.tag == "D" and pointed:
            return refute_D_pointed(union, window, eps)
        if spec.tag == "B0" and pointed:
            return _refute_B0_pointed(union, window, eps)
        if spec.tag == "paracompact" and pointed:
            return _refute_paracompact(spec, union, eps)
    except FamilyError:
        return None
    return None


def _refute_B0_pointed(s, window, eps):
    # The member constant 1 on (the down-closure of) s defeats any pointed
    # rate near 0: under the identity sampling each i in s samples a 1.
    if not _is_chain(window):
        raise FamilyError("closed-form B0 refutation needs a chain window")
    if not 0 < eps < 1:
        raise FamilyError("refutation needs eps strictly between 0 and 1")
    cutoff = window.index(window.join_all(s)) + 1
    if cutoff >= len(window):
        raise FamilyError("candidate set reaches the top: the defeating member would be constant 1")
    member = _threshold_net(window, cutoff)
    eta = identity_sampling(window)
    return RefutationCertificate(eps, eta, member, frozenset(s), pointed_target=0)


def _refute_paracompact(spec, s, eps):
    # Mirror of the D refutation at the point x_{max(s)+1}: the successor
    # pair of each i in s contains an odd index <= max(s)+1, where the
    # iterate is 0 while the target is 1.
    window = spec.window
    n_points = spec.parameters.get("n_points", len(window))
    if not 0 < eps < 1:
        raise FamilyError("refutation needs eps strictly between 0 and 1")
    alpha = max(s) + 1
    if alpha >= n_points:
        raise FamilyError("no point deep enough to defeat this candidate set")
    if alpha + 1 > len(window) - 1:
        raise FamilyError("window too small for the successor sampling to bite")
    member = paracompact_nets(n_points, len(window))[alpha]
    eta = successor_sampling(window)
    return RefutationCertificate(eps, eta, member, frozenset(s), pointed_target=1.0)
