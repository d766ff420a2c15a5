"""Witness search, rates of metastability, the rate-transformation calculus,
and adversarial refutation of candidate uniform rates.

A witness for a net at tolerance ``eps`` under a sampling ``eta`` is an
index ``i`` whose candidate set ``eta_i`` has all pairwise distances at most
``eps`` (pointed variant: all distances to a fixed target point).  A
:class:`Rate` records, per (threshold, sampling), a finite set of indices
promised to contain a witness for every member of some family of nets.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence, Union

from .net import Net
from .order import (
    DirectedWindow,
    Sampling,
    WindowError,
    induced_sampling,
    project_set,
    random_sampling,
    require_valid_sampling,
)

__all__ = [
    "Rate",
    "RateError",
    "WitnessReport",
    "RefutationCertificate",
    "DEFAULT_THRESHOLDS",
    "is_witness",
    "is_pointed_witness",
    "find_witness",
    "find_pointed_witness",
    "build_rate",
    "verify_rate",
    "pointed_to_plain",
    "selfdist_rate_to_net_rate",
    "sampling_independent_bound",
    "replay_certificate",
    "refute_uniform",
]

#: Default dyadic threshold grid 1, 1/2, ..., 2^-10 (descending).
DEFAULT_THRESHOLDS = tuple(2.0 ** -i for i in range(11))


class RateError(ValueError):
    """Raised for malformed rates or missing rate entries."""


def is_witness(a, eps, eta, i):
    """Whether ``i`` witnesses plain [eps, eta]-metastability of ``a``."""
    block = eta.at(i)
    return all(
        a.dist(j, k) <= eps for j, k in itertools.combinations(sorted(block, key=a.window.index), 2)
    )


def is_pointed_witness(a, b, eps, eta, i):
    """Whether ``i`` witnesses [eps, eta]-metastability of ``a`` near ``b``."""
    return all(a.space.dist(a.value(j), b) <= eps for j in eta.at(i))


def _scan(a, eps, eta, candidates, check):
    if eps <= 0:
        raise ValueError("eps must be positive")
    if eta.window != a.window:
        raise WindowError("sampling and net live on different windows")
    if candidates is None:
        pool = a.window.elements
    else:
        pool = sorted(candidates, key=a.window.index)
    for i in pool:
        if check(i):
            return i
    return None


def find_witness(a, eps, eta, candidates=None):
    """First index (enumeration order) witnessing [eps, eta]-metastability.

    Scans the whole window, or just ``candidates`` when given.  Returns
    None when no scanned index is a witness.
    """
    return _scan(a, eps, eta, candidates, lambda i: is_witness(a, eps, eta, i))


def find_pointed_witness(a, b, eps, eta, candidates=None):
    """Pointed analogue of :func:`find_witness`, measured against ``b``."""
    a.space.require(b)
    return _scan(a, eps, eta, candidates, lambda i: is_pointed_witness(a, b, eps, eta, i))


# -- rates -----------------------------------------------------------------


@dataclass(frozen=True)
class Rate:
    """Finite-grid rate of (pointed) metastability.

    ``thresholds`` is a strictly descending tuple of positive reals;
    ``samplings`` maps sampling ids to the samplings the rate is indexed
    by; ``table`` maps (threshold, sampling id) to a nonempty candidate
    set.  Lookup at an arbitrary eps uses the largest listed threshold
    <= eps: a rate valid at a finer tolerance is valid at any coarser one.
    """

    thresholds: tuple
    samplings: Mapping[str, Sampling]
    table: Mapping[tuple, frozenset]
    pointed: bool = False

    def __post_init__(self):
        if not self.thresholds:
            raise RateError("rate needs a nonempty threshold grid")
        if any(t <= 0 for t in self.thresholds):
            raise RateError("thresholds must be positive")
        if list(self.thresholds) != sorted(set(self.thresholds), reverse=True):
            raise RateError("thresholds must be strictly descending")
        windows = {eta.window for eta in self.samplings.values()}
        if len(windows) > 1:
            raise RateError("rate samplings live on different windows")
        for (t, sid), candidates in self.table.items():
            if t not in self.thresholds:
                raise RateError(f"table threshold {t} not in the grid")
            if sid not in self.samplings:
                raise RateError(f"table sampling id {sid!r} is unregistered")
            if not candidates:
                raise RateError(f"empty candidate set at ({t}, {sid!r})")
            w = self.samplings[sid].window
            for i in candidates:
                if i not in w:
                    raise RateError(f"candidate {i!r} at ({t}, {sid!r}) is outside the window")

    @property
    def window(self):
        return next(iter(self.samplings.values())).window

    def sampling_id(self, eta):
        """Resolve a sampling (or id) to its registered id."""
        if isinstance(eta, str):
            if eta not in self.samplings:
                raise RateError(f"sampling id {eta!r} is unregistered")
            return eta
        for sid, s in self.samplings.items():
            if s == eta:
                return sid
        raise RateError("sampling is not registered with this rate")

    def lookup(self, eps, eta):
        """Candidate set for ``eps`` under ``eta`` (largest threshold <= eps)."""
        sid = self.sampling_id(eta)
        usable = [t for t in self.thresholds if t <= eps]
        for t in usable:  # thresholds are descending: first usable is largest
            if (t, sid) in self.table:
                return self.table[(t, sid)]
        raise RateError(f"no rate entry for eps={eps} under sampling {sid!r}")


def build_rate(samplings, fn, thresholds=DEFAULT_THRESHOLDS, pointed=False):
    """Tabulate a rate from a function (threshold, sampling) -> candidate set."""
    samplings = dict(samplings)
    for eta in samplings.values():
        require_valid_sampling(eta)
    table = {
        (t, sid): frozenset(fn(t, eta))
        for t in thresholds
        for sid, eta in samplings.items()
    }
    return Rate(tuple(thresholds), samplings, table, pointed=pointed)


@dataclass(frozen=True)
class WitnessReport:
    """Per-family verification outcome for one (eps, sampling) cell."""

    eps: float
    sampling_id: str
    window_size: int
    outcomes: tuple  # one witness index or None per net
    overall: bool

    def __post_init__(self):
        assert self.overall == all(o is not None for o in self.outcomes)


def verify_rate(family, rate, eps, eta):
    """Check that the rate's candidate set covers every net in the family.

    In pointed mode every net must carry a declared target; witnesses are
    then measured against it.  The report records one witness (or None)
    per net, in family order.
    """
    family = list(family)
    sid = rate.sampling_id(eta)
    sampling = rate.samplings[sid]
    candidates = rate.lookup(eps, sid)
    outcomes = []
    for a in family:
        if a.window != sampling.window:
            raise WindowError("family nets and rate live on different windows")
        if rate.pointed:
            if a.target is None:
                raise RateError("pointed verification needs a declared target on every net")
            outcomes.append(find_pointed_witness(a, a.target, eps, sampling, candidates))
        else:
            outcomes.append(find_witness(a, eps, sampling, candidates))
    outcomes = tuple(outcomes)
    return WitnessReport(
        eps=eps,
        sampling_id=sid,
        window_size=len(sampling.window),
        outcomes=outcomes,
        overall=all(o is not None for o in outcomes),
    )


def pointed_to_plain(rate):
    """Plain rate from a pointed one: the entry at eps comes from eps/2.

    A pointed witness at eps/2 is a plain witness at eps by the triangle
    inequality through the target.  Output thresholds are those grid
    points whose half also lies on the grid.
    """
    if not rate.pointed:
        raise RateError("input rate is not pointed")
    grid = set(rate.thresholds)
    out_thresholds = tuple(t for t in rate.thresholds if t / 2 in grid)
    if not out_thresholds:
        raise RateError("no threshold has its half on the grid")
    table = {}
    for t in out_thresholds:
        for sid in rate.samplings:
            if (t / 2, sid) in rate.table:
                table[(t, sid)] = rate.table[(t / 2, sid)]
    return Rate(out_thresholds, dict(rate.samplings), table, pointed=False)


def selfdist_rate_to_net_rate(rate, d, base_samplings):
    """Turn a pointed-near-0 rate for a self-distance net into a net rate.

    ``rate`` must live on product(d, d) and be indexed exactly by the
    samplings induced (via the join of ``d``) from ``base_samplings``,
    under the same ids.  Each candidate set of pairs is projected through
    the join; the result is a plain rate on ``d``.
    """
    if not rate.pointed:
        raise RateError("self-distance rate must be pointed (near 0)")
    base_samplings = dict(base_samplings)
    if set(base_samplings) != set(rate.samplings):
        raise RateError("base sampling ids do not match the rate's sampling ids")
    for sid, eta in base_samplings.items():
        if rate.samplings[sid] != induced_sampling(eta, d):
            raise RateError(f"rate sampling {sid!r} is not induced from its base sampling")
    table = {
        (t, sid): project_set(candidates, d)
        for (t, sid), candidates in rate.table.items()
    }
    return Rate(rate.thresholds, base_samplings, table, pointed=False)


def sampling_independent_bound(rate, assert_independent=True):
    """Upper bound (by repeated join) of each threshold's candidate set.

    Requires the candidate sets at each threshold to agree across all
    registered samplings; with ``assert_independent=False`` the union
    across samplings is bounded instead.  Any family verified by such a
    rate is tail-close within eps above the returned index.
    """
    w = rate.window
    bounds = {}
    for t in rate.thresholds:
        sets = [rate.table[(t, sid)] for sid in rate.samplings if (t, sid) in rate.table]
        if not sets:
            continue
        if assert_independent and any(s != sets[0] for s in sets[1:]):
            raise RateError(f"candidate sets at threshold {t} depend on the sampling")
        merged = frozenset().union(*sets)
        bounds[t] = w.join_all(merged)
    return bounds


# -- refutation ------------------------------------------------------------


@dataclass(frozen=True)
class RefutationCertificate:
    """Self-contained evidence that a candidate set contains no witness.

    Replaying the certificate re-checks, index by index, that no element
    of ``candidate_set`` witnesses the (pointed) [eps, eta]-metastability
    of ``member``.
    """

    eps: float
    sampling: Sampling
    member: Net
    candidate_set: frozenset
    pointed_target: object = None


def replay_certificate(cert):
    """Re-run a certificate through the witness checker; True iff it holds."""
    require_valid_sampling(cert.sampling)
    if cert.sampling.window != cert.member.window:
        return False
    for i in cert.candidate_set:
        if i not in cert.member.window:
            return False
        if cert.pointed_target is not None:
            if is_pointed_witness(cert.member, cert.pointed_target, cert.eps, cert.sampling, i):
                return False
        else:
            if is_witness(cert.member, cert.eps, cert.sampling, i):
                return False
    return True


def _materialize(family, member_cap):
    # FamilySpec is handled by the caller; here family is an iterable or a
    # zero-argument callable producing one.
    if callable(family):
        family = family()
    return list(itertools.islice(iter(family), member_cap))


def refute_uniform(
    family,
    candidate_sets,
    eps,
    search_budget=200,
    seed=0,
    pointed=False,
    member_cap=512,
):
    """Search for one (sampling, member) pair defeating every candidate set.

    ``family`` may be a FamilySpec (closed-form constructions are replayed
    for the tags that have one), an iterable of nets, or a callable
    returning one.  A certificate defeats a candidate set when the set
    contains no (pointed) witness; defeating the union defeats every
    listed set at once.  The search is deterministic for a fixed seed.
    Returns None when the budget is exhausted without a refutation, which
    is not a claim that none exists.
    """
    candidate_sets = [frozenset(s) for s in candidate_sets]
    if not candidate_sets or any(not s for s in candidate_sets):
        raise ValueError("candidate sets must be given and nonempty")
    union = frozenset().union(*candidate_sets)

    from . import families as _families

    if isinstance(family, _families.FamilySpec):
        cert = _families.closed_form_refutation(family, union, eps, pointed=pointed)
        if cert is not None and replay_certificate(cert):
            return cert
        members = _materialize(_families.enumerate_family(family), member_cap)
    else:
        members = _materialize(family, member_cap)

    if not members:
        return None
    window = members[0].window
    rng = random.Random(seed)
    for _ in range(search_budget):
        eta = random_sampling(window, rng)
        for a in members:
            target = a.target if pointed else None
            if pointed and target is None:
                raise RateError("pointed refutation needs declared targets")
            cert = RefutationCertificate(eps, eta, a, union, pointed_target=target)
            if replay_certificate(cert):
                return cert
    return None
