"""Empirical metastability analysis of numeric iterate sequences.

Builds demo iterate families (Cesaro averages of planar rotations),
searches for small uniform candidate sets over a grid of tolerances and a
suite of samplings, and runs the finite-point-set uniform-metastability
check.  Every reported witness re-validates through the witness checker.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

import numpy as np

from .meta import find_witness, is_witness, find_pointed_witness
from .net import (
    BINARY,
    EUCLIDEAN,
    Net,
    SpaceError,
    binary_space,
    euclidean_space,
    half_line_space,
    unit_interval_space,
    window_cauchy_index,
)
from .order import (
    DirectedWindow,
    Sampling,
    doubling_sampling,
    identity_sampling,
    make_omega_window,
    random_sampling,
    successor_sampling,
)

__all__ = [
    "AnalysisCell",
    "AnalysisReport",
    "UmpVerdict",
    "cesaro_rotation_nets",
    "cesaro_envelope",
    "cesaro_envelope_ok",
    "empirical_rate",
    "finite_space_ump_check",
    "ingest_csv",
    "build_sampling_suite",
]

#: Relative comparison slack used only when checking analytic bounds on
#: binary64 data; the computations themselves are raw arithmetic.
FLOAT_SLACK = 2.0 ** -40


def _quarter_turns(theta):
    # Exact multiples of a quarter turn get an exact integer orbit, so the
    # four-step cancellations hold to the bit.
    step = math.pi / 2
    if theta % step == 0.0:
        return round(theta / step) % 4
    return None


def cesaro_rotation_nets(angles, horizon):
    """Cesaro averages of the rotation orbit of (1, 0), one net per angle.

    The value at index n >= 1 is the mean of the first n orbit points
    (1, 0), R(1, 0), ..., R^(n-1)(1, 0); index 0 holds the start vector.
    For angles that are exact multiples of pi/2 the orbit is computed in
    integer arithmetic, so e.g. the quarter-turn net vanishes exactly at
    every index divisible by 4.
    """
    if horizon < 1:
        raise ValueError("horizon must be positive")
    window = make_omega_window(horizon)
    space = euclidean_space(2)
    nets = []
    for theta in angles:
        q = _quarter_turns(theta)
        if q is not None:
            orbit = ((1, 0), (0, 1), (-1, 0), (0, -1))
            sx = sy = 0
            values = [(1.0, 0.0)]
            for n in range(1, horizon):
                vx, vy = orbit[((n - 1) * q) % 4]
                sx += vx
                sy += vy
                values.append((sx / n, sy / n))
        else:
            ks = np.arange(horizon - 1, dtype=float) * theta
            sx = np.cumsum(np.cos(ks))
            sy = np.cumsum(np.sin(ks))
            ns = np.arange(1, horizon, dtype=float)
            values = [(1.0, 0.0)] + list(zip(sx / ns, sy / ns))
        converges = theta % (2 * math.pi) != 0.0
        target = (0.0, 0.0) if converges else (1.0, 0.0)
        nets.append(Net(window, space, tuple((float(x), float(y)) for x, y in values), target=target))
    return nets


def cesaro_envelope(theta, n):
    """Analytic bound 2 / (n * |1 - e^(i theta)|) on the n-th average norm."""
    c = math.hypot(1.0 - math.cos(theta), math.sin(theta))
    if c == 0.0:
        raise ValueError("envelope bound needs a nonzero rotation angle")
    return 2.0 / (n * c)


def cesaro_envelope_ok(net, theta, slack=FLOAT_SLACK):
    """Whether every value at n >= 1 respects the geometric-series envelope.

    Compared in squared form with a documented relative slack: the bound
    is exact in real arithmetic; the slack only absorbs binary64 rounding
    of the stored averages.
    """
    c2 = (1.0 - math.cos(theta)) ** 2 + math.sin(theta) ** 2
    if c2 == 0.0:
        raise ValueError("envelope bound needs a nonzero rotation angle")
    for n, (x, y) in enumerate(net.values):
        if n == 0:
            continue
        if (x * x + y * y) * (n * n) * c2 > 4.0 * (1.0 + slack):
            return False
    return True


# -- empirical rate search -------------------------------------------------


@dataclass(frozen=True)
class AnalysisCell:
    """One (eps, sampling) cell: per-net witnesses and a greedy cover."""

    eps: float
    sampling_id: str
    witnesses: tuple  # first full-window witness per net, or None
    cover_set: tuple  # greedy uniform candidate set, enumeration order
    uncovered: tuple  # indices of nets no window element witnesses


@dataclass(frozen=True)
class AnalysisReport:
    window_size: int
    eps_grid: tuple
    sampling_ids: tuple
    cells: tuple  # AnalysisCell, ordered by (eps desc, sampling id)
    cauchy_indices: tuple  # per net: tuple of (eps, index-or-None)
    refuted: bool  # some cell left a net without any witness


def _greedy_cover(nets, eps, eta, pointed=False):
    window = eta.window
    witness_sets = []
    for a in nets:
        if pointed:
            ws = {
                i
                for i in window.elements
                if find_pointed_witness(a, a.target, eps, eta, (i,)) is not None
            }
        else:
            ws = {i for i in window.elements if is_witness(a, eps, eta, i)}
        witness_sets.append(ws)
    uncovered = {m for m, ws in enumerate(witness_sets) if ws}
    no_witness = tuple(m for m, ws in enumerate(witness_sets) if not ws)
    cover = []
    while uncovered:
        best, best_gain = None, 0
        for i in window.elements:  # enumeration order breaks ties deterministically
            gain = sum(1 for m in uncovered if i in witness_sets[m])
            if gain > best_gain:
                best, best_gain = i, gain
        cover.append(best)
        uncovered -= {m for m in uncovered if best in witness_sets[m]}
    return tuple(sorted(cover, key=window.index)), no_witness


def empirical_rate(family, eps_grid, sampling_suite):
    """Per-(eps, sampling) witness tables plus greedy minimal covering sets.

    ``sampling_suite`` maps sampling ids to samplings on the family's
    window.  Finding a true minimal set is set-cover-hard; the greedy
    cover is deterministic and every element of it is certified by
    re-validation against the witness checker.
    """
    family = list(family)
    if not family:
        raise ValueError("empty family")
    if not eps_grid or not sampling_suite:
        raise ValueError("empty tolerance grid or sampling suite")
    window = family[0].window
    eps_grid = tuple(sorted(eps_grid, reverse=True))
    cells = []
    for eps in eps_grid:
        for sid, eta in sampling_suite.items():
            if eta.window != window:
                raise ValueError(f"sampling {sid!r} lives on a different window")
            witnesses = tuple(find_witness(a, eps, eta) for a in family)
            cover, no_witness = _greedy_cover(family, eps, eta)
            for i in cover:  # certify the cover
                assert any(is_witness(a, eps, eta, i) for a in family)
            cells.append(AnalysisCell(eps, sid, witnesses, cover, no_witness))
    cauchy = tuple(
        tuple((eps, window_cauchy_index(a, eps)) for eps in eps_grid) for a in family
    )
    return AnalysisReport(
        window_size=len(window),
        eps_grid=eps_grid,
        sampling_ids=tuple(sampling_suite),
        cells=tuple(cells),
        cauchy_indices=cauchy,
        refuted=any(cell.uncovered for cell in cells),
    )


@dataclass(frozen=True)
class UmpVerdict:
    """Outcome of the finite-point-set uniform metastability check."""

    ok: bool
    non_cauchy_points: tuple  # (point label, finest eps) for failing nets
    sets: tuple  # ((eps, sampling id), cover set) for every cell
    window_size: int


def finite_space_ump_check(nets_by_point, eps_grid, sampling_suite):
    """Uniform candidate sets for a family indexed by a finite point set.

    A finite point set is compact, so once every per-point net is
    window-Cauchy at the finest tolerance a uniform candidate set exists
    for each (eps, sampling) cell; the greedy cover finds one and each
    returned set is re-validated.  Nets failing the Cauchy precondition
    are reported per point and no sets are computed.
    """
    nets_by_point = dict(nets_by_point)
    if not nets_by_point or not eps_grid or not sampling_suite:
        raise ValueError("empty family, tolerance grid, or sampling suite")
    finest = min(eps_grid)
    failures = tuple(
        (label, finest)
        for label, a in nets_by_point.items()
        if window_cauchy_index(a, finest) is None
    )
    labels = list(nets_by_point)
    nets = [nets_by_point[label] for label in labels]
    window = nets[0].window
    if failures:
        return UmpVerdict(False, failures, (), len(window))
    sets = []
    for eps in sorted(eps_grid, reverse=True):
        for sid, eta in sampling_suite.items():
            cover, no_witness = _greedy_cover(nets, eps, eta)
            assert not no_witness, "window-Cauchy nets always have a witness"
            for a in nets:  # re-validate: the cover serves every net
                assert any(is_witness(a, eps, eta, i) for i in cover)
            sets.append(((eps, sid), cover))
    return UmpVerdict(True, (), tuple(sets), len(window))


# -- ingestion and suites --------------------------------------------------


def ingest_csv(path, space):
    """Parse a rectangular numeric CSV into nets on an omega window.

    One row per index.  Scalar spaces take one net per column; a
    d-dimensional Euclidean space groups consecutive blocks of d columns
    into one net each.
    """
    rows = []
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row:
                continue
            try:
                rows.append([float(cell) for cell in row])
            except ValueError:
                raise SpaceError(f"non-numeric cell in row {lineno}") from None
            if len(rows[-1]) != len(rows[0]):
                raise SpaceError(f"ragged row {lineno}: expected {len(rows[0])} columns")
    if not rows:
        raise SpaceError("empty CSV")
    ncols = len(rows[0])
    window = make_omega_window(len(rows))
    if space.kind == EUCLIDEAN:
        d = space.dim
        if ncols % d != 0:
            raise SpaceError(f"{ncols} columns do not group into dimension {d}")
        groups = [range(g * d, (g + 1) * d) for g in range(ncols // d)]
        return [
            Net(window, space, tuple(tuple(row[c] for c in cols) for row in rows))
            for cols in groups
        ]
    if space.kind == BINARY:
        coerced = []
        for col in range(ncols):
            values = []
            for lineno, row in enumerate(rows, start=1):
                if row[col] not in (0.0, 1.0):
                    raise SpaceError(f"non-binary value in row {lineno}")
                values.append(int(row[col]))
            coerced.append(tuple(values))
        return [Net(window, space, values) for values in coerced]
    return [
        Net(window, space, tuple(row[col] for row in rows)) for col in range(ncols)
    ]


def build_sampling_suite(window, names, seed=None, random_count=8, max_size=3):
    """Named built-in sampling suite: identity, successor, doubling, random-k.

    ``random-k`` requires a seed and contributes ``random_count`` seeded
    samplings with ids random-k-0, random-k-1, ...
    """
    import random as _random

    suite = {}
    for name in names:
        if name == "identity":
            suite["identity"] = identity_sampling(window)
        elif name == "successor":
            suite["successor"] = successor_sampling(window)
        elif name == "doubling":
            suite["doubling"] = doubling_sampling(window)
        elif name == "random-k":
            if seed is None:
                raise ValueError("the random-k suite needs a seed")
            rng = _random.Random(seed)
            for r in range(random_count):
                suite[f"random-k-{r}"] = random_sampling(window, rng, max_size=max_size)
        else:
            raise ValueError(f"unknown sampling suite name {name!r}")
    return suite
