"""Versioned JSON encoding for windows, samplings, nets, rates, reports,
and refutation certificates.

Every top-level document carries ``schema_version``.  Encoding is
deterministic (collections are emitted in canonical enumeration order) and
``from_dict(to_dict(x)) == x`` for all value types.
"""

from __future__ import annotations

import json

from .analyze import AnalysisCell, AnalysisReport, UmpVerdict
from .families import FamilySpec
from .meta import Rate, RefutationCertificate, WitnessReport
from .net import MetricSpace, Net, euclidean_space, table_space
from .order import (
    DirectedWindow,
    Sampling,
    WindowError,
    make_custom_window,
    make_omega_window,
    make_ordinal_window,
    product,
)

SCHEMA_VERSION = 1

__all__ = [
    "SCHEMA_VERSION",
    "SchemaError",
    "window_to_dict",
    "window_from_dict",
    "sampling_to_dict",
    "sampling_from_dict",
    "space_to_dict",
    "space_from_dict",
    "net_to_dict",
    "net_from_dict",
    "rate_to_dict",
    "rate_from_dict",
    "report_to_dict",
    "certificate_to_dict",
    "certificate_from_dict",
    "family_spec_to_dict",
    "family_spec_from_dict",
    "analysis_report_to_dict",
    "ump_verdict_to_dict",
    "dumps",
]


class SchemaError(ValueError):
    """Raised for documents that do not match the expected schema."""


def dumps(doc):
    """Canonical JSON text: sorted keys, stable separators, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _versioned(doc):
    doc["schema_version"] = SCHEMA_VERSION
    return doc


def _expect(doc, kind):
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema_version {doc.get('schema_version')!r}")
    if doc.get("type") != kind:
        raise SchemaError(f"expected a {kind!r} document, got {doc.get('type')!r}")
    return doc


def _label_to_json(label):
    if isinstance(label, tuple):
        return [_label_to_json(x) for x in label]
    return label


def _label_from_json(label):
    if isinstance(label, list):
        return tuple(_label_from_json(x) for x in label)
    return label


# -- windows ---------------------------------------------------------------


def window_to_dict(w):
    doc = {"type": "window", "kind": w.kind}
    if w.kind in ("omega-window", "ordinal-window"):
        doc["size"] = len(w)
    elif w.kind == "product-window":
        doc["factors"] = [window_to_dict(f) for f in w.factors]
    else:
        n = len(w)
        doc["elements"] = [_label_to_json(e) for e in w.elements]
        doc["leq"] = [[1 if w.leq(a, b) else 0 for b in w.elements] for a in w.elements]
        doc["join"] = [[w.index(w.join(a, b)) for b in w.elements] for a in w.elements]
    return _versioned(doc)


def window_from_dict(doc):
    _expect(doc, "window")
    kind = doc["kind"]
    if kind == "omega-window":
        return make_omega_window(doc["size"])
    if kind == "ordinal-window":
        return make_ordinal_window(doc["size"])
    if kind == "product-window":
        d, e = (window_from_dict(f) for f in doc["factors"])
        return product(d, e)
    elements = [_label_from_json(e) for e in doc["elements"]]
    return make_custom_window(elements, doc["leq"], doc["join"], kind=kind)


# -- samplings -------------------------------------------------------------


def sampling_to_dict(s):
    w = s.window
    # canonical order inside each set: window enumeration order
    assign = [
        [_label_to_json(j) for j in sorted(eta_i, key=w.index)] for eta_i in s.assign
    ]
    return _versioned({"type": "sampling", "window": window_to_dict(w), "assign": assign})


def sampling_from_dict(doc):
    _expect(doc, "sampling")
    w = window_from_dict(doc["window"])
    assign = tuple(frozenset(_label_from_json(j) for j in row) for row in doc["assign"])
    return Sampling(w, assign)


# -- spaces and nets -------------------------------------------------------


def space_to_dict(space):
    doc = {"type": "space", "kind": space.kind}
    if space.dim is not None:
        doc["dim"] = space.dim
    if space.symbols is not None:
        doc["symbols"] = list(space.symbols)
        doc["table"] = [list(row) for row in space.table]
    return _versioned(doc)


def space_from_dict(doc):
    _expect(doc, "space")
    kind = doc["kind"]
    if kind == "binary-discrete":
        from .net import binary_space

        return binary_space()
    if kind == "unit-interval":
        from .net import unit_interval_space

        return unit_interval_space()
    if kind == "half-line":
        from .net import half_line_space

        return half_line_space()
    if kind == "euclidean":
        return euclidean_space(doc["dim"])
    if kind == "custom-table":
        return table_space(doc["symbols"], doc["table"])
    raise SchemaError(f"unknown space kind {kind!r}")


def _point_to_json(p):
    return _label_to_json(p)


def _point_from_json(p, space):
    if isinstance(p, list):
        return tuple(p)
    if space.kind == "binary-discrete" and p is not None:
        return int(p)
    return p


def net_to_dict(a):
    return _versioned(
        {
            "type": "net",
            "window": window_to_dict(a.window),
            "space": space_to_dict(a.space),
            "values": [_point_to_json(v) for v in a.values],
            "target": None if a.target is None else _point_to_json(a.target),
        }
    )


def net_from_dict(doc):
    _expect(doc, "net")
    w = window_from_dict(doc["window"])
    space = space_from_dict(doc["space"])
    values = tuple(_point_from_json(v, space) for v in doc["values"])
    target = doc.get("target")
    return Net(w, space, values, target=_point_from_json(target, space) if target is not None else None)


# -- rates -----------------------------------------------------------------


def rate_to_dict(rate):
    w = rate.window
    entries = [
        {
            "threshold": t,
            "sampling_id": sid,
            "candidates": [_label_to_json(i) for i in sorted(cands, key=w.index)],
        }
        for (t, sid), cands in sorted(rate.table.items(), key=lambda kv: (-kv[0][0], kv[0][1]))
    ]
    return _versioned(
        {
            "type": "rate",
            "thresholds": list(rate.thresholds),
            "pointed": rate.pointed,
            "samplings": {sid: sampling_to_dict(s) for sid, s in sorted(rate.samplings.items())},
            "table": entries,
        }
    )


def rate_from_dict(doc):
    _expect(doc, "rate")
    samplings = {sid: sampling_from_dict(s) for sid, s in doc["samplings"].items()}
    table = {
        (entry["threshold"], entry["sampling_id"]): frozenset(
            _label_from_json(i) for i in entry["candidates"]
        )
        for entry in doc["table"]
    }
    return Rate(tuple(doc["thresholds"]), samplings, table, pointed=doc["pointed"])


# -- reports and certificates ---------------------------------------------


def report_to_dict(report):
    return _versioned(
        {
            "type": "witness-report",
            "eps": report.eps,
            "sampling_id": report.sampling_id,
            "window_size": report.window_size,
            "outcomes": [None if o is None else _label_to_json(o) for o in report.outcomes],
            "overall": report.overall,
        }
    )


def certificate_to_dict(cert):
    w = cert.member.window
    return _versioned(
        {
            "type": "refutation-certificate",
            "eps": cert.eps,
            "sampling": sampling_to_dict(cert.sampling),
            "member": net_to_dict(cert.member),
            "candidate_set": [_label_to_json(i) for i in sorted(cert.candidate_set, key=w.index)],
            "pointed_target": None
            if cert.pointed_target is None
            else _point_to_json(cert.pointed_target),
        }
    )


def certificate_from_dict(doc):
    _expect(doc, "refutation-certificate")
    member = net_from_dict(doc["member"])
    target = doc.get("pointed_target")
    return RefutationCertificate(
        eps=doc["eps"],
        sampling=sampling_from_dict(doc["sampling"]),
        member=member,
        candidate_set=frozenset(_label_from_json(i) for i in doc["candidate_set"]),
        pointed_target=_point_from_json(target, member.space) if target is not None else None,
    )


def family_spec_to_dict(spec):
    params = {}
    for key, value in spec.parameters.items():
        params[key] = list(value) if isinstance(value, range) else value
    return _versioned(
        {
            "type": "family-spec",
            "tag": spec.tag,
            "window": window_to_dict(spec.window),
            "parameters": params,
        }
    )


def family_spec_from_dict(doc):
    _expect(doc, "family-spec")
    return FamilySpec(doc["tag"], window_from_dict(doc["window"]), doc.get("parameters", {}))


# -- one-way report encodings ---------------------------------------------


def analysis_report_to_dict(report):
    return _versioned(
        {
            "type": "analysis-report",
            "window_size": report.window_size,
            "eps_grid": list(report.eps_grid),
            "sampling_ids": list(report.sampling_ids),
            "cells": [
                {
                    "eps": c.eps,
                    "sampling_id": c.sampling_id,
                    "witnesses": [None if w is None else _label_to_json(w) for w in c.witnesses],
                    "cover_set": [_label_to_json(i) for i in c.cover_set],
                    "uncovered": list(c.uncovered),
                }
                for c in report.cells
            ],
            "cauchy_indices": [
                [[eps, None if i is None else _label_to_json(i)] for eps, i in per_net]
                for per_net in report.cauchy_indices
            ],
            "refuted": report.refuted,
        }
    )


def ump_verdict_to_dict(verdict):
    return _versioned(
        {
            "type": "ump-verdict",
            "ok": verdict.ok,
            "window_size": verdict.window_size,
            "non_cauchy_points": [
                [_label_to_json(p), eps] for p, eps in verdict.non_cauchy_points
            ],
            "sets": [
                {"eps": eps, "sampling_id": sid, "cover_set": [_label_to_json(i) for i in cover]}
                for (eps, sid), cover in verdict.sets
            ],
        }
    )
