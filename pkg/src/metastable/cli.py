"""Command-line front end: verify, refute, analyze, demo.

Exit codes: 0 verified / report written; 2 refutation found (or a verify
report with failures); 3 precondition violation; 4 I/O or schema error.
All randomized paths require an explicit --seed and are reproducible:
identical inputs and seed yield byte-identical JSON output.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import analyze as _analyze
from . import families as _families
from . import meta as _meta
from . import mvlogic as _mvlogic
from . import serialize as _ser
from .net import SpaceError, euclidean_space, half_line_space, unit_interval_space, binary_space
from .order import WindowError, make_omega_window

EXIT_OK = 0
EXIT_REFUTED = 2
EXIT_PRECONDITION = 3
EXIT_IO = 4


def _load_json(path):
    with open(path) as fh:
        return json.load(fh)


def _write(doc, out):
    text = _ser.dumps(doc)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_family(path):
    """A family file is either a family-spec document or a list of net documents."""
    doc = _load_json(path)
    if isinstance(doc, list):
        return [_ser.net_from_dict(d) for d in doc]
    if doc.get("type") == "family-spec":
        return _ser.family_spec_from_dict(doc)
    raise _ser.SchemaError("family file must be a family-spec or a list of nets")


def _family_nets(family):
    if isinstance(family, _families.FamilySpec):
        return list(_families.enumerate_family(family))
    return family


def _space_from_args(args):
    kind = args.space
    if kind == "unit-interval":
        return unit_interval_space()
    if kind == "half-line":
        return half_line_space()
    if kind == "binary":
        return binary_space()
    if kind == "euclidean":
        return euclidean_space(args.dim)
    raise ValueError(f"unknown space {kind!r}")


def cmd_verify(args):
    family = _family_nets(_load_family(args.family))
    rate = _ser.rate_from_dict(_load_json(args.rate))
    sids = [args.sampling] if args.sampling else sorted(rate.samplings)
    reports = [
        _ser.report_to_dict(_meta.verify_rate(family, rate, args.eps, sid)) for sid in sids
    ]
    doc = {
        "type": "verify-result",
        "schema_version": _ser.SCHEMA_VERSION,
        "eps": args.eps,
        "reports": reports,
        "overall": all(r["overall"] for r in reports),
    }
    _write(doc, args.out)
    return EXIT_OK if doc["overall"] else EXIT_REFUTED


def cmd_refute(args):
    family = _load_family(args.family)
    candidate_sets = _load_json(args.candidates)
    if not isinstance(candidate_sets, list):
        raise _ser.SchemaError("candidates file must be a JSON list of candidate sets")
    sets = [frozenset(tuple(i) if isinstance(i, list) else i for i in s) for s in candidate_sets]
    cert = _meta.refute_uniform(
        family,
        sets,
        args.eps,
        search_budget=args.budget,
        seed=args.seed,
        pointed=args.pointed,
    )
    if cert is None:
        _write(
            {"type": "refute-result", "schema_version": _ser.SCHEMA_VERSION, "result": "exhausted"},
            args.out,
        )
        return EXIT_OK
    assert _meta.replay_certificate(cert)
    doc = _ser.certificate_to_dict(cert)
    _write(doc, args.out)
    return EXIT_REFUTED


def cmd_analyze(args):
    if args.csv:
        family = _analyze.ingest_csv(args.csv, _space_from_args(args))
    elif args.family:
        family = _family_nets(_load_family(args.family))
    else:
        raise ValueError("analyze needs --csv or --family")
    if not family:
        raise ValueError("empty family")
    window = family[0].window
    eps_grid = [float(t) for t in args.eps_grid.split(",")]
    names = args.suite.split(",")
    if "random-k" in names and args.seed is None:
        raise ValueError("--seed is required when the suite includes random-k")
    suite = _analyze.build_sampling_suite(window, names, seed=args.seed)
    report = _analyze.empirical_rate(family, eps_grid, suite)
    _write(_ser.analysis_report_to_dict(report), args.out)
    if args.summary_csv:
        with open(args.summary_csv, "w") as fh:
            fh.write("eps,sampling_id,cover_size,uncovered\n")
            for cell in report.cells:
                fh.write(
                    f"{cell.eps},{cell.sampling_id},{len(cell.cover_set)},{len(cell.uncovered)}\n"
                )
    return EXIT_REFUTED if report.refuted else EXIT_OK


def _demo_doc(scenario, size, seed):
    if scenario == "b-rate":
        window = make_omega_window(size)
        suite = _analyze.build_sampling_suite(
            window, ["identity", "successor", "doubling", "random-k"], seed=seed
        )
        rate = _meta.build_rate(suite, lambda t, eta: _families.rate_B(eta, window))
        family = list(_families.enumerate_family(_families.FamilySpec("B", window)))
        reports = [
            _ser.report_to_dict(_meta.verify_rate(family, rate, 0.5, sid)) for sid in sorted(suite)
        ]
        return {
            "scenario": scenario,
            "rate": _ser.rate_to_dict(rate),
            "reports": reports,
            "overall": all(r["overall"] for r in reports),
        }
    if scenario == "c-refute":
        window = make_omega_window(size)
        cert = _families.refute_C(set(range(size // 2)), window, 0.5)
        assert _meta.replay_certificate(cert)
        return {"scenario": scenario, "certificate": _ser.certificate_to_dict(cert)}
    if scenario == "d-refute":
        window = make_omega_window(size)
        cert = _families.refute_D_pointed(set(range(size // 2)), window)
        assert _meta.replay_certificate(cert)
        return {"scenario": scenario, "certificate": _ser.certificate_to_dict(cert)}
    if scenario == "paracompact":
        n_points = max(2, size // 4)
        window = make_omega_window(size)
        spec = _families.FamilySpec("paracompact", window, {"n_points": n_points})
        cert = _meta.refute_uniform(
            spec, [set(range(n_points - 1))], 0.5, seed=seed or 0, pointed=True
        )
        nets = _families.paracompact_nets(n_points, size)
        suite = _analyze.build_sampling_suite(window, ["identity", "successor"])
        verdict = _analyze.finite_space_ump_check(
            {f"x{p}": a for p, a in enumerate(nets)}, [0.5], suite
        )
        return {
            "scenario": scenario,
            "plain_uniform": _ser.ump_verdict_to_dict(verdict),
            "pointed_refutation": _ser.certificate_to_dict(cert),
        }
    if scenario == "cesaro":
        import math

        nets = _analyze.cesaro_rotation_nets([math.pi / 2, math.pi / 3], size)
        window = nets[0].window
        suite = _analyze.build_sampling_suite(window, ["identity", "doubling"])
        report = _analyze.empirical_rate(nets, [0.5, 0.25, 0.05], suite)
        return {"scenario": scenario, "report": _ser.analysis_report_to_dict(report)}
    if scenario == "lukasiewicz":
        grid = [i / 1000 for i in range(1001)]
        rows = []
        for n in (4, 8, 16, 32, 64, 128, 256):
            sup = max(abs(_mvlogic.approx_half(x, n) - x / 2) for x in grid)
            rows.append({"n": n, "sup_error": sup, "bound": 1 / (2 * n)})
        return {"scenario": scenario, "convergence": rows}
    raise ValueError(f"unknown demo scenario {scenario!r}")


def cmd_demo(args):
    doc = _demo_doc(args.scenario, args.size, args.seed)
    doc["schema_version"] = _ser.SCHEMA_VERSION
    doc["type"] = "demo"
    if args.scenario == "lukasiewicz" and not args.out:
        print(f"{'n':>6}  {'sup-grid error':>16}  {'bound 1/(2n)':>14}")
        for row in doc["convergence"]:
            print(f"{row['n']:>6}  {row['sup_error']:>16.10f}  {row['bound']:>14.10f}")
        return EXIT_OK
    _write(doc, args.out)
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="metastable", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="check a rate against a family over its samplings")
    v.add_argument("--family", required=True, help="family-spec JSON or a list of net JSON docs")
    v.add_argument("--rate", required=True, help="rate JSON document")
    v.add_argument("--eps", type=float, required=True)
    v.add_argument("--sampling", help="restrict to one registered sampling id")
    v.add_argument("--out", help="write the verify-result JSON here (default: stdout)")
    v.set_defaults(fn=cmd_verify)

    r = sub.add_parser("refute", help="search for a certificate defeating candidate sets")
    r.add_argument("--family", required=True)
    r.add_argument("--candidates", required=True, help="JSON list of candidate sets")
    r.add_argument("--eps", type=float, required=True)
    r.add_argument("--seed", type=int, required=True)
    r.add_argument("--budget", type=int, default=200)
    r.add_argument("--pointed", action="store_true")
    r.add_argument("--out")
    r.set_defaults(fn=cmd_refute)

    a = sub.add_parser("analyze", help="empirical metastability report for a numeric family")
    a.add_argument("--csv", help="rectangular numeric CSV, one row per index")
    a.add_argument("--family", help="family JSON (alternative to --csv)")
    a.add_argument("--space", default="unit-interval", choices=["unit-interval", "half-line", "binary", "euclidean"])
    a.add_argument("--dim", type=int, default=1, help="dimension for euclidean space")
    a.add_argument("--eps-grid", default="0.5,0.25,0.1")
    a.add_argument("--suite", default="identity,successor,doubling")
    a.add_argument("--seed", type=int, help="required when the suite includes random-k")
    a.add_argument("--out")
    a.add_argument("--summary-csv")
    a.set_defaults(fn=cmd_analyze)

    d = sub.add_parser("demo", help="run a named scenario")
    d.add_argument(
        "scenario",
        choices=["b-rate", "c-refute", "d-refute", "paracompact", "cesaro", "lukasiewicz"],
    )
    d.add_argument("--size", type=int, default=16, help="window size / horizon")
    d.add_argument("--seed", type=int)
    d.add_argument("--out")
    d.set_defaults(fn=cmd_demo)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (OSError, json.JSONDecodeError, _ser.SchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, WindowError, SpaceError, _meta.RateError, _families.FamilyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
