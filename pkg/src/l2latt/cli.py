"""Command-line entry point.

Subcommands: group describe | parabolic list | ns bound | torsion verdict
| corner strata | density estimate | qform {isotropy, pipeline}.

Success prints a JSON report envelope on stdout and exits 0; failures
print a structured JSON error on stderr and exit nonzero.  All output is
deterministic given the flags; density estimation uses an explicit seed
(default 42, echoed in the report).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import nscalc, parabolics, qforms, realforms, report, spectral, tits, torsion

DEFAULT_SEED = 42


class CliError(Exception):
    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


def _load_index(path: str) -> tuple[tits.TitsIndex, dict]:
    try:
        with open(path) as fh:
            data = json.load(fh)
        return tits.TitsIndex.from_json(data), data
    except OSError as exc:
        raise CliError("io-error", f"cannot read index file {path}: {exc}")
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise CliError("malformed-file", f"malformed index file {path}: {exc}")


def _cmd_group_describe(args) -> dict:
    g = realforms.derive(args.family, *_family_params(args))
    return report.make_report(
        "group describe",
        {"family": args.family, "params": args.params},
        g.to_json(),
    )


def _family_params(args):
    out = []
    for p in args.params:
        out.append(int(p) if p.lstrip("-").isdigit() else p)
    return tuple(out)


def _cmd_parabolic_list(args) -> dict:
    index, _ = _load_index(args.index)
    rrs = tits.restrict(index)
    rows = []
    for p in parabolics.enumerate_parabolics(rrs):
        rows.append(
            {
                "subset": sorted(p.I),
                "split_rank": p.split_rank,
                "dim_N": p.dim_N,
                "d": p.growth_degree,
                "levi_components": [list(o) for o in p.levi_system.simple_restricted],
            }
        )
    return report.make_report(
        "parabolic list",
        {"index": index.to_json()},
        {"restricted": rrs.to_json(), "parabolics": rows},
    )


def _cmd_ns_bound(args) -> dict:
    index, raw = _load_index(args.index)
    rrs = tits.restrict(index)
    levi = realforms.parse_form(args.levi)
    group_spec = args.group or raw.get("real_form")
    if group_spec is None:
        raise CliError(
            "missing-group",
            "the ambient real form is needed: pass --group or embed "
            '"real_form" in the index file',
        )
    g = realforms.parse_form(group_spec)
    p_min = parabolics.minimal_parabolic(rrs).annotate(levi)
    bound, cert = nscalc.rank_one_bound(g, rrs, p_min)
    return report.make_report(
        "ns bound",
        {"index": index.to_json(), "levi": args.levi, "group": group_spec},
        {"bound": bound.render(), "q": g.middle_dimension()},
        certificate=cert.to_json(),
    )


def _cmd_torsion_verdict(args) -> dict:
    g = realforms.derive(args.family, *_family_params(args))
    return report.make_report(
        "torsion verdict",
        {"family": args.family, "params": args.params},
        torsion.torsion_verdict(g).to_json(),
    )


def _cmd_corner_strata(args) -> dict:
    strata = torsion.corner_strata(args.l)
    total = sum(s["contribution"] for s in strata)
    return report.make_report(
        "corner strata",
        {"l": args.l},
        {"strata": strata, "count": len(strata), "alternating_sum": total},
    )


def _cmd_density_estimate(args) -> dict:
    try:
        complex_ = spectral.AbelianCWComplex.from_file(args.complex)
    except OSError as exc:
        raise CliError("io-error", f"cannot read complex file {args.complex}: {exc}")
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise CliError("malformed-file", f"malformed complex file {args.complex}: {exc}")
    import numpy as np

    grid = np.geomspace(args.grid_min, args.grid_max, args.grid_points)
    est = spectral.estimate_density(
        complex_, args.degree, grid, args.samples, args.seed, workers=args.workers
    )
    results = est.to_json()
    try:
        results["ns_fit"] = spectral.estimate_ns(est)
    except spectral.WindowTooSmall as exc:
        results["ns_fit"] = {"failed": str(exc)}
    if args.table:
        with open(args.table, "w") as fh:
            fh.write(est.to_table())
        results["table_file"] = args.table
    if args.plot:
        from .figures import render_density_figure

        fit = results["ns_fit"] if "exponent" in results.get("ns_fit", {}) else None
        results["figure_file"] = render_density_figure(est, args.plot, fit)
    return report.make_report(
        "density estimate",
        {
            "complex": complex_.to_json(),
            "degree": args.degree,
            "samples": args.samples,
            "grid": [args.grid_min, args.grid_max, args.grid_points],
            "workers": args.workers,
        },
        results,
        seed=args.seed,
    )


def _cmd_qform_isotropy(args) -> dict:
    coeffs = [c for c in args.coeffs.split(",") if c.strip()]
    form = qforms.DiagonalForm.from_rationals(coeffs)
    rep = qforms.isotropy_search(form, args.height)
    return report.make_report(
        "qform isotropy",
        {"coeffs": args.coeffs, "height": args.height},
        rep.to_json(),
    )


def _cmd_qform_pipeline(args) -> dict:
    results = qforms.family_pipeline(args.p, args.search_height)
    cert = results.pop("certificate")
    return report.make_report(
        "qform pipeline",
        {"p": args.p, "search_height": args.search_height},
        results,
        certificate=cert,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="l2latt", description="exact L2-invariant calculators and certificates"
    )
    sub = parser.add_subparsers(dest="topic", required=True)

    group = sub.add_parser("group").add_subparsers(dest="action", required=True)
    describe = group.add_parser("describe")
    describe.add_argument("family")
    describe.add_argument("params", nargs="*")
    describe.set_defaults(func=_cmd_group_describe)

    parab = sub.add_parser("parabolic").add_subparsers(dest="action", required=True)
    plist = parab.add_parser("list")
    plist.add_argument("--index", required=True)
    plist.set_defaults(func=_cmd_parabolic_list)

    ns = sub.add_parser("ns").add_subparsers(dest="action", required=True)
    bound = ns.add_parser("bound")
    bound.add_argument("--index", required=True)
    bound.add_argument("--levi", required=True)
    bound.add_argument("--group", default=None)
    bound.set_defaults(func=_cmd_ns_bound)

    tors = sub.add_parser("torsion").add_subparsers(dest="action", required=True)
    verdict = tors.add_parser("verdict")
    verdict.add_argument("family")
    verdict.add_argument("params", nargs="*")
    verdict.set_defaults(func=_cmd_torsion_verdict)

    corner = sub.add_parser("corner").add_subparsers(dest="action", required=True)
    strata = corner.add_parser("strata")
    strata.add_argument("--l", type=int, required=True)
    strata.set_defaults(func=_cmd_corner_strata)

    dens = sub.add_parser("density").add_subparsers(dest="action", required=True)
    est = dens.add_parser("estimate")
    est.add_argument("--complex", required=True)
    est.add_argument("--degree", type=int, required=True)
    est.add_argument("--samples", type=int, default=100000)
    est.add_argument("--seed", type=int, default=DEFAULT_SEED)
    est.add_argument("--workers", type=int, default=1)
    est.add_argument("--grid-min", type=float, default=1e-3)
    est.add_argument("--grid-max", type=float, default=16.0)
    est.add_argument("--grid-points", type=int, default=80)
    est.add_argument("--table", default=None, help="write a gnuplot-ready table here")
    est.add_argument("--plot", default=None, help="render a figure (PNG) here")
    est.set_defaults(func=_cmd_density_estimate)

    qf = sub.add_parser("qform").add_subparsers(dest="action", required=True)
    iso = qf.add_parser("isotropy")
    iso.add_argument("--coeffs", required=True)
    iso.add_argument("--height", type=int, required=True)
    iso.set_defaults(func=_cmd_qform_isotropy)
    pipe = qf.add_parser("pipeline")
    pipe.add_argument("--p", type=int, required=True)
    pipe.add_argument("--search-height", type=int, default=100)
    pipe.set_defaults(func=_cmd_qform_pipeline)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        rep = args.func(args)
    except CliError as exc:
        json.dump({"error": {"type": exc.kind, "message": str(exc)}}, sys.stderr)
        sys.stderr.write("\n")
        return 2
    except (ValueError, tits.InvalidTitsIndex) as exc:
        json.dump(
            {"error": {"type": type(exc).__name__, "message": str(exc)}}, sys.stderr
        )
        sys.stderr.write("\n")
        return 2
    json.dump(rep, sys.stdout, indent=1)
    sys.stdout.write("\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
