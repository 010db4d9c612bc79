"""Command line: ``projmono analyze | scan | construct | group``.

Reports go to stdout as JSON, diagnostics to stderr. Exit status is 0 on
success, 2 when a verification invariant fails, 3 when the numerics fail
after all retries and 1 for bad input.
"""

from __future__ import annotations

import argparse
import csv
import importlib
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import curve as curve_mod, polynomial
from .constructions import construct, grassmannian_sampler, schubert_sampler
from .curve import PlaneCurveImplicit, ProjectionCenter, make_pencil, make_pencil_implicit
from .errors import NumericFailure, ProjmonoError, VerificationFailure
from .jsonio import center_from_json, center_to_json, curve_from_json, encode_number
from .monodromy import monodromy
from .permgroup import format_cycles, group_from_cycles

log = logging.getLogger("projmono")

# the package re-exports the function ``monodromy`` under the submodule's name
mono_mod = importlib.import_module(".monodromy", __package__)

EXIT_OK, EXIT_INPUT, EXIT_VERIFICATION, EXIT_NUMERIC = 0, 1, 2, 3

TOLERANCES = {
    "eps_cluster": (curve_mod, "EPS_CLUSTER"),
    "cluster_delta": (curve_mod, "CLUSTER_DELTA"),
    "cluster_factor": (curve_mod, "CLUSTER_FACTOR"),
    "cluster_cap": (curve_mod, "CLUSTER_CAP"),
    "match_ratio": (mono_mod, "MATCH_RATIO"),
    "loop_radius": (mono_mod, "LOOP_RADIUS_FACTOR"),
    "gcd_zero": (polynomial, "GCD_ZERO_RTOL"),
    "gcd_keep": (polynomial, "GCD_KEEP_RTOL"),
    "square_rtol": (polynomial, "SQUARE_RTOL"),
}

_NUMBER = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}
_CHECKS = {
    "type": "object",
    "required": ["product_relation", "cycle_type_match", "riemann_hurwitz", "riemann_hurwitz_sum", "genus"],
    "properties": {
        "product_relation": {"type": "boolean"},
        "cycle_type_match": {"type": "boolean"},
        "multiplicities_integral": {"type": "boolean"},
        "riemann_hurwitz": {"type": "boolean"},
        "riemann_hurwitz_parity": {"type": "boolean"},
        "riemann_hurwitz_matches_discriminant": {"type": "boolean"},
        "riemann_hurwitz_sum": {"type": "integer"},
        "genus": {"type": "integer"},
    },
}
_GROUP = {
    "type": "object",
    "required": ["degree", "order", "classification", "block_systems", "decomposable"],
    "properties": {
        "degree": {"type": "integer"},
        "order": {"type": "string", "pattern": "^[0-9]+$"},
        "classification": {
            "enum": ["trivial", "intransitive", "symmetric", "alternating", "cyclic", "imprimitive", "primitive_other"]
        },
        "block_systems": {"type": "array"},
        "block_sizes": {"type": "array"},
        "decomposable": {"type": "boolean"},
        "generators": {"type": "array", "items": {"type": "string"}},
    },
}
REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["input", "d_L", "branch_points", "permutations", "group", "checks", "seed", "wall_clock_ms"],
    "properties": {
        "input": {"type": "object", "required": ["curve", "center"]},
        "mode": {"enum": ["auto", "exact", "float"]},
        "d_L": {"type": "integer", "minimum": 0},
        "base_degree": {"type": "integer", "minimum": 0},
        "branch_points": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["s", "at_infinity", "multiplicity", "fiber_multiplicities", "permutation"],
                "properties": {
                    "s": {"oneOf": [_NUMBER, {"type": "null"}]},
                    "at_infinity": {"type": "boolean"},
                    "multiplicity": {"type": "integer", "minimum": 1},
                    "fiber_multiplicities": {"type": "array", "items": {"type": "integer"}},
                    "multiplicity_estimate": {"type": "number"},
                    "permutation": {"type": "string"},
                },
            },
        },
        "permutations": {"type": "array", "items": {"type": "string"}},
        "group": _GROUP,
        "checks": _CHECKS,
        "seed": {"type": "integer"},
        "wall_clock_ms": {"type": "number"},
        "diagnostics": {"type": "object"},
    },
}
SCAN_SCHEMA = {
    "type": "object",
    "required": ["curve", "samples", "seed", "tally", "non_uniform"],
    "properties": {
        "curve": {"type": "string"},
        "samples": {"type": "integer", "minimum": 1},
        "seed": {"type": "integer"},
        "tally": {"type": "object", "additionalProperties": {"type": "integer"}},
        "non_uniform": {"type": "array"},
    },
}


# ---------------------------------------------------------------- reports


def _complex_json(z):
    if np.isinf(z):
        return None
    z = complex(z)
    return [z.real, z.imag]


def group_json(group) -> dict:
    cls = group.classify()
    return {
        "degree": group.degree,
        "order": str(group.order),
        "classification": cls.tag,
        "block_systems": [[list(b) for b in s] for s in cls.block_systems],
        "block_sizes": cls.block_sizes,
        "decomposable": cls.decomposable,
        "generators": [format_cycles(g) for g in group.generators],
    }


def _family_for(curve, center, mode, seed):
    if isinstance(curve, PlaneCurveImplicit):
        if isinstance(center, ProjectionCenter):
            raise ValueError("plane curves are projected from a point, not a center")
        return make_pencil_implicit(curve, center, seed)
    if not isinstance(center, ProjectionCenter):
        raise ValueError("rational curves need a center {H0, H1}")
    return make_pencil(curve, center, mode)


def analyze(curve, center, seed: int = 0, mode: str = "auto", echo: dict | None = None) -> dict:
    """Full pipeline for one center; returns the report dictionary."""
    t0 = time.perf_counter()
    family = _family_for(curve, center, mode, seed)
    res = monodromy(family, seed)
    bps = []
    for bp in res.branch_points:
        bps.append(
            {
                "s": _complex_json(bp.s),
                "at_infinity": bool(np.isinf(bp.s)),
                "multiplicity": int(bp.multiplicity),
                "fiber_multiplicities": list(bp.fiber_multiplicities),
                "multiplicity_estimate": float(bp.estimate),
                "permutation": format_cycles(bp.permutation),
            }
        )
    checks = {k: (bool(v) if isinstance(v, (bool, np.bool_)) else int(v)) for k, v in res.checks.items()}
    diag = res.diagnostics
    return {
        "input": echo or {"curve": None, "center": None},
        "mode": mode,
        "d_L": int(res.d_L),
        "base_degree": int(getattr(family, "base_degree", 0)),
        "branch_points": bps,
        "permutations": [format_cycles(p) for p in res.permutations],
        "group": group_json(res.group),
        "checks": checks,
        "seed": int(seed),
        "wall_clock_ms": round((time.perf_counter() - t0) * 1000.0, 3),
        "diagnostics": {
            "attempts": int(diag.get("attempts", 0)),
            "tracking_steps": int(diag.get("tracking_steps", 0)),
            "rejected_steps": int(diag.get("rejected_steps", 0)),
            "min_root_separation": _finite(diag.get("min_root_separation")),
            "singular_lines": int(diag.get("singular_lines", 0)),
        },
    }


def _finite(x):
    if x is None or not np.isfinite(x):
        return None
    return float(x)


def _sample_row(args):
    index, curve, center, seed, mode = args
    row = {"index": index, "center": _center_text(center)}
    try:
        rep = analyze(curve, center, seed, mode)
        g = rep["group"]
        row.update(
            classification=g["classification"],
            order=g["order"],
            block_sizes=json.dumps(g["block_sizes"]),
            status="ok",
        )
    except VerificationFailure as exc:
        row.update(classification="", order="", block_sizes="", status=f"verification:{exc.invariant}")
    except (NumericFailure, ValueError, ProjmonoError) as exc:
        row.update(classification="", order="", block_sizes="", status=f"{type(exc).__name__}")
    return row


def _center_text(center) -> str:
    return json.dumps(center_to_json(center), separators=(",", ":"))


def scan(curve, samples: int, seed: int = 0, through=None, mode: str = "auto", jobs: int = 1):
    """Classify ``samples`` seeded centers; returns ``(summary, rows)``."""
    if samples < 1:
        raise ValueError("need at least one sample")
    if isinstance(curve, PlaneCurveImplicit):
        rng = np.random.default_rng(seed)
        centers = [tuple(rng.standard_normal(3)) for _ in range(samples)]
    elif through is not None:
        centers = schubert_sampler(through, seed).sample(samples)
    else:
        centers = grassmannian_sampler(curve.r, seed).sample(samples)
    tasks = [(i, curve, c, seed + i, mode) for i, c in enumerate(centers)]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            rows = list(pool.map(_sample_row, tasks))
    else:
        rows = [_sample_row(t) for t in tasks]
    tally = {}
    for row in rows:
        key = row["classification"] if row["status"] == "ok" else "failed"
        tally[key] = tally.get(key, 0) + 1
    non_uniform = [
        {"index": r["index"], "center": json.loads(r["center"]), "classification": r["classification"], "order": r["order"]}
        for r in rows
        if r["status"] == "ok" and r["classification"] != "symmetric"
    ]
    summary = {
        "curve": curve.name or ("plane_implicit" if isinstance(curve, PlaneCurveImplicit) else "rational"),
        "samples": samples,
        "seed": seed,
        "through": None if through is None else [encode_number(v) for v in through],
        "tally": tally,
        "non_uniform": non_uniform,
    }
    return summary, rows


CSV_COLUMNS = ["index", "center", "classification", "order", "block_sizes", "status"]


def write_csv(path, rows):
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        w.writeheader()
        w.writerows(rows)


# ---------------------------------------------------------------- argparse


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _load(path):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _tolerance(text):
    name, _, value = text.partition("=")
    if name not in TOLERANCES or not value:
        raise argparse.ArgumentTypeError(f"expected name=value with name in {sorted(TOLERANCES)}")
    return name, float(value)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="projmono", description="Monodromy groups of linear projections of curves.")
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--seed", type=int, default=0)
        mode = sp.add_mutually_exclusive_group()
        mode.add_argument("--exact", dest="mode", action="store_const", const="exact")
        mode.add_argument("--float", dest="mode", action="store_const", const="float")
        sp.set_defaults(mode="auto")
        sp.add_argument("--tolerance", type=_tolerance, action="append", default=[], metavar="NAME=VALUE")

    a = sub.add_parser("analyze", help="classify the projection from one center")
    a.add_argument("curve")
    a.add_argument("center")
    common(a)

    s = sub.add_parser("scan", help="classify seeded random centers")
    s.add_argument("curve")
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--through", help="JSON {point: [...]}: sample centers through this point")
    s.add_argument("--out", help="prefix for the per-sample CSV")
    s.add_argument("--jobs", type=int, default=1)
    common(s)

    c = sub.add_parser("construct", help="emit curve and center JSON for a named construction")
    c.add_argument("name")
    c.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")
    c.add_argument("--out", help="prefix for <prefix>.curve.json and <prefix>.center.json")

    g = sub.add_parser("group", help="classify the group generated by cycle strings")
    g.add_argument("cycles", nargs="+")
    g.add_argument("--degree", type=int)
    return p


def _dump(obj):
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def run(args) -> int:
    for name, value in getattr(args, "tolerance", []):
        module, attr = TOLERANCES[name]
        setattr(module, attr, value)
        log.info("tolerance %s = %g", name, value)

    if args.command == "group":
        _dump(group_json(group_from_cycles(args.cycles, args.degree)))
        return EXIT_OK

    if args.command == "construct":
        params = dict(kv.split("=", 1) for kv in args.param)
        bundle = construct(args.name, params)
        if args.out:
            with open(f"{args.out}.curve.json", "w") as fh:
                json.dump(bundle["curve"], fh, indent=2)
            with open(f"{args.out}.center.json", "w") as fh:
                json.dump(bundle["center"], fh, indent=2)
            if "through" in bundle:
                with open(f"{args.out}.through.json", "w") as fh:
                    json.dump(bundle["through"], fh, indent=2)
            log.info("wrote %s.curve.json and %s.center.json", args.out, args.out)
        _dump(bundle)
        return EXIT_OK

    curve_doc = _load(args.curve)
    curve = curve_from_json(curve_doc)

    if args.command == "analyze":
        center_doc = _load(args.center)
        center = center_from_json(center_doc)
        _dump(analyze(curve, center, args.seed, args.mode, {"curve": curve_doc, "center": center_doc}))
        return EXIT_OK

    through = None
    if args.through:
        through = center_from_json(_load(args.through))
        if isinstance(through, ProjectionCenter):
            raise ValueError("--through expects {\"point\": [...]}")
    summary, rows = scan(curve, args.samples, args.seed, through, args.mode, args.jobs)
    if args.out:
        write_csv(f"{args.out}.csv", rows)
        log.info("wrote %s.csv", args.out)
    _dump(summary)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return run(args)
    except VerificationFailure as exc:
        print(f"verification failed ({exc.invariant}): {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    except NumericFailure as exc:
        print(f"numeric failure ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ProjmonoError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
