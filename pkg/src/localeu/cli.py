"""Command-line front end.

Exit codes: 0 ok, 2 schema/usage error, 3 resource limit, 4 seed instability,
5 validation failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import jsonschema

from .behrend import (
    BehrendData,
    ConeComponent,
    dt_invariant,
    intersection_with_zero_section,
    kiem_li_localized,
    lagrangify,
)
from .constructible import (
    ConstructibleFunction,
    Cycle,
    EuMatrix,
    StratifiedSpace,
    eu_transform,
    inverse_transform,
    weighted_chi_levels,
    weighted_chi_strata,
)
from .errors import (
    NotOnHypersurfaceError,
    NotSquarefreeError,
    ResourceLimitError,
    SeedInstabilityError,
    ValidationError,
)
from .euler import eu_from_segre, property_harness
from .nash import gauss_graph, segre_fiber
from .poly import DEFAULT_BUDGET, Polynomial, Ring, step_budget
from .selftest import run_selftest

EXIT_OK, EXIT_SCHEMA, EXIT_RESOURCE, EXIT_SEED, EXIT_VALIDATION = 0, 2, 3, 4, 5

KINDS = ("eu", "segre", "strat-chi", "transform", "behrend", "kiemli", "selftest")


class SchemaError(Exception):
    pass


_INT = {"type": "integer"}
_STRATUM = {
    "type": "object",
    "required": ["name", "dim", "chi"],
    "properties": {
        "name": {"type": "string"},
        "dim": {"type": "integer", "minimum": 0},
        "chi": _INT,
        "fixed": {"type": "boolean"},
        "covers": {"type": "array", "items": {"type": "string"}},
    },
    "additionalProperties": False,
}
_EU_ENTRY = {
    "type": "object",
    "required": ["stratum", "cycle", "value"],
    "properties": {
        "stratum": {"type": "string"},
        "cycle": {"type": "string"},
        "value": _INT,
        "provenance": {"type": "string"},
    },
    "additionalProperties": False,
}
_VALUES = {"type": "object", "additionalProperties": _INT}
SPACE_SCHEMA = {
    "oneOf": [
        {"type": "array", "items": _STRATUM},
        {
            "type": "object",
            "required": ["strata"],
            "properties": {
                "strata": {"type": "array", "items": _STRATUM},
                "eu": {"type": "array", "items": _EU_ENTRY},
                "function": _VALUES,
                "cycle": _VALUES,
            },
            "additionalProperties": False,
        },
    ]
}
_COMPONENT = {
    "type": "object",
    "required": ["support", "dim"],
    "properties": {
        "support": {"type": "string"},
        "dim": {"type": "integer", "minimum": 0},
        "mult": {"type": "integer", "minimum": 1},
    },
    "additionalProperties": False,
}
CONE_SCHEMA = {
    "oneOf": [
        {"type": "array", "items": _COMPONENT},
        {
            "type": "object",
            "required": ["components"],
            "properties": {"components": {"type": "array", "items": _COMPONENT}},
            "additionalProperties": False,
        },
    ]
}
JOB_SCHEMA = {
    "type": "object",
    "required": ["kind"],
    "properties": {
        "kind": {"enum": list(KINDS)},
        "seed": _INT,
        "budget": {"type": "integer", "minimum": 1},
        "payload": {
            "type": "object",
            "properties": {
                "poly": {"type": "string"},
                "point": {"type": "array", "items": {"type": ["integer", "string"]}},
                "vars": {"type": "array", "items": {"type": "string"}},
                "space": {"type": ["string", "array", "object"]},
                "cone": {"type": ["string", "array", "object"]},
                "fixed": {"type": "array", "items": {"type": "string"}},
                "components": {"type": "array", "items": {"type": "string"}},
            },
            "additionalProperties": False,
        },
    },
    "additionalProperties": False,
}


def _validate(doc, schema, what):
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as exc:
        raise SchemaError(f"invalid {what}: {exc.message}") from None
    return doc


def _load(source, schema, what):
    if isinstance(source, (dict, list)):
        return _validate(source, schema, what)
    try:
        doc = json.loads(Path(source).read_text(encoding="utf-8"))
    except OSError as exc:
        raise SchemaError(f"cannot read {what} {source}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{what} {source} is not valid JSON: {exc}") from None
    return _validate(doc, schema, what)


def _space_doc(source) -> dict:
    doc = _load(source, SPACE_SCHEMA, "space document")
    return {"strata": doc} if isinstance(doc, list) else doc


def _space_and_eu(doc):
    X = StratifiedSpace.from_json(doc["strata"])
    return X, EuMatrix.from_json(X, doc.get("eu", []))


def _cone(source) -> list[ConeComponent]:
    doc = _load(source, CONE_SCHEMA, "cone document")
    items = doc if isinstance(doc, list) else doc["components"]
    return [ConeComponent.from_json(c) for c in items]


def _polynomial(text, names=None) -> Polynomial:
    ring = Ring(tuple(names)) if names else None
    try:
        return Polynomial.parse(text, ring)
    except (ValueError, KeyError) as exc:
        raise SchemaError(f"cannot parse polynomial {text!r}: {exc}") from None


def _point(items, n) -> list[Fraction]:
    if isinstance(items, str):
        items = [t for t in items.split(",") if t.strip()]
    try:
        P = [Fraction(str(t).strip()) for t in items]
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad point coordinate: {exc}") from None
    if len(P) != n:
        raise SchemaError(f"point has {len(P)} coordinates but the polynomial has {n} variables")
    return P


def _seeds(seed):
    seed = 0 if seed is None else seed
    return (seed, seed + 1, seed + 2)


def _frac(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else str(x)


# -- commands -------------------------------------------------------------------------

def cmd_segre(p: dict, seed) -> dict:
    f = _polynomial(p["poly"], p.get("vars"))
    P = _point(p.get("point", "0," * f.ring.nvars), f.ring.nvars)
    seeds = _seeds(seed)
    s = segre_fiber(gauss_graph(f), P, seeds)
    return {
        "poly": str(f),
        "vars": list(f.ring.names),
        "point": [_frac(x) for x in P],
        "seeds": list(seeds),
        "segre": list(s.entries),
        "eu": eu_from_segre(s.entries),
        "multidegrees": {str(k): t.as_json() for k, t in s.tables.items()},
    }


def cmd_eu(p: dict, seed) -> dict:
    f = _polynomial(p["poly"], p.get("vars"))
    P = _point(p.get("point", "0," * f.ring.nvars), f.ring.nvars)
    comps = [_polynomial(c, f.ring.names) for c in p.get("components", [])] or None
    seeds = _seeds(seed)
    report = property_harness(f, P, comps, seeds)
    out = report.as_json()
    out.update(
        vars=list(f.ring.names),
        point=[_frac(x) for x in P],
        seeds=list(seeds),
        multidegrees={str(k): t.as_json() for k, t in report.segre.tables.items()},
    )
    if not report.ok:
        out["_exit"] = EXIT_VALIDATION
    return out


def cmd_strat_chi(p: dict, seed) -> dict:
    doc = _space_doc(p["space"])
    X, _ = _space_and_eu(doc)
    m = ConstructibleFunction(X, doc.get("function", {}))
    a, b = weighted_chi_strata(X, m), weighted_chi_levels(X, m)
    out = {"function": m.as_json(), "chi_strata": a, "chi_levels": b, "chi": a}
    if a != b:
        out["_exit"] = EXIT_VALIDATION
    return out


def cmd_transform(p: dict, seed) -> dict:
    doc = _space_doc(p["space"])
    X, M = _space_and_eu(doc)
    out = {"eu": M.as_json()}
    if "cycle" in doc:
        c = Cycle(doc["cycle"])
        for label in c.support():
            X[label]
        m = eu_transform(c, M)
        out["cycle"] = c.as_json()
        out["function"] = m.as_json()
        out["round_trip"] = inverse_transform(m, M) == c
    if "function" in doc:
        m = ConstructibleFunction(X, doc["function"])
        out["inverse"] = {"function": m.as_json(), "cycle": inverse_transform(m, M).as_json()}
    if "cycle" not in doc and "function" not in doc:
        raise SchemaError("transform needs a 'cycle' or 'function' entry in the space document")
    if out.get("round_trip") is False:
        out["_exit"] = EXIT_VALIDATION
    return out


def _behrend_data(p: dict) -> BehrendData:
    if "cone" not in p:
        raise SchemaError("a cone document is required (--cone)")
    doc = _space_doc(p["space"])
    X, M = _space_and_eu(doc)
    return BehrendData(X, _cone(p["cone"]), M)


def cmd_behrend(p: dict, seed) -> dict:
    bd = _behrend_data(p)
    V = lagrangify(bd.cycle, bd.space)
    return {
        "cycle": bd.cycle.as_json(),
        "nu": bd.nu.as_json(),
        "dt": dt_invariant(bd),
        "lagrangian": V.as_json(),
        "intersection": intersection_with_zero_section(V, bd),
        "eu": bd.eu.as_json(),
    }


def cmd_kiemli(p: dict, seed) -> dict:
    bd = _behrend_data(p)
    fixed = p.get("fixed")
    return kiem_li_localized(bd, fixed).as_json()


def cmd_selftest(p: dict, seed) -> dict:
    results = [{"name": n, "expected": e, "got": g, "pass": e == g} for n, e, g in run_selftest()]
    out = {"checks": results, "ok": all(r["pass"] for r in results)}
    if not out["ok"]:
        out["_exit"] = EXIT_VALIDATION
    return out


COMMANDS = {
    "eu": cmd_eu,
    "segre": cmd_segre,
    "strat-chi": cmd_strat_chi,
    "transform": cmd_transform,
    "behrend": cmd_behrend,
    "kiemli": cmd_kiemli,
    "selftest": cmd_selftest,
}


def run(job: dict) -> tuple[int, dict]:
    """Execute a job document; returns ``(exit code, report)``."""
    try:
        _validate(job, JOB_SCHEMA, "job document")
        kind = job["kind"]
        payload = dict(job.get("payload", {}))
        required = {"eu": ["poly"], "segre": ["poly"], "strat-chi": ["space"],
                    "transform": ["space"], "behrend": ["space", "cone"], "kiemli": ["space", "cone"]}
        missing = [k for k in required.get(kind, []) if k not in payload]
        if missing:
            raise SchemaError(f"{kind} job is missing {', '.join(missing)}")
        with step_budget(job.get("budget", DEFAULT_BUDGET)):
            report = COMMANDS[kind](payload, job.get("seed"))
        code = report.pop("_exit", EXIT_OK)
        return code, {"kind": kind, "status": "ok" if code == EXIT_OK else "failed", "result": report}
    except SchemaError as exc:
        return EXIT_SCHEMA, _error("schema", exc)
    except ResourceLimitError as exc:
        return EXIT_RESOURCE, _error("resource-limit", exc)
    except SeedInstabilityError as exc:
        return EXIT_SEED, _error("seed-instability", exc)
    except (ValidationError, NotSquarefreeError, NotOnHypersurfaceError) as exc:
        return EXIT_VALIDATION, _error("validation", exc)


def _error(kind, exc) -> dict:
    return {"status": "error", "error": kind, "message": str(exc)}


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, default=str)


def render_text(report: dict, indent: int = 0) -> str:
    lines = []
    pad = "  " * indent
    for k, v in report.items():
        if isinstance(v, dict) and v:
            lines.append(f"{pad}{k}:")
            lines.append(render_text(v, indent + 1))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{pad}{k}:")
            for item in v:
                lines.append(pad + "  - " + ", ".join(f"{a}={b}" for a, b in item.items()))
        else:
            lines.append(f"{pad}{k}: {v}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="localeu",
        description="Local Euler obstructions of hypersurfaces and constructible-function bookkeeping.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="base seed (three consecutive seeds are used)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="Groebner step budget")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, text in (("eu", "local Euler obstruction of V(f) at a point"),
                       ("segre", "Segre vector of the Nash fibre of V(f) over a point")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--poly", required=True, help='hypersurface equation, e.g. "y*u - x*v"')
        p.add_argument("--point", help="comma-separated coordinates (default: origin)")
        p.add_argument("--vars", help="comma-separated variable order (default: natural sort)")
        if name == "eu":
            p.add_argument("--components", action="append", default=[],
                           help="declared factor of f (repeatable)")
    for name, needs_cone, text in (
        ("strat-chi", False, "weighted Euler characteristic of a constructible function"),
        ("transform", False, "Euler obstruction transform of a cycle and its inverse"),
        ("behrend", True, "Behrend function and weighted Euler characteristic"),
        ("kiemli", True, "localized invariant on the fixed locus of a torus action"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--space", required=True, help="stratified space document (JSON)")
        if needs_cone:
            p.add_argument("--cone", required=True, help="cone component document (JSON)")
        if name == "kiemli":
            p.add_argument("--fixed", help="comma-separated fixed strata (default: the fixed flags)")
    sub.add_parser("selftest", parents=[common], help="run the built-in property checks")
    p = sub.add_parser("run", parents=[common], help="execute a JSON job document")
    p.add_argument("job", help="job document path")
    return parser


def _job_from_args(args) -> dict:
    if args.command == "run":
        try:
            job = json.loads(Path(args.job).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise SchemaError(f"cannot load job document: {exc}") from None
        if isinstance(job, dict):
            if args.seed is not None:
                job["seed"] = args.seed
            job.setdefault("budget", args.budget)
        return job
    payload: dict = {}
    if getattr(args, "poly", None) is not None:
        payload["poly"] = args.poly
        if args.point is not None:
            payload["point"] = [t.strip() for t in args.point.split(",") if t.strip()]
        if args.vars:
            payload["vars"] = [v.strip() for v in args.vars.split(",") if v.strip()]
        if getattr(args, "components", None):
            payload["components"] = args.components
    for key in ("space", "cone"):
        if getattr(args, key, None) is not None:
            payload[key] = getattr(args, key)
    if getattr(args, "fixed", None):
        payload["fixed"] = [t.strip() for t in args.fixed.split(",") if t.strip()]
    job = {"kind": args.command, "payload": payload, "budget": args.budget}
    if args.seed is not None:
        job["seed"] = args.seed
    return job


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        job = _job_from_args(args)
    except SchemaError as exc:
        code, report = EXIT_SCHEMA, _error("schema", exc)
    else:
        code, report = run(job)
    if args.json:
        print(render_json(report))
    else:
        print(render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
