"""Command-line front end.

Contexts come from a YAML document (path via --context, or '-' for
stdin); without one, field names resolve to built-in family stages
("exe1" or "exe1:2").  Output is human-readable by default and a
versioned JSON report with --json; identical invocations produce
identical bytes.

Exit codes: 0 success, 2 parse/usage errors, 3 ambient-cap errors,
4 internal inconsistencies (bug witnesses, e.g. oracle disagreement).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field as dc_field

import yaml

from . import report as rpt
from .exprs import ExprError, parse_element
from .invariants import HorizonInsufficient, InternalInconsistency, \
    di as inv_di
from .perfect import CapExceeded, Context, PerfElem
from .subfields import Subfield
from .towers import FAMILIES, NotConstructible, TowerFamily, family as make_family


class ConfigError(ValueError):
    pass


@dataclass
class ContextConfig:
    """A parsed configuration document: context, bindings, fields, families."""

    ctx: Context
    bindings: dict = dc_field(default_factory=dict)
    fields: dict = dc_field(default_factory=dict)       # name -> list[PerfElem]
    families: dict = dc_field(default_factory=dict)     # name -> TowerFamily


RESERVED = {"rt"}


def load_config(text: str) -> ContextConfig:
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"invalid YAML: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("configuration must be a mapping")
    try:
        p = int(doc["p"])
        variables = tuple(str(v) for v in doc["variables"])
    except KeyError as exc:
        raise ConfigError(f"missing required key {exc}") from exc
    cap = int(doc.get("ambient_cap", 6))
    for v in variables:
        if v in RESERVED:
            raise ConfigError(f"variable name {v!r} is reserved")
    try:
        ctx = Context(p, variables, cap)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    cfg = ContextConfig(ctx)
    names_seen = set(variables)
    for name, expr in (doc.get("bindings") or {}).items():
        name = str(name)
        if name in names_seen or name in RESERVED:
            raise ConfigError(f"duplicate or reserved name {name!r}")
        names_seen.add(name)
        cfg.bindings[name] = parse_element(ctx, str(expr), cfg.bindings)
    for name, exprs in (doc.get("fields") or {}).items():
        name = str(name)
        if name in names_seen or name in RESERVED:
            raise ConfigError(f"duplicate or reserved name {name!r}")
        names_seen.add(name)
        if not isinstance(exprs, list):
            raise ConfigError(f"field {name!r} must map to a list of expressions")
        cfg.fields[name] = [parse_element(ctx, str(e), cfg.bindings)
                            for e in exprs]
    for name, spec in (doc.get("families") or {}).items():
        name = str(name)
        if name in names_seen or name in FAMILIES:
            raise ConfigError(f"duplicate or built-in family name {name!r}")
        names_seen.add(name)
        cfg.families[name] = _custom_family(ctx, name, spec, cfg.bindings)
    return cfg


def _custom_family(ctx, name, entry, bindings) -> TowerFamily:
    if not isinstance(entry, dict):
        raise ConfigError(f"family {name!r} must be a mapping")
    max_stage = int(entry.get("max_stage", 3))
    schedule_map = entry.get("schedule")
    template = entry.get("template")
    if schedule_map is None and template is None:
        raise ConfigError(f"family {name!r} needs a schedule or a template")

    def schedule(n):
        if schedule_map is not None:
            if n not in schedule_map and str(n) not in schedule_map:
                raise ConfigError(f"family {name!r} has no stage {n}")
            exprs = schedule_map.get(n, schedule_map.get(str(n)))
        else:
            exprs = [t.replace("$n", str(n)) for t in template] if n else []
        return [parse_element(ctx, str(e), bindings) for e in exprs]

    return TowerFamily(name, ctx, schedule, max_stage,
                       params={"source": "config"})


# ----------------------------------------------------------------------
# Field and family resolution
# ----------------------------------------------------------------------


def resolve_family(cfg, name, params) -> TowerFamily:
    if cfg is not None and name in cfg.families:
        if params:
            raise ConfigError("config families take no parameters")
        return cfg.families[name]
    if name in FAMILIES:
        return make_family(name, **params)
    raise ConfigError(f"unknown family {name!r}")


def resolve_field(cfg, name) -> tuple:
    """Resolve a field reference to (Subfield, display-name)."""
    if cfg is not None:
        if name in cfg.fields:
            return Subfield.span(cfg.ctx, cfg.fields[name]), name
        if ":" in name:
            base, _, stage = name.partition(":")
            if base in cfg.families:
                fam = cfg.families[base]
                return fam.stage(int(stage)), name
        if name in cfg.families:
            fam = cfg.families[name]
            return fam.stage(fam.max_stage), name
        raise ConfigError(f"unknown field {name!r} in the configuration")
    base, _, stage = name.partition(":")
    if base in FAMILIES:
        fam = make_family(base)
        n = int(stage) if stage else fam.max_stage
        return fam.stage(n), name
    raise ConfigError(
        f"unknown field {name!r}; without --context only built-in family "
        f"stages ({', '.join(sorted(set(FAMILIES) - {'exe3'}))}) resolve")


def parse_params(text) -> dict:
    out = {}
    if not text:
        return out
    for part in text.split(","):
        if "=" not in part:
            raise ConfigError(f"bad parameter {part!r}; expected key=value")
        k, _, v = part.partition("=")
        out[k.strip()] = int(v)
    return out


# ----------------------------------------------------------------------
# Commands
# ----------------------------------------------------------------------


def _emit(args, rep: dict) -> None:
    if args.json:
        print(rpt.to_json(rep))
    else:
        print(rpt.to_text(rep))


def cmd_invariants(args, cfg):
    K, name = resolve_field(cfg, args.field)
    _emit(args, rpt.invariant_report(K, name=name, oracle=args.oracle))


def cmd_rbase(args, cfg):
    K, name = resolve_field(cfg, args.field)
    if args.oracle:
        rpt.oracle_checks(K)
    _emit(args, rpt.rbase_report(K, name=name))


def cmd_modular(args, cfg):
    K, name = resolve_field(cfg, args.field)
    method = "both" if args.oracle else args.method
    _emit(args, rpt.modular_report(K, method=method, name=name))


def cmd_truncate(args, cfg):
    K, name = resolve_field(cfg, args.field)
    trunc = K.truncation(args.n)
    rep = {
        "schema_version": rpt.SCHEMA_VERSION,
        "kind": "truncate",
        "field": name,
        "n": args.n,
        "degree_log": trunc.field.degree_log,
        "generators": [g.render() for g in trunc.field.gens],
    }
    if args.json:
        print(rpt.to_json(rep))
    else:
        print(f"k_{args.n} of {name}: degree p^{rep['degree_log']}")
        for g in rep["generators"]:
            print(f"  {g}")


def _binary(args, cfg, op_name):
    K, kname = resolve_field(cfg, args.field1)
    L, lname = resolve_field(cfg, args.field2)
    if K.ctx != L.ctx:
        raise ConfigError("the two fields live in different contexts")
    result = K.compositum(L) if op_name == "compositum" else K.intersect(L)
    rep = {
        "schema_version": rpt.SCHEMA_VERSION,
        "kind": op_name,
        "fields": [kname, lname],
        "degree_log": result.degree_log,
        "generators": [g.render() for g in result.gens],
        "linearly_disjoint": K.linearly_disjoint(L),
    }
    if args.json:
        print(rpt.to_json(rep))
    else:
        print(f"{op_name}({kname}, {lname}): degree p^{result.degree_log}; "
              f"linearly disjoint over k: {rep['linearly_disjoint']}")


def cmd_intersect(args, cfg):
    _binary(args, cfg, "intersect")


def cmd_compositum(args, cfg):
    _binary(args, cfg, "compositum")


def cmd_member(args, cfg):
    K, name = resolve_field(cfg, args.field)
    bindings = cfg.bindings if cfg else None
    e = parse_element(K.ctx, args.element, bindings)
    verdict = K.member(e)
    rep = {
        "schema_version": rpt.SCHEMA_VERSION,
        "kind": "member",
        "element": e.render(),
        "field": name,
        "verdict": verdict,
    }
    if args.json:
        print(rpt.to_json(rep))
    else:
        print(f"{args.element} in {name}: {verdict}")


def cmd_family(args, cfg):
    params = parse_params(args.params)
    if args.n is not None:
        params["n"] = args.n
    fam = resolve_family(cfg, args.name, params)
    if args.sub == "invariants":
        n = args.n if args.n is not None else fam.max_stage
        K = fam.stage(n)
        utable = None
        if args.horizon is not None:
            smax = args.smax if args.smax is not None else max(1, inv_di(K))
            utable = rpt.utable_report(fam, args.horizon, smax)
        _emit(args, rpt.invariant_report(K, name=f"{fam.name}:{n}",
                                         oracle=args.oracle, utable=utable))
        return
    results = []
    for claim in fam.claims():
        ok = claim.run()
        results.append((claim, ok))
    if args.json:
        rep = {
            "schema_version": rpt.SCHEMA_VERSION,
            "kind": "claims",
            "family": fam.describe(),
            "claims": [
                {"id": c.id, "description": c.description, "op": c.op,
                 "horizon": c.horizon, "surrogate": c.surrogate, "passed": ok}
                for c, ok in results
            ],
        }
        print(rpt.to_json(rep))
    else:
        for c, ok in results:
            tag = "PASS" if ok else "FAIL"
            surrogate = " [surrogate]" if c.surrogate else ""
            print(f"{tag} {fam.name}.{c.id}{surrogate}: {c.description}")
    if not all(ok for _, ok in results):
        raise InternalInconsistency("a documented family claim failed")


def cmd_utable(args, cfg):
    params = parse_params(args.params)
    fam = resolve_family(cfg, args.family, params)
    _emit(args, rpt.utable_report(fam, args.horizon, args.smax))


def cmd_parity(args, cfg):
    _emit(args, rpt.parity_report(args.n))


def build_parser():
    ap = argparse.ArgumentParser(
        prog="pinsep",
        description="exact invariants of purely inseparable extensions "
                    "of F_p(x_1, ..., x_nu)")
    ap.add_argument("--context", help="YAML context document (path or '-')")
    ap.add_argument("--json", action="store_true",
                    help="emit the versioned JSON report")
    ap.add_argument("--oracle", action="store_true",
                    help="run redundant cross-checks and fail loudly on "
                         "disagreement (CI profile)")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("invariants", help="full invariant report of a field")
    sp.add_argument("field")
    sp.set_defaults(fn=cmd_invariants)

    sp = sub.add_parser("rbase", help="canonical r-base and defining equations")
    sp.add_argument("field")
    sp.set_defaults(fn=cmd_rbase)

    sp = sub.add_parser("modular", help="modularity verdict with witness")
    sp.add_argument("field")
    sp.add_argument("--method", default="both",
                    choices=["criterion", "disjointness", "both"])
    sp.set_defaults(fn=cmd_modular)

    sp = sub.add_parser("truncate", help="k_n = K ∩ k^(1/p^n)")
    sp.add_argument("field")
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(fn=cmd_truncate)

    sp = sub.add_parser("intersect", help="intersection of two fields")
    sp.add_argument("field1")
    sp.add_argument("field2")
    sp.set_defaults(fn=cmd_intersect)

    sp = sub.add_parser("compositum", help="compositum of two fields")
    sp.add_argument("field1")
    sp.add_argument("field2")
    sp.set_defaults(fn=cmd_compositum)

    sp = sub.add_parser("member", help="exact membership test")
    sp.add_argument("element")
    sp.add_argument("field")
    sp.set_defaults(fn=cmd_member)

    sp = sub.add_parser("family", help="family claims or stage invariants")
    sp.add_argument("name")
    sp.add_argument("sub", choices=["claims", "invariants"])
    sp.add_argument("--n", type=int, default=None,
                    help="stage (families with an n parameter)")
    sp.add_argument("--params", default="",
                    help="extra family parameters, e.g. t=2,m=3")
    sp.add_argument("--horizon", type=int, default=None,
                    help="embed the U-table up to this horizon")
    sp.add_argument("--smax", type=int, default=None,
                    help="U-table row count (default: di of the stage)")
    sp.set_defaults(fn=cmd_family)

    sp = sub.add_parser("utable", help="U_s^j table of a family")
    sp.add_argument("family")
    sp.add_argument("--horizon", type=int, required=True)
    sp.add_argument("--smax", type=int, required=True)
    sp.add_argument("--params", default="")
    sp.set_defaults(fn=cmd_utable)

    sp = sub.add_parser("parity", help="lower/upper parity lengths of n")
    sp.add_argument("n", type=int)
    sp.set_defaults(fn=cmd_parity)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    cfg = None
    try:
        if args.context:
            text = sys.stdin.read() if args.context == "-" else \
                open(args.context, "r", encoding="utf-8").read()
            cfg = load_config(text)
        args.fn(args, cfg)
    except CapExceeded as exc:
        # CapExceeded subclasses ValueError; match it before the parse bundle
        print(f"error[cap]: {exc}", file=sys.stderr)
        return 3
    except InternalInconsistency as exc:
        print(f"error[internal-inconsistency]: {exc}", file=sys.stderr)
        return 4
    except (ExprError, ConfigError, NotConstructible, HorizonInsufficient,
            KeyError, ValueError, OSError) as exc:
        print(f"error[parse]: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
