"""Command-line front end.

Exit status: 0 when the check passes or a witness is found, 1 when a
violation is found or nothing exists, 2 on configuration errors or an
exhausted search budget.
"""
from __future__ import annotations

import argparse
import json
import sys

from .embeddings import boolean_combine, chain_combine, division_combine, partition_combine
from .errors import LatticeRamseyError, SearchBudgetExceeded
from .homothety import (
    DEFAULT_NODE_BUDGET,
    HomothetyMap,
    enumerate_lattice_homotheties,
    verify_homothety,
    verify_lattice_homothety,
)
from .lattices import build_lattice, from_descriptor
from .ramsey import (
    DEFAULT_COLORING_BUDGET,
    Coloring,
    check_L_predicate,
    find_mono_homothety,
    ramsey_number,
)
from .systems import (
    check_boolean_rigidity,
    check_compatibility,
    check_system_axioms,
    find_non_hj,
)

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class UsageError(LatticeRamseyError):
    pass


def parse_descriptor(text: str) -> dict:
    """A lattice descriptor from JSON, a JSON file path, or shorthand like ``chain:t=3,n=2``."""
    text = text.strip()
    if text.startswith("{"):
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"bad lattice descriptor: {exc}") from None
    if text.endswith(".json"):
        return _read_json(text)
    family, _, rest = text.partition(":")
    params = {}
    for item in filter(None, rest.split(",")):
        key, eq, value = item.partition("=")
        if not eq:
            raise UsageError(f"bad lattice parameter {item!r}; expected key=value")
        try:
            params[key.strip()] = int(value)
        except ValueError:
            raise UsageError(f"lattice parameter {key!r} must be an integer") from None
    return {"family": family.strip(), "params": params}


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _lattice_from_args(args):
    if args.lattice:
        return from_descriptor(parse_descriptor(args.lattice))
    params = {"n": args.n}
    if args.family == "chain":
        params["t"] = args.t
    return build_lattice(args.family, params)


# -- subcommands -------------------------------------------------------------
# each returns (payload, exit status, human-readable lines)

def cmd_lattice_info(args):
    L = _lattice_from_args(args)
    payload = {"lattice": L.descriptor(), "size": L.size, "min_rank": L.min_rank, "max_rank": L.max_rank}
    if L.size <= 256:
        payload["elements"] = [{"index": i, "element": L.render(i), "rank": L.ranks[i]} for i in range(L.size)]
    lines = [f"{L!r}: {L.size} elements, ranks {L.min_rank}..{L.max_rank}"]
    for e in payload.get("elements", []):
        lines.append(f"  {e['index']:>4}  rank {e['rank']}  {json.dumps(e['element'])}")
    return payload, EXIT_OK, lines


def cmd_hom_enumerate(args):
    P = from_descriptor(parse_descriptor(args.domain))
    Q = from_descriptor(parse_descriptor(args.codomain))
    maps = list(enumerate_lattice_homotheties(P, Q, args.scale, budget=args.budget, workers=args.workers))
    payload = {"domain": P.descriptor(), "codomain": Q.descriptor(), "count": len(maps),
               "maps": [f.to_dict() for f in maps]}
    lines = [f"{len(maps)} lattice homotheties {P!r} -> {Q!r}"]
    lines += [f"  d={f.scale}  {json.dumps(f.to_dict()['images'])}" for f in maps]
    return payload, EXIT_OK if maps else EXIT_FAIL, lines


def cmd_hom_verify(args):
    f = HomothetyMap.from_dict(_read_json(args.file))
    report = verify_homothety(f) if args.plain else verify_lattice_homothety(f)
    payload = report.to_dict(f)
    kind = "homothety" if args.plain else "lattice homothety"
    lines = [f"{kind}: {'pass' if report.ok else 'FAIL'}"]
    lines += [f"  {v['condition']} violated at {json.dumps(v['witness'])}" for v in payload["violations"]]
    lines += [f"  note: {n}" for n in report.notes]
    return payload, EXIT_OK if report.ok else EXIT_FAIL, lines


def cmd_embed(args):
    extra = {}
    if args.family == "partition":
        f = partition_combine(args.n1, args.n2)
    elif args.family == "boolean":
        f = boolean_combine(args.n1, args.n2)
    elif args.family == "chain":
        f = chain_combine(args.t, args.n1, args.n2)
    else:
        N, f = division_combine(args.n1, args.n2)
        extra["N"] = N
    report = verify_lattice_homothety(f)
    payload = {"map": f.to_dict(), "verified": report.ok, **extra}
    lines = [f"{f.domain!r} -> {f.codomain!r}, scale {f.scale}, verified: {report.ok}"]
    return payload, EXIT_OK if report.ok else EXIT_FAIL, lines


def _report_lines(title, report):
    lines = [f"{title}: {'pass' if report.ok else 'FAIL'}"]
    lines += [f"  {k}: {v}" for k, v in sorted(report.counts.items())]
    lines += [f"  violation: {v['condition']}" for v in report.violations]
    lines += [f"  note: {n}" for n in report.notes]
    return lines


def cmd_system_axioms(args):
    report = check_system_axioms(args.system, args.family, args.t, args.bound, args.budget, args.workers)
    return report.to_dict(), EXIT_OK if report.ok else EXIT_FAIL, _report_lines("axioms H1/H2", report)


def cmd_system_compat(args):
    if args.family == "partition":
        embed = partition_combine(args.m, args.n)
    elif args.family == "boolean":
        embed = boolean_combine(args.m, args.n)
    elif args.family == "chain":
        embed = chain_combine(args.t, args.m, args.n)
    else:
        embed = division_combine(args.m, args.n)[1]
    report = check_compatibility(embed, args.system, args.i_bound, args.budget, args.workers)
    payload = {"embedding": embed.to_dict(), **report.to_dict()}
    return payload, EXIT_OK if report.ok else EXIT_FAIL, _report_lines("compatibility C1/C2", report)


def cmd_system_rigidity(args):
    report = check_boolean_rigidity(args.n, args.N, args.budget, args.workers)
    return report.to_dict(), EXIT_OK if report.ok else EXIT_FAIL, _report_lines("boolean rigidity", report)


def cmd_system_counterexample(args):
    f, verdict, count = find_non_hj(args.t, args.n, args.N, args.budget, args.workers)
    if f is None:
        payload = {"found": False, "examined": count}
        return payload, EXIT_FAIL, [f"no non-HJ lattice homothety among {count} maps"]
    payload = {"found": True, "examined": count, "map": f.to_dict(), "reason": verdict.reason,
               "witness": f.domain.render(verdict.witness) if verdict.witness is not None else None}
    lines = [f"non-HJ lattice homothety (map #{count}), scale {f.scale}: {verdict.reason}"]
    lines += [f"  {json.dumps(f.domain.render(p))} -> {json.dumps(f.codomain.render(q))}"
              for p, q in enumerate(f.images)]
    return payload, EXIT_OK, lines


def cmd_mono_search(args):
    chi = Coloring.from_dict(_read_json(args.coloring))
    w = find_mono_homothety(args.n, chi, args.system, args.budget)
    if w is None:
        return {"witness": None, "color": None}, EXIT_FAIL, ["no monochromatic restricted homothety"]
    lines = [f"monochromatic witness, color {w.color}, scale {w.map.scale}"]
    lines += [f"  {json.dumps(w.map.domain.render(p))} -> {json.dumps(w.map.codomain.render(q))}"
              for p, q in enumerate(w.map.images)]
    return w.to_dict(), EXIT_OK, lines


def cmd_l_predicate(args):
    res = check_L_predicate(args.n, args.s, args.k, args.l, args.N, args.system, args.family, args.t,
                            args.budget, args.coloring_budget)
    lines = [f"L-predicate at N={args.N}: {'holds' if res.holds else 'fails'}"
             f" ({res.triples} triples, {res.colorings} canonical colorings)"]
    if res.failure:
        lines.append(f"  failing triple: {json.dumps(res.failure['triple'])}")
        lines.append(f"  failing coloring: {res.failure['bad_coloring']['colors']}")
    return res.to_dict(), EXIT_OK if res.holds else EXIT_FAIL, lines


def cmd_ramsey(args):
    res = ramsey_number(args.family, args.system, args.n, args.k, args.nmax, t=args.t, budget=args.budget,
                        coloring_budget=args.coloring_budget, workers=args.workers,
                        automorphisms=args.automorphisms)
    if res.status == "exact":
        head, code = str(res.value), EXIT_OK
    elif res.status == "exceeds-cap":
        head, code = f"none <= {args.nmax} (value >= {res.lower_bound})", EXIT_FAIL
    else:
        head, code = f">= {res.lower_bound} (coloring budget exceeded)", EXIT_ERROR
    lines = [head]
    for lv in res.levels:
        if lv["verdict"] == "fails":
            lines.append(f"  N={lv['N']}: fails, bad coloring {lv['bad_coloring']['colors']}")
        elif lv["verdict"] == "works":
            lines.append(f"  N={lv['N']}: works ({lv['colorings_checked']} canonical colorings checked)")
        else:
            lines.append(f"  N={lv['N']}: {lv['canonical_colorings']} canonical colorings exceed the budget")
    return res.to_dict(), code, lines


# -- parser ------------------------------------------------------------------

def _global_flags(parser, suppress):
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--workers", type=int, default=default(1), help="worker processes")
    parser.add_argument("--budget", type=int, default=default(DEFAULT_NODE_BUDGET), help="search node budget")
    parser.add_argument("--format", choices=("human", "json"), default=default("human"))


def _system_arg(p, default="trivial"):
    p.add_argument("--system", choices=("trivial", "hj"), default=default)


def _family_args(p, families=("boolean", "chain", "partition", "division")):
    p.add_argument("--family", choices=families, required=True)
    p.add_argument("--t", type=int, default=None, help="alphabet size (chain family)")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    _global_flags(common, suppress=True)

    parser = argparse.ArgumentParser(prog="lattice-ramsey", allow_abbrev=False,
                                     description="Graded lattices, lattice homotheties and small Ramsey values.")
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def leaf(subparsers, name, func, help_text):
        p = subparsers.add_parser(name, parents=[common], help=help_text, allow_abbrev=False)
        p.set_defaults(func=func)
        return p

    lat = sub.add_parser("lattice", help="lattice queries").add_subparsers(dest="action", required=True)
    p = leaf(lat, "info", cmd_lattice_info, "size, ranks and elements of a lattice")
    p.add_argument("--lattice", help="descriptor (JSON, file, or shorthand like chain:t=3,n=2)")
    p.add_argument("--family", choices=("boolean", "chain", "partition", "division"))
    p.add_argument("--n", type=int)
    p.add_argument("--t", type=int)

    hom = sub.add_parser("hom", help="homothety enumeration and verification").add_subparsers(
        dest="action", required=True)
    p = leaf(hom, "enumerate", cmd_hom_enumerate, "all lattice homotheties between two lattices")
    p.add_argument("--domain", required=True)
    p.add_argument("--codomain", required=True)
    p.add_argument("--scale", type=int, default=None)
    p = leaf(hom, "verify", cmd_hom_verify, "verify a serialized homothety")
    p.add_argument("file", help="homothety JSON file ('-' for stdin)")
    p.add_argument("--plain", action="store_true", help="check the homothety conditions only")

    p = leaf(sub, "embed", cmd_embed, "the explicit product embedding for a family")
    p.add_argument("family", choices=("partition", "boolean", "chain", "division"))
    p.add_argument("--n1", type=int, required=True)
    p.add_argument("--n2", type=int, required=True)
    p.add_argument("--t", type=int, default=2)

    sysp = sub.add_parser("system", help="homothety system checks").add_subparsers(dest="action", required=True)
    p = leaf(sysp, "axioms", cmd_system_axioms, "check H1 and H2")
    _system_arg(p)
    p.add_argument("--family", choices=("boolean", "chain", "partition", "division"), default="chain")
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--bound", type=int, default=2)
    p = leaf(sysp, "compat", cmd_system_compat, "check C1 and C2 for a family's product embedding")
    _system_arg(p)
    p.add_argument("--family", choices=("boolean", "chain", "partition", "division"), default="chain")
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--i-bound", type=int, default=1)
    p = leaf(sysp, "rigidity", cmd_system_rigidity, "every Boolean lattice homothety is of type HJ")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p = leaf(sysp, "counterexample", cmd_system_counterexample, "search for a non-HJ chain lattice homothety")
    p.add_argument("--t", type=int, default=3)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--N", type=int, default=4)

    p = leaf(sub, "mono-search", cmd_mono_search, "monochromatic restricted homothety for a coloring file")
    p.add_argument("--coloring", required=True, help="coloring JSON file ('-' for stdin)")
    p.add_argument("--n", type=int, required=True)
    _system_arg(p)

    p = leaf(sub, "l-predicate", cmd_l_predicate, "check the anchored-chain property at one N")
    _family_args(p)
    _system_arg(p)
    for name in ("n", "s", "k", "l", "N"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--coloring-budget", type=int, default=DEFAULT_COLORING_BUDGET)

    p = leaf(sub, "ramsey", cmd_ramsey, "smallest N forcing a monochromatic restricted copy of A(n)")
    _family_args(p)
    _system_arg(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--coloring-budget", type=int, default=DEFAULT_COLORING_BUDGET)
    p.add_argument("--automorphisms", action="store_true", help="also quotient by coordinate permutations")
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.workers < 1 or args.budget < 1:
            raise UsageError("--workers and --budget must be positive")
        if args.command == "lattice" and not args.lattice and not (args.family and args.n):
            raise UsageError("give --lattice or --family with --n")
        payload, code, lines = args.func(args)
    except SearchBudgetExceeded as exc:
        payload, code = {"error": "budget-exceeded", "message": str(exc), "covered": exc.covered}, EXIT_ERROR
        lines = [f"error: {exc}"]
    except LatticeRamseyError as exc:
        payload, code, lines = {"error": type(exc).__name__, "message": str(exc)}, EXIT_ERROR, [f"error: {exc}"]
    if args.format == "json":
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        out.write("\n".join(lines) + "\n")
    return code


def main():
    sys.exit(run())
