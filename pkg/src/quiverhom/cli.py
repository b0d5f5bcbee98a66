"""
Command line front end.

    quiverhom COMMAND [INPUT] [--max-degree N] [--format text|json]
                              [--seed S] [--property NAME] [--base-vertex V]

Exit status: 0 on success, 1 when a verified property fails, 2 on bad
input (unreadable, invalid, or not suitable for the command).  Set
``QUIVERHOM_LOG`` to a logging level name (``info``, ``debug``) for
diagnostics on stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import __version__
from .atspace import at_space, component_count, h_natural, sigma
from .chainrep import (ChainRep, ChainRepError, antipodal_quotient_h0, basepoint_comparison,
                       cycle_fixed_limit, excision_check, homology, projection_report, rep_limit, rho,
                       s_gamma, simplicial_relative_homology)
from .checks import SUITES, run_suite
from .formats import InputError, from_object, parse_bytes
from .intalg import AbRep, ab_limit
from .quiver import (Quiver, QuiverError, arrow_positive_function, cycle_report,
                     find_nonsymmetric_cycle, has_odd_oriented_cycle, vertex_grading)
from .setrep import FinSetRep, check_system_action, from_system, to_system
from .simplicial import ComplexError, SimplicialRep, validate_complex

log = logging.getLogger("quiverhom")

COMMANDS = ("analyze", "grade", "limit", "homology", "relative", "excision", "at", "sigma", "rho",
            "check")

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


class UsageError(Exception):
    pass


class Report:
    """Result of one command: JSON data, text lines, and whether its checks held."""

    def __init__(self, data: dict, lines: list, ok: bool = True):
        self.data = data
        self.lines = lines
        self.ok = ok


def emit_report(report: Report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.data, sort_keys=True, indent=2) + "\n"
    return "\n".join(report.lines) + "\n"


def _table(rows: list, header: tuple | None = None) -> list:
    rows = [tuple(str(c) for c in r) for r in rows]
    if header:
        rows.insert(0, tuple(header))
    if not rows:
        return []
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]


def _group(g) -> dict:
    return g.to_json()


def _quiver_of(value) -> Quiver:
    return value if isinstance(value, Quiver) else value.quiver


def _need(value, *kinds, command: str):
    if not isinstance(value, kinds):
        names = {Quiver: "quiver", FinSetRep: "finset", SimplicialRep: "simplicial",
                 ChainRep: "chain", AbRep: "abelian"}
        want = " or ".join(names[k] for k in kinds)
        raise UsageError(f"'{command}' needs a {want} input, got {names.get(type(value), type(value).__name__)}")


def _chain(value) -> ChainRep:
    return s_gamma(value) if isinstance(value, SimplicialRep) else value


# commands


def cmd_grade(value, args, raw) -> Report:
    q = _quiver_of(value)
    F = arrow_positive_function(q)
    if F is None:
        c = find_nonsymmetric_cycle(q)
        arrows = list(c.arrows)
        text = f"no arrow positive function; non-symmetric cycle [{','.join(arrows)}]"
        return Report({"arrow_function": None, "nonsymmetric_cycle": arrows,
                       "counts": [c.clockwise, c.anticlockwise]}, [text])
    data = {"arrow_function": {str(v): F(v) for v in q.vertices}}
    lines = ["arrow positive function:"] + _table([(v, F(v)) for v in q.vertices], ("vertex", "degree"))
    if isinstance(value, FinSetRep):
        g = vertex_grading(value, F)
        data["graded_parts"] = {str(k): [x for _, x in items] for k, items in g.components.items()}
        lines.append("graded parts:")
        lines += _table([(k, " ".join(x for _, x in items) or "-") for k, items in g.components.items()],
                        ("degree", "elements"))
    return Report(data, lines)


def _quiver_summary(q: Quiver, max_len: int = 8):
    rep = cycle_report(q, max_len)
    data = {"vertices": list(q.vertices), "arrows": len(q.arrows),
            "components": [list(c) for c in q.components()],
            "cycles": [{"arrows": list(c.arrows), "counts": [c.clockwise, c.anticlockwise],
                        "symmetric": c.symmetric, "oriented": c.oriented} for c in rep.cycles],
            "all_symmetric": rep.all_symmetric, "odd_oriented_cycle": has_odd_oriented_cycle(q)}
    lines = [f"quiver: {len(q.vertices)} vertex(es), {len(q.arrows)} arrow(s), "
             f"{len(data['components'])} component(s)"]
    if rep.cycles:
        lines += _table([(",".join(c.arrows), f"{c.clockwise}/{c.anticlockwise}",
                          "yes" if c.symmetric else "no", "yes" if c.oriented else "no")
                         for c in rep.cycles], ("cycle", "cw/acw", "symmetric", "oriented"))
    lines.append(f"all cycles symmetric: {'yes' if rep.all_symmetric else 'no'}")
    return data, lines


def _homology_block(c, max_degree: int, label: str):
    hs = [homology(c, n) for n in range(max_degree + 1)]
    lines = _table([(f"H{h.degree}", str(h)) for h in hs], (label, "group"))
    return [h.to_json() for h in hs], lines


def cmd_analyze(value, args, raw) -> Report:
    q = _quiver_of(value)
    data, lines = _quiver_summary(q)
    F = arrow_positive_function(q)
    data["arrow_function"] = None if F is None else {str(v): F(v) for v in q.vertices}
    ok = True
    if isinstance(value, FinSetRep):
        sys_ = to_system(value)
        rt = from_system(sys_) == value and check_system_action(sys_)
        ok = rt
        data["sets"] = {str(v): value.size(v) for v in q.vertices}
        data["system_size"] = len(sys_.carrier)
        data["roundtrip"] = rt
        lines += _table([(v, value.size(v)) for v in q.vertices], ("vertex", "elements"))
        lines.append(f"system: {len(sys_.carrier)} elements including theta; "
                     f"round trip {'ok' if rt else 'FAILED'}")
    elif isinstance(value, (SimplicialRep, ChainRep)):
        crep = _chain(value)
        lim = rep_limit(crep)
        hs, hl = _homology_block(lim.complex, args.max_degree, "limit")
        data["limit_ranks"] = list(lim.complex.ranks)
        data["homology"] = hs
        lines.append(f"limit ranks: {list(lim.complex.ranks)}")
        lines += hl
        if isinstance(value, SimplicialRep):
            at = at_space(value)
            data["at_components"] = component_count(at)
            data["at_f_vector"] = [len(x) for x in at.complex.simplices]
            lines.append(f"attachment space: f-vector {data['at_f_vector']}, "
                         f"{data['at_components']} component(s)")
    elif isinstance(value, AbRep):
        lim = ab_limit(value)
        data["groups"] = {str(v): _group(value.groups[v]) for v in q.vertices}
        data["limit"] = _group(lim.group)
        lines += _table([(v, value.groups[v]) for v in q.vertices], ("vertex", "group"))
        lines.append(f"limit: {lim.group}")
    return Report(data, lines, ok)


def cmd_limit(value, args, raw) -> Report:
    _need(value, SimplicialRep, ChainRep, AbRep, command="limit")
    if isinstance(value, AbRep):
        lim = ab_limit(value)
        data = {"group": _group(lim.group),
                "projections": {str(v): h.matrix.to_json() for v, h in lim.projections.items()}}
        lines = [f"limit: {lim.group}"]
        lines += _table([(v, h.matrix.tolist()) for v, h in lim.projections.items()],
                        ("vertex", "projection"))
        return Report(data, lines)
    crep = _chain(value)
    lim = rep_limit(crep)
    data = {"complex": lim.complex.to_json(),
            "inclusion": [m.to_json() for m in lim.inclusion]}
    lines = _table([(n, lim.complex.rank(n), lim.inclusion[n].rows)
                    for n in range(lim.top_degree + 1)], ("degree", "limit rank", "product rank"))
    q = crep.quiver
    if q.is_connected():
        base = args.base_vertex if args.base_vertex in q.vertices else q.vertices[0]
        pr = projection_report(lim, base)
        data["projection"] = {"vertex": base, "injective": pr.injective, "isomorphism": pr.isomorphism}
        lines.append(f"projection to vertex {base}: injective {'yes' if pr.injective else 'no'}, "
                     f"isomorphism {'yes' if pr.isomorphism else 'no'}")
    try:
        cl = cycle_fixed_limit(crep)
    except ChainRepError:
        cl = None
    if cl is not None:
        data["round_trip_certified"] = cl.certified
        lines.append(f"single oriented cycle: limit equals fixed chains of the round trip: "
                     f"{'yes' if cl.certified else 'no'}")
    return Report(data, lines, cl is None or cl.certified)


def cmd_homology(value, args, raw) -> Report:
    _need(value, SimplicialRep, ChainRep, command="homology")
    lim = rep_limit(_chain(value))
    hs, lines = _homology_block(lim.complex, args.max_degree, "degree")
    data = {"homology": hs}
    if isinstance(value, SimplicialRep):
        try:
            ap = antipodal_quotient_h0(value)
        except (ChainRepError, ComplexError):
            ap = None
        if ap is not None:
            data["antipodal_quotient_h0"] = ap.h0.to_json()
            lines.append(f"H0 of the circle modulo the limit image: {ap.h0}")
    return Report(data, lines)


def _subcomplexes(raw_map, q: Quiver, what: str) -> dict:
    try:
        return {v: validate_complex(raw_map[str(v)]) for v in q.vertices}
    except KeyError as e:
        raise InputError(f"{what} has no subcomplex for vertex {e.args[0]}") from None


def cmd_relative(value, args, raw) -> Report:
    _need(value, SimplicialRep, command="relative")
    q = value.quiver
    if "subcomplexes" in raw:
        subs = _subcomplexes(raw["subcomplexes"], q, "subcomplexes")
        rel = [simplicial_relative_homology(value, subs, n) for n in range(args.max_degree + 1)]
        lim = rep_limit(s_gamma(value))
        ab = [homology(lim.complex, n) for n in range(args.max_degree + 1)]
        data = {"absolute": [h.to_json() for h in ab], "relative": [h.to_json() for h in rel]}
        lines = _table([(f"H{n}", ab[n], rel[n]) for n in range(len(rel))],
                       ("degree", "absolute", "relative"))
        return Report(data, lines)
    if args.base_vertex is not None:
        bps = {v: args.base_vertex for v in q.vertices}
    elif "basepoints" in raw:
        bps = {v: int(raw["basepoints"][str(v)]) for v in q.vertices}
    else:
        raise UsageError("'relative' needs \"basepoints\" or \"subcomplexes\" in the input, "
                         "or --base-vertex")
    b = basepoint_comparison(value, bps, args.max_degree)
    data = {"basepoints": {str(v): x for v, x in bps.items()},
            "absolute": [b.absolute[n].to_json() for n in range(args.max_degree + 1)],
            "relative": [b.relative[n].to_json() for n in range(args.max_degree + 1)],
            "higher_degrees_agree": b.higher_degrees_agree, "degree0_ok": b.degree0_ok}
    lines = _table([(f"H{n}", b.absolute[n], b.relative[n]) for n in range(args.max_degree + 1)],
                   ("degree", "absolute", "relative"))
    lines.append(f"agree above degree 0: {'yes' if b.higher_degrees_agree else 'no'}")
    lines.append("degree 0 rank drop: " + {True: "ok", False: "FAILED", None: "n/a (torsion)"}[b.degree0_ok])
    return Report(data, lines, b.higher_degrees_agree and b.degree0_ok is not False)


def cmd_excision(value, args, raw) -> Report:
    _need(value, SimplicialRep, command="excision")
    cover = raw.get("cover")
    if not isinstance(cover, dict) or "A" not in cover or "B" not in cover:
        raise UsageError("'excision' needs a \"cover\": {\"A\": ..., \"B\": ...} field in the input")
    q = value.quiver
    A = _subcomplexes(cover["A"], q, "cover A")
    B = _subcomplexes(cover["B"], q, "cover B")
    r = excision_check(value, A, B)
    data = {"covered": r.covered, "pieces_preserved": r.pieces_preserved,
            "H0": r.h0.to_json(), "H1": r.h1.to_json(), "vanishes": r.vanishes}
    lines = [f"cover: {'every simplex in A or B' if r.covered else 'does NOT cover'}",
             f"H0 = {r.h0}", f"H1 = {r.h1}"]
    ok = r.vanishes or not r.covered
    if not r.covered:
        lines.append("hypothesis fails, no vanishing claim")
    return Report(data, lines, ok)


def cmd_at(value, args, raw) -> Report:
    _need(value, SimplicialRep, command="at")
    at = at_space(value)
    n = component_count(at)
    comps = len(value.quiver.components())
    data = {"at": at.to_json(), "components": n, "quiver_components": comps}
    lines = [f"attachment space: {at.n_classes} vertex classes from {at.n_pairs} generating pairs",
             f"f-vector: {[len(x) for x in at.complex.simplices]}",
             f"components: {n} (quiver: {comps})"]
    lines += _table([(f"{v}.{x}", c) for (v, x), c in sorted(at.class_of.items())], ("point", "class"))
    return Report(data, lines)


def cmd_sigma(value, args, raw) -> Report:
    _need(value, SimplicialRep, command="sigma")
    s = sigma(value, args.base_vertex)
    comps, lines = [], []
    for c in s.components:
        entry = {"vertices": list(c.vertices), "base": c.base, "base_independent": c.base_independent,
                 "chain_map": c.chain_map,
                 "matrices": [m.to_json() for m in c.map.matrices] if c.map else None}
        comps.append(entry)
        lines.append(f"component {list(c.vertices)} (base {c.base}): "
                     f"base independent {'yes' if c.base_independent else 'no'}, "
                     f"chain map {'yes' if c.chain_map else 'no'}")
    data = {"components": comps}
    if s.ok:
        hn = []
        for n in range(args.max_degree + 1):
            h = h_natural(value, n, s)
            hn.append({"degree": n, "source": _group(h.source), "target": _group(h.target),
                       "matrix": h.matrix.to_json()})
            lines.append(f"H{n}(sigma): {h.source} -> {h.target}  {h.matrix.tolist()}")
        data["homology"] = hn
    return Report(data, lines, s.ok)


def cmd_rho(value, args, raw) -> Report:
    _need(value, SimplicialRep, ChainRep, command="rho")
    crep = _chain(value)
    lim = rep_limit(crep)
    out, lines = [], []
    for n in range(args.max_degree + 1):
        r = rho(crep, n, lim)
        h = r.hom
        out.append({"degree": n, "source": _group(h.source), "target": _group(h.target),
                    "matrix": h.matrix.to_json(), "injective": h.is_injective(),
                    "surjective": h.is_surjective()})
        lines.append(f"rho_{n}: {h.source} -> {h.target}  {h.matrix.tolist()}  "
                     f"injective {'yes' if h.is_injective() else 'no'}, "
                     f"surjective {'yes' if h.is_surjective() else 'no'}")
    return Report({"rho": out}, lines)


def cmd_check(args) -> Report:
    name = args.property or "all"
    names = list(SUITES) if name == "all" else [name]
    if any(n not in SUITES for n in names):
        raise UsageError(f"unknown property {name!r}; known: all, {', '.join(SUITES)}")
    fixtures = None
    if args.input:
        p = Path(args.input)
        if not p.is_dir():
            raise InputError(f"{p} is not a fixtures directory")
        fixtures = p
    results = [run_suite(n, args.seed, fixtures) for n in names]
    data = {"seed": args.seed, "suites": [r.to_json() for r in results],
            "ok": all(r.ok for r in results)}
    lines = _table([(r.name, "pass" if r.ok else "FAIL", f"{r.passed}/{r.trials}") for r in results],
                   ("property", "result", "trials"))
    for r in results:
        lines += [f"  {r.name}: {f}" for f in r.failures[:5]]
    return Report(data, lines, data["ok"])


HANDLERS = {"analyze": cmd_analyze, "grade": cmd_grade, "limit": cmd_limit,
            "homology": cmd_homology, "relative": cmd_relative, "excision": cmd_excision,
            "at": cmd_at, "sigma": cmd_sigma, "rho": cmd_rho}


def run_command(args) -> Report:
    if args.command == "check":
        return cmd_check(args)
    if not args.input:
        raise UsageError(f"'{args.command}' needs an input file")
    try:
        raw_bytes = Path(args.input).read_bytes()
    except OSError as e:
        raise InputError(f"cannot read {args.input}: {e.strerror}") from None
    raw = parse_bytes(raw_bytes)
    value = from_object(raw)
    log.info("parsed %s as %s", args.input, type(value).__name__)
    return HANDLERS[args.command](value, args, raw)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quiverhom",
                                description="Invariants of quiver representations by spaces.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input", nargs="?", help="representation JSON file (fixtures directory for check)")
    p.add_argument("--max-degree", type=int, default=2)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--property", help="suite name for check, or 'all'")
    p.add_argument("--base-vertex", type=int, default=None)
    return p


def _setup_logging():
    level = os.environ.get("QUIVERHOM_LOG")
    if level:
        logging.basicConfig(stream=sys.stderr, level=getattr(logging, level.upper(), logging.INFO),
                            format="%(levelname)s %(name)s: %(message)s")


def main(argv=None) -> int:
    _setup_logging()
    parser = build_parser()
    try:
        args = parser.parse_intermixed_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    if args.max_degree < 0:
        print("error: --max-degree must be non-negative", file=sys.stderr)
        return EXIT_INPUT
    try:
        report = run_command(args)
    except (InputError, UsageError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (QuiverError, ComplexError, ChainRepError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(emit_report(report, args.format))
    return EXIT_OK if report.ok else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
