"""Command-line front end.  Catalog output is JSON lines, one quad per line."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .constructors import (
    BudgetExceeded,
    Case,
    ConstructionError,
    DioSolution,
    construct_tangential,
    realize_sides,
)
from .enumeration import (
    CatalogEntry,
    SearchBounds,
    SearchLimitError,
    brute_force_search,
    convex_tangential_report,
    make_entry,
    verify_catalog,
)
from .families import FAMILIES, generate_family
from .geometry import LatticeQuad, QuadError, canonical_key
from .numkernel import NoSolutionError, pell_solutions
from .openproblem import (
    DEFAULT_CF_STEP_CAP,
    AllFactorsGood,
    BadFactor,
    mu_sequence,
    run_pipeline,
    verify_giant_example,
)

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

RECORD_KEYS = (
    "vertices", "sides", "class", "convex", "kite", "sigma", "tau",
    "Sigma", "T", "incenter", "excenter", "lambda", "provenance",
)

CONVEX_TANGENTIAL_SIDES = sorted(
    [(4, 4, 4, 4), (8, 5, 2, 5), (5, 3, 4, 6), (5, 5, 5, 5), (15, 3, 3, 15), (37, 1, 5, 41)]
)


class UsageError(Exception):
    pass


def fmt_rational(x) -> str | None:
    if x is None:
        return None
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _fmt_point(p):
    return None if p is None else [fmt_rational(p[0]), fmt_rational(p[1])]


def _as_int(x):
    if x is None:
        return None
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else fmt_rational(x)


def entry_record(entry: CatalogEntry) -> dict:
    """Wire form of a catalog entry, keys in their fixed order."""
    cls, tan, ext = entry.classification, entry.tangential, entry.extangential
    lam = tan.lam if tan is not None else (ext.lam if ext is not None else None)
    values = {
        "vertices": [list(p) for p in entry.quad.vertices],
        "sides": list(entry.sides.as_tuple()),
        "class": cls.shape.value,
        "convex": cls.convex,
        "kite": cls.kite,
        "sigma": fmt_rational(tan.sigma) if tan else None,
        "tau": fmt_rational(tan.tau) if tan else None,
        "Sigma": _as_int(ext.Sigma) if ext else None,
        "T": _as_int(ext.T) if ext else None,
        "incenter": _fmt_point(tan.incenter) if tan else None,
        "excenter": _fmt_point(ext.excenter) if ext else None,
        "lambda": fmt_rational(lam),
        "provenance": entry.provenance,
    }
    return {k: values[k] for k in RECORD_KEYS}


def dumps(record: dict) -> str:
    return json.dumps(record, ensure_ascii=False, separators=(", ", ": "))


def _emit(entries, out, svg_path=None) -> None:
    entries = list(entries)
    for e in entries:
        out.write(dumps(entry_record(e)) + "\n")
    if svg_path:
        with open(svg_path, "w", encoding="utf-8") as fh:
            fh.write(render_svg(entries))


# ---------------------------------------------------------------------------
# Static figure output

def render_svg(entries, cell: int = 160, per_row: int = 6) -> str:
    """A grid of the given quads, each scaled to fit its own cell."""
    entries = list(entries)
    rows = max(1, -(-len(entries) // per_row))
    width, height = cell * min(per_row, max(1, len(entries))), cell * rows
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">'
    ]
    for k, e in enumerate(entries):
        ox, oy = (k % per_row) * cell, (k // per_row) * cell
        xs = [p[0] for p in e.quad.vertices]
        ys = [p[1] for p in e.quad.vertices]
        span = max(max(xs) - min(xs), max(ys) - min(ys), 1)
        pad = cell // 10
        scale = Fraction(cell - 2 * pad, span)
        pts = " ".join(
            f"{float(ox + pad + (x - min(xs)) * scale):.2f},"
            f"{float(oy + cell - pad - (y - min(ys)) * scale):.2f}"
            for x, y in e.quad.vertices
        )
        parts.append(f'<polygon points="{pts}" fill="none" stroke="black" stroke-width="1.5"/>')
        label = ",".join(map(str, e.sides.as_tuple()))
        parts.append(
            f'<text x="{ox + 4}" y="{oy + 12}" font-size="10" font-family="monospace">{label}</text>'
        )
    parts.append("</svg>\n")
    return "\n".join(parts)


# ---------------------------------------------------------------------------
# Subcommands

def cmd_classify(args, out) -> int:
    try:
        quad = LatticeQuad.from_flat(args.coords)
        entry = make_entry(quad, args.provenance)
    except (QuadError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    _emit([entry], out, args.svg)
    return EXIT_OK


def cmd_enumerate(args, out) -> int:
    convexity = "convex" if args.convex else ("concave" if args.concave else None)
    try:
        bounds = SearchBounds(args.perimeter_max, args.shape, convexity, not args.no_kites)
        entries = brute_force_search(bounds, cap=args.cap, workers=args.workers)
    except (ValueError, SearchLimitError) as exc:
        raise UsageError(str(exc)) from exc
    _emit(entries, out, args.svg)
    return EXIT_OK


def cmd_construct(args, out) -> int:
    try:
        sol = DioSolution(args.x, args.u, args.v, args.c)
        built = construct_tangential(Case(args.case), sol)
    except ConstructionError as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    tag = f"Construct:{args.case}:x={args.x},u={args.u},v={args.v},c={args.c}"
    _emit([make_entry(built.quad, tag)], out, args.svg)
    return EXIT_OK


def cmd_family(args, out) -> int:
    try:
        members = generate_family(args.family, args.count, args.start)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    entries = [make_entry(m.quad, f"Family:{m.family}#{m.index}") for m in members]
    _emit(entries, out, args.svg)
    return EXIT_OK


def cmd_realize(args, out) -> int:
    try:
        quads = realize_sides(*args.sides, constraint=args.constraint, force=args.force)
    except (ValueError, BudgetExceeded) as exc:
        raise UsageError(str(exc)) from exc
    seen, entries = set(), []
    for q in quads:
        e = make_entry(q, "Realize")
        key = canonical_key(e.quad)
        if key not in seen:
            seen.add(key)
            entries.append(e)
    _emit(entries, out, args.svg)
    return EXIT_OK


def cmd_verify_corollaries(args, out) -> int:
    ok = True

    def line(flag: bool, text: str) -> None:
        nonlocal ok
        ok &= flag
        out.write(f"{'PASS' if flag else 'FAIL'} {text}\n")

    report = convex_tangential_report()
    dio = {canonical_key(e.quad): e for e in report.entries}
    dio_sides = sorted(e.sides.as_tuple() for e in report.entries)
    line(
        len(dio) == 6 and _multisets(dio_sides) == _multisets(CONVEX_TANGENTIAL_SIDES),
        f"diophantine route: {len(dio)} convex tangential LEQs "
        + " ".join(",".join(map(str, s)) for s in dio_sides),
    )
    catalog = brute_force_search(SearchBounds(84), cap=max(84, args.cap))
    brute = {
        canonical_key(e.quad): e
        for e in catalog
        if e.classification.tangential and e.classification.convex
    }
    line(set(brute) == set(dio), f"brute force to perimeter 84: {len(brute)} convex tangential, routes agree")
    concave = brute_force_search(SearchBounds(30, "extangential", "concave", kites=False))
    witness = concave[0].quad.vertices if concave else None
    line(
        len(concave) == 1 and concave[0].sides.as_tuple() == (13, 2, 5, 10),
        f"concave extangential non-kite to perimeter 30: {len(concave)} "
        + (f"sides {concave[0].sides.as_tuple()} vertices {list(witness)}" if concave else ""),
    )
    rep = verify_catalog(catalog)
    line(rep.ok, f"identity suite over {rep.checked} entries: {len(rep.violations)} violations")
    for v in rep.violations[:20]:
        out.write(f"  violation {v.check} sides {v.sides}\n")
    return EXIT_OK if ok else EXIT_FAILED


def _multisets(tuples):
    return sorted(tuple(sorted(t)) for t in tuples)


def cmd_open_problem(args, out) -> int:
    for term in mu_sequence(args.upto):
        res = run_pipeline(term, args.trial_bound, args.cf_steps)
        screen = res.screen
        rec = {"i": term.i, "mu": str(term.mu), "M": str(term.M)}
        if isinstance(screen, BadFactor):
            rec["screen"] = {"verdict": "BadFactor", "prime": str(screen.prime)}
        elif isinstance(screen, AllFactorsGood):
            rec["screen"] = {"verdict": "AllFactorsGood", "primes": [str(p) for p in screen.primes]}
        else:
            rec["screen"] = {"verdict": "Unknown", "cofactor_digits": len(str(screen.cofactor))}
        rec["wei"] = None if res.wei is None else str(res.wei)
        rec["mollin"] = None if res.mollin is None else str(res.mollin)
        rec["excluded"] = res.excluded
        out.write(json.dumps(rec) + "\n")
    return EXIT_OK


def cmd_verify_giant(args, out) -> int:
    rep = verify_giant_example()
    rec = {
        "sides": [str(s) for s in rep.sides.as_tuple()],
        "perimeter": str(rep.perimeter),
        "Sigma": rep.Sigma,
        "T": rep.T,
        "checks": rep.checks,
        "ok": rep.ok,
    }
    out.write(json.dumps(rec) + "\n")
    return EXIT_OK if rep.ok else EXIT_FAILED


def cmd_pell(args, out) -> int:
    try:
        sols = pell_solutions(args.d, args.n, args.count)
    except NoSolutionError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_FAILED
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    for x, y in sols:
        out.write(f"{x} {y}\n")
    return EXIT_OK


# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="leq", description="Lattice equable quadrilaterals.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_svg(p):
        p.add_argument("--svg", metavar="PATH", help="also write a static SVG figure")
        return p

    p = with_svg(sub.add_parser("classify", help="classify one quad given as 8 integers"))
    p.add_argument("coords", nargs=8, type=int, metavar="N")
    p.add_argument("--provenance", default="Input")
    p.set_defaults(func=cmd_classify)

    p = with_svg(sub.add_parser("enumerate", help="exhaustive search up to a perimeter"))
    p.add_argument("--perimeter-max", type=int, required=True)
    p.add_argument("--class", dest="shape", choices=["tangential", "extangential", "any"])
    g = p.add_mutually_exclusive_group()
    g.add_argument("--convex", action="store_true")
    g.add_argument("--concave", action="store_true")
    p.add_argument("--no-kites", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--cap", type=int, default=100, help="refuse perimeters above this")
    p.set_defaults(func=cmd_enumerate)

    p = with_svg(sub.add_parser("construct", help="quad from a generating-equation solution"))
    p.add_argument("--case", choices=["I", "II"], required=True)
    for name in ("x", "u", "v", "c"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.set_defaults(func=cmd_construct)

    p = with_svg(sub.add_parser("family", help="members of a named family"))
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--count", type=int, default=3)
    p.add_argument("--start", type=int)
    p.set_defaults(func=cmd_family)

    p = with_svg(sub.add_parser("realize", help="lattice quads with given side lengths"))
    p.add_argument("sides", nargs=4, type=int, metavar="SIDE")
    p.add_argument("--constraint", choices=["any", "tangential", "extangential"], default="any")
    p.add_argument("--force", action="store_true", help="ignore the work budget")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("verify-corollaries", help="re-derive the classification results")
    p.add_argument("--cap", type=int, default=100)
    p.set_defaults(func=cmd_verify_corollaries)

    p = sub.add_parser("open-problem", help="screen m = 7 mu_i for i <= UPTO")
    p.add_argument("--upto", type=int, required=True)
    p.add_argument("--trial-bound", type=int, help="defaults to LEQ_TRIAL_BOUND or 10^7")
    p.add_argument("--cf-steps", type=int, default=DEFAULT_CF_STEP_CAP)
    p.set_defaults(func=cmd_open_problem)

    p = sub.add_parser("verify-giant", help="check the 28-digit extangential example")
    p.set_defaults(func=cmd_verify_giant)

    p = sub.add_parser("pell", help="solutions of x^2 - D y^2 = N")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, default=5)
    p.set_defaults(func=cmd_pell)
    return parser


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        print(f"leq: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
