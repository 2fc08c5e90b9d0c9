"""Command-line front end.

Exit codes: 0 on success, 1 when an internal invariant fails (a bug), 2 for
bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import dagger
from .bounds import analyze, analyze_matrix, render_text
from .diagram import parse_pd, parse_pd_file
from .errors import KnotgapError, UserInputError
from .surface import build_surface, surface_dump

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT = 0, 1, 2


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UserInputError(f"{path}: {exc.strerror or exc}") from None


def read_matrix(text, path="<matrix>"):
    rows = []
    for k, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].replace(",", " ").strip()
        if not line:
            continue
        try:
            rows.append([int(x) for x in line.split()])
        except ValueError:
            raise UserInputError(f"{path}: line {k}: expected integers") from None
    if not rows or any(len(r) != len(rows) for r in rows):
        raise UserInputError(f"{path}: matrix must be square and non-empty")
    return rows


def _dump(obj):
    return json.dumps(obj, ensure_ascii=False)


def _emit_report(rep, fmt):
    return _dump(rep.to_json()) if fmt == "json" else render_text(rep).rstrip("\n")


def cmd_analyze(args, out):
    if args.matrix:
        V = read_matrix(_read(args.matrix), args.matrix)
        rep = analyze_matrix(V, assume_genus_minimal=args.assume_genus_minimal, height_bound=args.height_bound)
        print(_emit_report(rep, args.format), file=out)
        return EXIT_OK
    if not args.input:
        raise UserInputError("analyze needs a PD file or --matrix")
    diagrams = parse_pd_file(_read(args.input))
    for _, d in diagrams:
        rep = analyze(
            d,
            outer_face=args.outer_face,
            height_bound=args.height_bound,
            assume_genus_minimal=args.assume_genus_minimal,
        )
        print(_emit_report(rep, args.format), file=out)
    return EXIT_OK


def _batch_one(job):
    lineno, raw, opts = job
    try:
        d = parse_pd(raw, line=lineno)
        rep = analyze(d, height_bound=opts["height_bound"], assume_genus_minimal=opts["assume_genus_minimal"])
    except UserInputError as exc:
        return {"line": lineno, "status": "input-error", "error": str(exc)}
    except (KnotgapError, AssertionError) as exc:
        return {"line": lineno, "status": "internal-error", "error": f"{type(exc).__name__}: {exc}"}
    t1 = next(r for r in rep.stable_t_rules if r["rule"] == "clasp")
    return {
        "line": lineno,
        "status": "ok",
        "name": rep.name,
        "clasp": t1["applicable"],
        # a gap below g(K) only means something on a genus-minimal surface
        "gap": rep.flags["genus_minimal"] != "unknown" and rep.stable_t_upper < rep.genus,
        "report": rep.to_json(),
        "text": render_text(rep).rstrip("\n"),
    }


def cmd_batch(args, out):
    text = _read(args.input)
    opts = {"height_bound": args.height_bound, "assume_genus_minimal": args.assume_genus_minimal}
    jobs = []
    for k, raw in enumerate(text.splitlines(), start=1):
        if raw.split("#", 1)[0].strip():
            jobs.append((k, raw, opts))
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_batch_one, jobs))
    else:
        results = [_batch_one(j) for j in jobs]

    summary = {"knots": len(results), "ok": 0, "clasp": 0, "gap": 0, "failed": 0}
    for res in results:
        if res["status"] == "ok":
            summary["ok"] += 1
            summary["clasp"] += res["clasp"]
            summary["gap"] += res["gap"]
        else:
            summary["failed"] += 1
        if args.format == "json":
            rec = {k: v for k, v in res.items() if k != "text"}
            print(_dump(rec), file=out)
        elif res["status"] == "ok":
            print(f"[line {res['line']}] ok", file=out)
            print(res["text"], file=out)
        else:
            print(f"[line {res['line']}] {res['status']}: {res['error']}", file=out)
    if args.format == "json":
        print(_dump({"summary": summary}), file=out)
    else:
        print(
            "summary: {knots} knots, {ok} ok, {failed} failed, clasp bound applies to {clasp}, "
            "stable gap shown for {gap}".format(**summary),
            file=out,
        )
    if any(r["status"] == "internal-error" for r in results):
        return EXIT_INTERNAL
    return EXIT_OK


def cmd_dagger(args, out):
    sol = dagger.solve_dagger(args.p, args.n)
    print(_dump(sol.to_json()), file=out)
    return EXIT_OK


def cmd_certify(args, out):
    cert = dagger.certify_isotropy(args.m)
    if not cert.verify():
        raise AssertionError("isotropy certificate failed to verify")
    print(_dump(cert.to_json()), file=out)
    return EXIT_OK


def cmd_surface_dump(args, out):
    for _, d in parse_pd_file(_read(args.input)):
        s = build_surface(d, outer_face=args.outer_face, allow_nonreduced=True)
        print(surface_dump(s).rstrip("\n"), file=out)
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(prog="knotgap", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, outer=True):
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--height-bound", type=_positive, default=64)
        p.add_argument("--assume-genus-minimal", action="store_true")
        if outer:
            p.add_argument("--outer-face", type=int, default=None)

    p = sub.add_parser("analyze", help="report genus bounds for each diagram")
    p.add_argument("input", nargs="?")
    p.add_argument("--matrix", metavar="FILE", help="analyze a bare Seifert matrix")
    common(p)
    p.set_defaults(run=cmd_analyze)

    p = sub.add_parser("batch", help="analyze a file of diagrams with a summary")
    p.add_argument("input")
    p.add_argument("--jobs", type=_positive, default=1)
    common(p, outer=False)
    p.set_defaults(run=cmd_batch)

    p = sub.add_parser("dagger", help="solve the two-variable quadratic equation for (p, n)")
    p.add_argument("p", type=_positive)
    p.add_argument("n", type=_positive)
    p.set_defaults(run=cmd_dagger)

    p = sub.add_parser("certify-isotropy", help="decide X1²+X2² = m(Y1²+Y2²)")
    p.add_argument("m", type=_positive)
    p.set_defaults(run=cmd_certify)

    p = sub.add_parser("surface-dump", help="print the canonical surface (debugging)")
    p.add_argument("input")
    p.add_argument("--outer-face", type=int, default=None)
    p.set_defaults(run=cmd_surface_dump)
    return ap


def main(argv=None, out=None):
    """Entry point; returns the process exit code."""
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.run(args, out)
    except (UserInputError, ValueError) as exc:
        print(f"knotgap: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (KnotgapError, AssertionError) as exc:
        print(f"knotgap: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
