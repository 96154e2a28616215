"""copsurvey command line.

Subcommands: solve, survey, verify-m3, enumerate, report.
Exit codes: 0 success; 1 usage/parse/I-O errors; 2 a bound or assertion
failed (cop number above --max-k, audit contradiction, verification failure).
"""
from __future__ import annotations

import argparse
import os
import sys

from . import structure, survey as survey_mod
from .enumeration import GenSpec, generate
from .graphs import Graph6Error, parse_edge_list, parse_graph6, to_graph6
from .solver import ExceedsKMax, cop_number, trace_game

JOBS_ENV = "COPSURVEY_JOBS"


def _default_jobs() -> int:
    v = os.environ.get(JOBS_ENV)
    if v:
        try:
            return max(1, int(v))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _load_graph(args) -> "Graph":
    if args.graph6:
        return parse_graph6(args.graph6)
    with open(args.edges) as f:
        return parse_edge_list(f.read())


def cmd_solve(args) -> int:
    try:
        g = _load_graph(args)
    except (Graph6Error, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    lb = structure.lower_bound(g)
    print(f"lower_bound = {lb.value} ({lb.reason})")
    if args.lemmas:
        verdict = structure.prune_c_at_most_2(g)
        if verdict.proved:
            print(f"pruned_by = {verdict.lemma}, witness = {list(verdict.witness)}")
        else:
            print("pruned_by = none (filters inconclusive)")
    try:
        c = cop_number(g, args.max_k)
    except ExceedsKMax:
        print(f"cop_number > {args.max_k}")
        return 2
    print(f"cop_number = {c}")
    if args.trace:
        print(trace_game(g, c).render(), end="")
    return 0


def cmd_survey(args) -> int:
    cfg = survey_mod.SurveyConfig(
        n=args.n,
        mode=args.mode,
        jobs=args.jobs,
        threshold=args.threshold,
        min_degree=args.min_degree,
        max_degree=args.max_degree,
        in_path=getattr(args, "in"),
        sample=args.sample,
        seed=args.seed,
        stable_output=args.stable_output,
    )
    try:
        s = survey_mod.run_survey(cfg, args.out, args.summary, args.checkpoint)
    except (OSError, ValueError, Graph6Error) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    print(survey_mod.CSV_HEADER)
    print(s.csv_row())
    for g6, c in s.high:
        print(f"cop_number >= {args.threshold}: {g6} (c={c})")
    if args.figures:
        from .figures import render_survey_figures

        for p in render_survey_figures(args.out, args.figures):
            print(f"figure: {p}")
    if cfg.mode == "audit":
        print(f"audited {s.audit_sampled} pruned classes, "
              f"{len(s.audit_contradictions)} contradictions")
        if s.audit_contradictions:
            for g6 in s.audit_contradictions:
                print(f"UNSOUND PRUNE: {g6}", file=sys.stderr)
            return 2
    return 0


def cmd_verify_m3(args) -> int:
    report = survey_mod.verify_m3(args.mode, args.jobs, args.out_dir)
    for line in report.lines:
        print(line)
    if not report.ok:
        if report.offender:
            print(f"offending graph6: {report.offender}", file=sys.stderr)
        return 2
    return 0


def cmd_enumerate(args) -> int:
    try:
        spec = GenSpec(
            n=args.n,
            min_degree=args.min_degree,
            max_degree=args.max_degree,
        )
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    out = open(args.out, "w") if args.out else sys.stdout
    count = 0
    try:
        for g in generate(spec):
            out.write(to_graph6(g) + "\n")
            count += 1
    finally:
        if args.out:
            out.close()
    print(f"{count} classes", file=sys.stderr)
    return 0


def cmd_report(args) -> int:
    from .figures import render_survey_figures

    try:
        for p in render_survey_figures(args.jsonl, args.out_dir):
            print(f"figure: {p}")
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="copsurvey", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("solve", help="solve one graph")
    src = ps.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph6", help="header-less graph6 string")
    src.add_argument("--edges", help="edge-list file ('n m' then 'u v' lines)")
    ps.add_argument("--max-k", type=int, default=4)
    ps.add_argument("--trace", action="store_true", help="print a capture transcript")
    ps.add_argument("--lemmas", action="store_true", help="print the prune verdict")
    ps.set_defaults(func=cmd_solve)

    pv = sub.add_parser("survey", help="survey all connected classes of order n")
    pv.add_argument("--n", type=int, required=True)
    pv.add_argument("--mode", choices=["full", "pruned", "audit"], default="full")
    pv.add_argument("--jobs", type=int, default=_default_jobs())
    pv.add_argument("--out", default="report.jsonl")
    pv.add_argument("--summary", default="summary.csv")
    pv.add_argument("--checkpoint", default=None)
    pv.add_argument("--threshold", type=int, default=3)
    pv.add_argument("--in", dest="in", default=None,
                    help="consume an external graph6 stream instead of generating")
    pv.add_argument("--sample", type=int, default=10_000, help="audit sample size")
    pv.add_argument("--seed", type=int, default=0)
    pv.add_argument("--min-degree", type=int, default=0)
    pv.add_argument("--max-degree", type=int, default=None)
    pv.add_argument("--stable-output", action="store_true",
                    help="omit timing fields for byte-identical reruns")
    pv.add_argument("--figures", default=None,
                    help="directory for rendered figures")
    pv.set_defaults(func=cmd_survey)

    pm = sub.add_parser("verify-m3", help="reproduce the minimum-order results")
    pm.add_argument("--mode", choices=["full", "pruned"], default="pruned")
    pm.add_argument("--jobs", type=int, default=_default_jobs())
    pm.add_argument("--out-dir", default="verify-m3-out")
    pm.set_defaults(func=cmd_verify_m3)

    pe = sub.add_parser("enumerate", help="emit one graph6 line per class")
    pe.add_argument("--n", type=int, required=True)
    pe.add_argument("--min-degree", type=int, default=0)
    pe.add_argument("--max-degree", type=int, default=None)
    pe.add_argument("--out", default=None)
    pe.set_defaults(func=cmd_enumerate)

    pr = sub.add_parser("report", help="render figures from a survey JSONL")
    pr.add_argument("--jsonl", required=True)
    pr.add_argument("--out-dir", required=True)
    pr.set_defaults(func=cmd_report)

    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 1 if e.code not in (0, None) else 0
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
