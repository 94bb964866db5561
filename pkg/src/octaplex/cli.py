"""Command-line entry point.

Subcommands:

    report    build a family at size L, run its verification sections, write
              canonical JSON (optional) and a text summary with timings
    export    write check matrices in alist or MatrixMarket format
    selftest  fast invariant suite at L=2 (no exhaustive distance search)

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
The environment variable OCTAPLEX_SEED seeds fault injection used by the
negative-control tests.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .codes import build_bounded_family, build_periodic_family
from .exports import matrix_to_alist, matrix_to_mtx, write_text
from .metachecks import build_ladder
from .report import RUNNERS, Fault, render_text, report_json, run_octaplex_report

FAMILIES = ("octaplex", "octaplex-bounded", "2d", "3d")
EXPORT_KEYS = tuple(
    [f"hx{i}" for i in range(4)] + [f"hz{i}" for i in range(4)] + ["m0", "m1"]
)

USAGE_ERROR = 2
IO_ERROR = 3


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--L", type=int, required=True, help="lattice linear size")
    p.add_argument("--threads", type=int, default=0,
                   help="worker threads (0 = all cores)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="octaplex",
        description="Verification workbench for toric codes on the octaplex "
                    "tessellation and their transversal multi-controlled-Z gates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    rep = sub.add_parser("report", help="run verification and emit a report")
    _add_common(rep)
    rep.add_argument("--family", choices=FAMILIES, default="octaplex")
    rep.add_argument("--out", type=Path, default=None, help="JSON output path")
    rep.add_argument("--json", action="store_true",
                     help="print canonical JSON to stdout")
    rep.add_argument("--sections", type=str, default=None,
                     help="comma-separated subset: lattice,codes,logicals,"
                          "transversal,distance,metachecks")
    rep.add_argument("--inject-fault", choices=("perturb-logical", "recolor-vertex"),
                     default=None, help=argparse.SUPPRESS)

    exp = sub.add_parser("export", help="write check matrices to files")
    _add_common(exp)
    exp.add_argument("--family", choices=("octaplex", "octaplex-bounded"),
                     default="octaplex")
    exp.add_argument("--which", required=True,
                     help="comma-separated subset of "
                          "hx0..hx3,hz0..hz3,m0,m1 or 'all'")
    exp.add_argument("--format", choices=("alist", "mtx"), default="alist")
    exp.add_argument("--out", type=Path, required=True, help="output directory")

    st = sub.add_parser("selftest", help="fast invariant suite at L=2")
    st.add_argument("--threads", type=int, default=0)
    st.add_argument("--out", type=Path, default=None)
    st.add_argument("--json", action="store_true")
    st.add_argument("--inject-fault", choices=("perturb-logical", "recolor-vertex"),
                    default=None, help=argparse.SUPPRESS)
    return parser


def _threads(value: int) -> int:
    if value and value > 0:
        return value
    return os.cpu_count() or 1


def _fault(kind: str | None) -> Fault | None:
    if kind is None:
        return None
    return Fault(kind, seed=int(os.environ.get("OCTAPLEX_SEED", "0")))


def cmd_report(args) -> int:
    if args.L < 2:
        print("error: L must be >= 2", file=sys.stderr)
        return USAGE_ERROR
    if args.family == "3d" and args.L % 2:
        print("error: the 3d family needs even L (cube 2-coloring)", file=sys.stderr)
        return USAGE_ERROR
    threads = _threads(args.threads)
    sections = None
    if args.sections:
        sections = {s.strip() for s in args.sections.split(",") if s.strip()}
        unknown = sections - {"lattice", "codes", "logicals", "transversal",
                              "distance", "metachecks"}
        if unknown:
            print(f"error: unknown sections {sorted(unknown)}", file=sys.stderr)
            return USAGE_ERROR
    runner = RUNNERS[args.family]
    if args.family == "octaplex":
        result = runner(args.L, threads=threads, sections=sections,
                        fault=_fault(args.inject_fault))
    else:
        result = runner(args.L, threads=threads)
    text = render_text(result)
    sys.stdout.write(text)
    payload = report_json(result)
    if args.json:
        sys.stdout.write(payload)
    if args.out is not None:
        try:
            write_text(args.out, payload)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return IO_ERROR
    return 0 if result.ok else 1


def cmd_export(args) -> int:
    if args.L < 2:
        print("error: L must be >= 2", file=sys.stderr)
        return USAGE_ERROR
    keys = (
        list(EXPORT_KEYS)
        if args.which == "all"
        else [k.strip() for k in args.which.split(",") if k.strip()]
    )
    unknown = [k for k in keys if k not in EXPORT_KEYS]
    if unknown:
        print(f"error: unknown selectors {unknown}", file=sys.stderr)
        return USAGE_ERROR
    if args.family == "octaplex":
        family = build_periodic_family(args.L)
        ladder = build_ladder(family.complex, family.blocks[0])
        matrices = {"m0": ladder.m0, "m1": ladder.m1}
    else:
        family = build_bounded_family(args.L)
        matrices = {}
        bad = [k for k in keys if k in ("m0", "m1")]
        if bad:
            print(f"error: {bad} are defined for the periodic family only",
                  file=sys.stderr)
            return USAGE_ERROR
    for b, blk in enumerate(family.blocks):
        matrices[f"hx{b}"] = blk.hx
        matrices[f"hz{b}"] = blk.hz
    render = matrix_to_alist if args.format == "alist" else matrix_to_mtx
    try:
        for k in keys:
            path = args.out / f"{args.family}_L{args.L}_{k}.{args.format}"
            write_text(path, render(matrices[k]))
    except OSError as exc:
        print(f"error: cannot write under {args.out}: {exc}", file=sys.stderr)
        return IO_ERROR
    print(f"wrote {len(keys)} files to {args.out}")
    return 0


def cmd_selftest(args) -> int:
    threads = _threads(args.threads)
    result = run_octaplex_report(
        2,
        threads=threads,
        sections={"lattice", "codes", "logicals", "transversal", "metachecks"},
        fault=_fault(args.inject_fault),
    )
    sys.stdout.write(render_text(result))
    payload = report_json(result)
    if args.json:
        sys.stdout.write(payload)
    if args.out is not None:
        try:
            write_text(args.out, payload)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return IO_ERROR
    return 0 if result.ok else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "report":
        return cmd_report(args)
    if args.command == "export":
        return cmd_export(args)
    return cmd_selftest(args)


if __name__ == "__main__":
    sys.exit(main())
