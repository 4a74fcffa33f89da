"""`plot <kind> --in <file> [--summary <file>] --out <image>`.

Reads only the documented ecmoments CSV/JSON formats and logs a sha256 of
every value consumed by the figure, so renders are auditable against their
inputs.
"""

from __future__ import annotations

import argparse
import sys

from . import render
from .reader import InputError, read_csv_report, read_json_summary, values_checksum

KINDS = ("group_hist", "bias_trend", "sym_trend", "odd_coeff")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="plot", description=__doc__)
    parser.add_argument("kind", choices=KINDS)
    parser.add_argument("--in", dest="infile", required=True,
                        help="CSV report (JSON summary for group_hist)")
    parser.add_argument("--summary", help="optional JSON summary (bias_trend)")
    parser.add_argument("--out", required=True, help="output image (png/svg)")
    parser.add_argument("--title")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.kind == "group_hist":
            summary = read_json_summary(args.infile)
            consumed = render.render_group_hist(summary, args.out, args.title)
        elif args.kind == "bias_trend":
            report = read_csv_report(args.infile)
            summary = read_json_summary(args.summary) if args.summary else None
            consumed = render.render_bias_trend(report, args.out, args.title, summary)
        elif args.kind == "sym_trend":
            consumed = render.render_sym_trend(
                read_csv_report(args.infile), args.out, args.title
            )
        else:
            consumed = render.render_odd_coeff(
                read_csv_report(args.infile), args.out, args.title
            )
    except (InputError, OSError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.out}")
    print(f"consumed-sha256: {values_checksum(consumed)} ({len(consumed)} values)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
