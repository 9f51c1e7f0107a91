"""Script entry point: plot <csv> --kind region-map|fraction-map --out <png>."""

import argparse
import sys

from .render import PlotJob, PlotKind, SchemaError, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plot",
        description="Render a sweep CSV table as a raster map")
    parser.add_argument("csv", help="input CSV from a sweep or ego run")
    parser.add_argument("--kind", required=True,
                        choices=[k.value for k in PlotKind])
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--curves",
                        help="sidecar CSV of curves (name,beta,value) "
                             "to overlay dashed")
    return parser


def run(argv: list[str]) -> int:
    args = build_parser().parse_args(argv)
    job = PlotJob(csv_path=args.csv, out_path=args.out,
                  kind=PlotKind(args.kind), curves_path=args.curves)
    try:
        render(job)
    except (SchemaError, OSError) as exc:
        print(f"plot: {exc}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
