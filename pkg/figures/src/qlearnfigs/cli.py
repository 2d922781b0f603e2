"""Command-line renderer: `render --figure <id> --input <csv...> --out <file>`."""
from __future__ import annotations

import argparse
import sys

from .render import RenderError, render
from .specs import SPECS


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="qlearnrate-figures",
                                     description="Render figure datasets to images")
    sub = parser.add_subparsers(dest="command", required=True)
    p_render = sub.add_parser("render", help="render one figure from its CSV dataset(s)")
    p_render.add_argument("--figure", required=True, choices=sorted(SPECS))
    p_render.add_argument("--input", nargs="+", required=True)
    p_render.add_argument("--out", required=True)
    args = parser.parse_args(argv)
    try:
        render(args.figure, args.input, args.out)
    except (RenderError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    print(f"rendered {args.figure} to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
