"""Command line front end: figure id plus artifact directory in, vector
image out."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .artifacts import ArtifactError
from .render import FIGURES, FigureSpec, render

__all__ = ["main"]


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="dwfigures",
        description="render driven-well figures from CSV/JSON artifacts")
    parser.add_argument("figure", nargs="+",
                        help=f"figure id(s), e.g. {sorted(FIGURES)}; 'all' "
                             "renders every figure whose inputs are present")
    parser.add_argument("--artifacts", type=Path, required=True,
                        help="directory holding the artifact files")
    parser.add_argument("--output", type=Path, default=Path("figures_out"),
                        help="directory for the rendered images")
    parser.add_argument("--format", action="append", default=[],
                        help="image format (repeatable; default svg)")
    args = parser.parse_args(argv)

    wanted = list(args.figure)
    if wanted == ["all"]:
        wanted = sorted(FIGURES, key=lambda s: int(s))
        lenient = True
    else:
        lenient = False
    formats = tuple(args.format) or ("svg",)

    status = 0
    for fig_id in wanted:
        spec = FigureSpec(figure_id=fig_id, artifact_dir=args.artifacts,
                          output_dir=args.output, formats=formats)
        try:
            written = render(spec)
        except ArtifactError as exc:
            if lenient:
                print(f"figure {fig_id}: skipped ({exc})")
                continue
            print(f"figure {fig_id}: {exc}", file=sys.stderr)
            status = 1
            continue
        for path in written:
            print(f"figure {fig_id}: wrote {path}")
    return status


if __name__ == "__main__":
    sys.exit(main())
