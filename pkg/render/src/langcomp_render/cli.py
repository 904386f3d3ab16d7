"""render: figures from langcomp data files.

Either render one explicit FigureSpec JSON, or sweep a reproduce bundle
and render everything its files call for.  Exit codes: 0 success, 2 bad
spec/inputs, 1 unexpected failure.
"""

from __future__ import annotations

import argparse
import os
import sys

from .figures import FigureSpec, RenderError, render_bundle, render_figure, write_manifest


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="render",
                                 description="figures from langcomp CSV/JSON artifacts")
    src = ap.add_mutually_exclusive_group(required=True)
    src.add_argument("--spec", help="FigureSpec JSON file")
    src.add_argument("--bundle", help="reproduce bundle directory")
    ap.add_argument("--outdir", help="image directory (default: alongside inputs)")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.spec:
            spec = FigureSpec.from_json(args.spec)
            if args.outdir:
                spec.output = os.path.join(args.outdir, os.path.basename(spec.output))
            path = render_figure(spec)
            write_manifest(os.path.dirname(os.path.abspath(path)), spec.consumed)
            print(path)
        else:
            for path in render_bundle(args.bundle, args.outdir):
                print(path)
        return 0
    except RenderError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
