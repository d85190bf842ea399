"""Command line: flowplots <spec.ini> [more specs...]"""

from __future__ import annotations

import argparse
import sys

from .figures import render
from .specfile import SpecError, read_spec


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="flowplots",
        description="render figures from 1D blood-flow solver CSV output")
    ap.add_argument("spec", nargs="+", help="plot spec file(s)")
    args = ap.parse_args(argv)
    try:
        for path in args.spec:
            spec = read_spec(path)
            render(spec)
            print(f"wrote {spec.output}")
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
