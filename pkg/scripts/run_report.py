#!/usr/bin/env python3
"""Re-verify every shipped covering table and print the comparison report.

Equivalent to `digitcover report`, kept as a script for quick iteration on
thread counts and resolution limits.
"""

import argparse
import sys

from digitcover.bundle import default_bundle, ingest_tables, reproduce_report


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--tables", default=None, help="bundle directory")
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--resolve-limit", type=int, default=64)
    args = parser.parse_args()

    bundle = ingest_tables(args.tables) if args.tables else default_bundle()
    report = reproduce_report(
        bundle, threads=args.threads, resolve_limit=args.resolve_limit
    )
    print("\n".join(report.lines()))
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
