"""Class counts per degree: exhaustive enumeration, orbit counting, and the published table."""

import argparse
import time

from planar_cayley.cli import PUBLISHED_COUNTS
from planar_cayley.enumeration import burnside_count, enumerate_schemes, raw_pair_count


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-degree", type=int, default=6)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    print(f"{'d':>2} {'pairs':>7} {'classes':>8} {'burnside':>9} {'published':>10} {'seconds':>8}")
    for d in range(3, args.max_degree + 1):
        t = time.perf_counter()
        n = len(enumerate_schemes(d, args.jobs))
        elapsed = time.perf_counter() - t
        pub = PUBLISHED_COUNTS.get(d, "-")
        flag = "" if pub in ("-", n) else "  <- differs"
        print(f"{d:>2} {raw_pair_count(d):>7} {n:>8} {burnside_count(d):>9} {pub:>10} {elapsed:>8.2f}{flag}")


if __name__ == "__main__":
    main()
