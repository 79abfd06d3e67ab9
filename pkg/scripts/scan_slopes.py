"""Tabulate verdicts over a box of slopes and count coverage per condition.

    python scripts/scan_slopes.py [--p-max 600] [--q-max 60]
"""

import argparse
from collections import Counter
from math import gcd

from charslope import Slope, builtin_census, characterizing_region, check_slope
from charslope.twist import family_certificate


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p-max", type=int, default=600)
    ap.add_argument("--q-max", type=int, default=60)
    args = ap.parse_args()

    census = builtin_census()
    region = characterizing_region(census.lookup("12n242"), census)

    counts: Counter = Counter()
    for q in range(1, args.q_max + 1):
        for p in range(-args.p_max, args.p_max + 1):
            if gcd(p, q) != 1:
                continue
            v = check_slope(region, Slope(p, q))
            assert v.replay()
            counts[v.condition or "unknown"] += 1
    total = sum(counts.values())
    print(f"{total} slopes with |p| <= {args.p_max}, 1 <= q <= {args.q_max}")
    for key in ("i", "ii", "iii", "unknown"):
        print(f"  {key:8s} {counts[key]:8d}  {counts[key] / total:6.1%}")

    # 1/q is characterizing for 12n242 once q >= q_min but not for the genus-2 family
    print()
    for q in (1, region.q_min - 1, region.q_min):
        cert = family_certificate(q)
        v = check_slope(region, Slope(1, q))
        print(f"  1/{q}: 12n242 {v.status}; {cert.knot_name} non-characterizing")


if __name__ == "__main__":
    main()
