"""Regenerate the characterizing region for 12n242 from the census inputs.

Prints the certified length caps, the derived integer thresholds under both
coefficient modes, and a sweep of how the region moves with the tolerance.

    python scripts/reproduce_region.py [--tolerance 1/1000]
"""

import argparse
from fractions import Fraction

from charslope import PAPER_CONSTANTS, RIGOROUS_CONSTANTS, builtin_census, characterizing_region, parse_rational
from charslope.pipeline import Context, exclusion_report


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--tolerance", default="1/1000")
    ap.add_argument("--target", default="12n242")
    args = ap.parse_args()
    tol = parse_rational(args.tolerance)

    census = builtin_census()
    target = census.lookup(args.target)

    for context in Context:
        report = exclusion_report(target, census, context, tolerance=tol)
        row = ", ".join(f"{k}:{v.value}" for k, v in report.mechanisms().items())
        print(f"{context.value:22s} {row}")
    print()

    for constants in (RIGOROUS_CONSTANTS, PAPER_CONSTANTS):
        region = characterizing_region(target, census, constants, tolerance=tol)
        print(f"[{constants.label}, coefficient {constants.q_coefficient}]")
        print(f"  length cap     {float(region.length_cap):.6f}")
        print(f"  hypothesis cap {float(region.hypothesis_cap):.6f}")
        for line in region.describe():
            print(f"  {line}")
    print()

    print("tolerance sweep (rigorous mode)")
    for t in (Fraction(1, 10), Fraction(1, 100), Fraction(1, 1000), Fraction(1, 10**6)):
        r = characterizing_region(target, census, tolerance=t)
        print(f"  tol {str(t):>9s}  cap {float(r.length_cap):.6f}  q_min {r.q_min}  pos_p_min {r.pos_p_min}")


if __name__ == "__main__":
    main()
