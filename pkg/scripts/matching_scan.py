"""Write both sides of the kappa = 1 matching condition on a multiplier grid.

One CSV per system with columns k, wp, lhs, rhs, feasible, for k = 3..6,
ready for external plotting.

    python3 scripts/matching_scan.py --out results/
"""
import argparse
import csv
from pathlib import Path

from threebody.cli import lookup
from threebody.kappa1 import scan_matching, sign_changes


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=Path, default=Path("results"))
    parser.add_argument("--steps", type=int, default=500)
    parser.add_argument("--kmax", type=int, default=6)
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    for key in ("ps-minus", "helium"):
        system = lookup(key)
        path = args.out / f"scan_{key}.csv"
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["k", "wp", "lhs", "rhs", "feasible"])
            for k in range(3, args.kmax + 1):
                curve = scan_matching(system, k, steps=args.steps)
                for s in curve.samples:
                    writer.writerow([k, repr(s.wp), repr(s.lhs), repr(s.rhs), int(s.feasible)])
                bound = sum(s.feasible for s in curve.samples)
                print(f"{key:>9} k={k}: {bound:4d} bound samples, {len(sign_changes(curve))} sign changes")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
