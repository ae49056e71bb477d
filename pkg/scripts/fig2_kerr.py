"""Kerr de-Gaussification of a coherent state: delta versus mean photon number.

Writes the sweep CSV and prints, per coupling, where delta first reaches
1e-3 and how close the curve gets to the maximal envelope.
"""

import argparse
import csv
from pathlib import Path

from nongauss import cli


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    ap.add_argument("--out", default="results/kerr.csv", help="output CSV")
    ap.add_argument("--gammas", default="1e-2,1e-4,1e-6", help="Kerr couplings")
    ap.add_argument("--per-decade", type=int, default=10, help="nbar grid density")
    args = ap.parse_args()
    path = Path(args.out)
    path.parent.mkdir(parents=True, exist_ok=True)
    cli.main(["kerr", "--gammas", args.gammas, "--per-decade", str(args.per_decade), "--out", str(path)])

    curves = {}
    for r in csv.DictReader(path.open()):
        curves.setdefault(r["gamma"], []).append((float(r["nbar"]), float(r["delta"]), float(r["delta_max"])))
    print(f"{path}: {sum(map(len, curves.values()))} rows")
    for gamma, pts in curves.items():
        onset = next((n for n, d, _ in pts if d >= 1e-3), float("nan"))
        ratio = max(d / m for _, d, m in pts if m > 0)
        print(f"  gamma={float(gamma):.0e}: delta >= 1e-3 from nbar={onset:.3g}, max delta/envelope={ratio:.4f}")


if __name__ == "__main__":
    main()
