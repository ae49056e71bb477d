"""Gaussification sweep: delta versus lambda after several rounds.

Writes two CSVs (early rounds 0-3 and late rounds 0,5,10,20) and prints the
width of the near-Gaussian window at each round.
"""

import argparse
import csv
from pathlib import Path

from nongauss import cli


def window(rows, step, threshold=1e-3):
    edge = 0.0
    for r in rows:
        if int(r["step"]) != step:
            continue
        if not r["delta"] or float(r["delta"]) >= threshold:
            break
        edge = float(r["lambda"])
    return edge


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    ap.add_argument("--outdir", default="results", help="directory for the CSV files")
    ap.add_argument("--points", type=int, default=101, help="lambda grid points on [0, 1]")
    ap.add_argument("--jobs", type=int, default=1, help="worker processes")
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)

    for name, steps in (("early", "0,1,2,3"), ("late", "0,5,10,20")):
        path = out / f"gaussification_{name}.csv"
        cli.main(["gaussify", "--lambdas", f"0:1:{args.points}", "--steps", steps,
                  "--out", str(path), "--jobs", str(args.jobs)])
        rows = list(csv.DictReader(path.open()))
        empty = sum(not r["delta"] for r in rows)
        print(f"{path}: {len(rows)} rows, {empty} uncertified")
        for s in map(int, steps.split(",")):
            print(f"  step {s:2d}: delta < 1e-3 for lambda <= {window(rows, s):.2f}")


if __name__ == "__main__":
    main()
