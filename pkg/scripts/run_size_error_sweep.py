#!/usr/bin/env python3
"""Sweep kept-set size and minimum feasible epsilon across budget constants.

Small constants push the sampler below the identity regime, so the rows
show where certification starts to fail honestly; the CSV lands next to
this script unless --output says otherwise.
"""

import argparse
from fractions import Fraction
from pathlib import Path

from addsparse.experiment import ExperimentConfig, rows_to_csv, run_sweep


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--output", type=Path, default=Path(__file__).parent / "size_error_sweep.csv")
    ap.add_argument("--certify", choices=("exhaustive", "sample", "off"), default="off")
    args = ap.parse_args()

    config = ExperimentConfig(
        n_values=(8, 10),
        k=2,
        q=2,
        edge_count=40,
        epsilons=(Fraction(1, 2), Fraction(1, 4), Fraction(1, 8)),
        constants=(Fraction(4), Fraction(1), Fraction(1, 4), Fraction(1, 64)),
        strategies=("uniform", "degree"),
        seeds=(0, 1, 2),
        certify=args.certify,
        output=str(args.output),
    )
    rows = run_sweep(config)
    args.output.write_text(rows_to_csv(rows))
    kept = [int(r["kept"]) for r in rows if r["kept"]]
    print(f"wrote {args.output}: {len(rows)} rows, kept sizes {min(kept)}..{max(kept)}")


if __name__ == "__main__":
    main()
