#!/usr/bin/env python3
"""Exhaustive zero-bound counterexample on K_4 and K_5, plus a sampled K_7 run."""

from addsparse import optimality_counterexample


def main() -> None:
    for n, q, samples in ((4, 3, None), (5, 3, None), (7, 3, 2000)):
        kwargs = {} if samples is None else {"samples": samples, "seed": 0}
        report = optimality_counterexample(n, q, **kwargs)
        worst = min(w.deviation for w in report.witnesses)
        print(
            f"K_{n} q={q} [{report.mode}]: {report.examined} proper subgraphs, "
            f"all violated={report.all_violated}, smallest deviation={worst}"
        )


if __name__ == "__main__":
    main()
