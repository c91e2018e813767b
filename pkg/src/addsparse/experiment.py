"""Parameter sweeps over the sparsify-then-verify loop.

A sweep walks the cross product of instance sizes, epsilons, budget
constants, strategies and seeds in declaration order, one CSV row per cell.
Rows are emitted in that fixed order so sweep outputs diff cleanly.
"""

from __future__ import annotations

import csv
import io
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, perm

from . import fileio, verify
from . import sparsifier as sp
from .predicates import MAX_TABLE_SIZE, cut_predicate

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

CSV_COLUMNS = (
    "n", "k", "q", "m", "epsilon", "C", "strategy", "seed",
    "kept", "attempts", "min_feasible_epsilon", "verdict", "error",
)


@dataclass(frozen=True)
class ExperimentConfig:
    n_values: tuple[int, ...]
    k: int
    q: int
    epsilons: tuple[Fraction, ...]
    constants: tuple[Fraction, ...]
    strategies: tuple[str, ...] = ("uniform",)
    seeds: tuple[int, ...] = (0,)
    edge_count: int | None = None
    density: Fraction | None = None
    certify: str = "exhaustive"
    trials: int = 10_000
    directed: bool = True
    output: str = "sweep.csv"

    def __post_init__(self) -> None:
        if not self.n_values:
            raise ValueError("need at least one n")
        for eps in self.epsilons:
            if not 0 < eps < 1:
                raise ValueError(f"epsilon {eps} outside (0, 1)")
        if self.q**self.k > MAX_TABLE_SIZE:
            raise ValueError(f"q^k = {self.q ** self.k} exceeds the predicate table cap")
        if (self.edge_count is None) == (self.density is None):
            raise ValueError("give exactly one of edge_count and density")
        for s in self.strategies:
            if s not in sp.STRATEGIES:
                raise ValueError(f"unknown strategy {s!r}")

    def edges_for(self, n: int) -> int:
        available = perm(n, self.k) if self.directed else comb(n, self.k)
        if self.edge_count is not None:
            return self.edge_count
        return max(1, min(available, int(self.density * available)))

    @classmethod
    def from_toml(cls, path: str) -> "ExperimentConfig":
        with open(path, "rb") as fh:
            raw = tomllib.load(fh)
        section = raw.get("sweep", raw)
        known = {
            "n": "n_values", "k": "k", "q": "q", "m": "edge_count",
            "density": "density", "epsilons": "epsilons", "constants": "constants",
            "strategies": "strategies", "seeds": "seeds", "certify": "certify",
            "trials": "trials", "directed": "directed", "output": "output",
        }
        kwargs = {}
        for key, val in section.items():
            if key not in known:
                raise ValueError(f"unknown sweep config key {key!r}")
            kwargs[known[key]] = val
        if "n_values" in kwargs:
            kwargs["n_values"] = tuple(kwargs["n_values"])
        if "epsilons" in kwargs:
            kwargs["epsilons"] = tuple(Fraction(e) for e in kwargs["epsilons"])
        if "constants" in kwargs:
            kwargs["constants"] = tuple(Fraction(c) for c in kwargs["constants"])
        if "strategies" in kwargs:
            kwargs["strategies"] = tuple(kwargs["strategies"])
        if "seeds" in kwargs:
            kwargs["seeds"] = tuple(kwargs["seeds"])
        if "density" in kwargs:
            kwargs["density"] = Fraction(kwargs["density"])
        return cls(**kwargs)


def run_cell(config: ExperimentConfig, n: int, epsilon: Fraction, constant: Fraction,
             strategy: str, seed: int) -> dict[str, str]:
    row = {
        "n": str(n), "k": str(config.k), "q": str(config.q),
        "epsilon": str(epsilon), "C": str(constant), "strategy": strategy,
        "seed": str(seed), "m": "", "kept": "", "attempts": "",
        "min_feasible_epsilon": "", "verdict": "", "error": "",
    }
    try:
        m = config.edges_for(n)
        row["m"] = str(m)
        graph = fileio.generate(n, config.k, m, seed=seed, directed=config.directed)
        result = sp.sparsify(
            graph, epsilon, seed=seed, strategy=strategy, certify=config.certify,
            domains=(config.q,), constant=constant, trials=config.trials,
        )
        row["kept"] = str(len(result.kept))
        row["attempts"] = str(result.attempts)
        cut = cut_predicate(config.k, config.q)
        mode = verify.BOOLEAN if config.q == 2 else verify.ALL_BUT_ONE
        check_mode = "exhaustive" if config.certify == "exhaustive" else "sampled"
        report = verify.certify(
            graph, result, cut, verify.BoundSpec(mode, epsilon),
            mode=check_mode, trials=config.trials, seed=seed,
        )
        row["verdict"] = "pass" if report.verdict else "fail"
        feasible = verify.min_feasible_epsilon(
            graph, result, cut, mode=check_mode, spec_mode=mode,
            trials=config.trials, seed=seed,
        )
        row["min_feasible_epsilon"] = "inf" if feasible is None else str(feasible)
    except Exception as exc:  # the row records the failure, the sweep goes on
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def run_sweep(config: ExperimentConfig) -> list[dict[str, str]]:
    rows = []
    for n in config.n_values:
        for epsilon in config.epsilons:
            for constant in config.constants:
                for strategy in config.strategies:
                    for seed in config.seeds:
                        rows.append(run_cell(config, n, epsilon, constant, strategy, seed))
    return rows


def rows_to_csv(rows: list[dict[str, str]]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()
