"""Rule-versus-axiom pass-rate table over seeded impartial-culture instances."""

from __future__ import annotations

import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np
import pandas as pd

from axioms import AXIOMS, CheckBudget, implication_audit
from core import rational_str
from generators import GenParams, generate
from pav import DEFAULT_ENUMERATION_BUDGET
from solvers import solve

TABLE1_RULES = ("maxswappav", "swappav", "greedyav", "seqpav")
# Rows that must reach 100% on the listed axioms.
GUARANTEES: Dict[str, Tuple[str, ...]] = {
    "maxswappav": AXIOMS,
    "swappav": AXIOMS,
    "greedyav": ("jr",),
    "pav": AXIOMS,
}


@dataclass(frozen=True)
class BenchSettings:
    n: int
    m: int
    k: int
    trials: int
    seed: int
    p: float = 0.5
    with_pav: bool = False
    check_budget: CheckBudget = field(default_factory=CheckBudget)
    enumeration_budget: int = DEFAULT_ENUMERATION_BUDGET

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError(f"Need at least one trial, got trials={self.trials}")

    @property
    def rules(self) -> Tuple[str, ...]:
        if self.with_pav and math.comb(self.m, self.k) <= self.enumeration_budget:
            return TABLE1_RULES + ("pav",)
        return TABLE1_RULES


@dataclass
class BenchReport:
    trials: int
    rules: Tuple[str, ...]
    passed: Dict[str, Dict[str, int]]
    violation_seeds: Dict[str, List[int]]
    frame: pd.DataFrame

    def unmet_guarantees(self) -> List[str]:
        """``rule_axiom`` labels whose guaranteed row fell short of 100%."""
        unmet = []
        for rule in self.rules:
            for axiom in GUARANTEES.get(rule, ()):
                if self.passed[rule][axiom] != self.trials:
                    unmet.append(f"{rule}_{axiom}")
        return unmet


def trial_seed(seed: int, trial: int) -> int:
    """Instance seed for one trial; reusable with ``gen impartial --seed``."""
    return int(np.random.SeedSequence([seed, trial]).generate_state(1, dtype=np.uint64)[0])


def _run_trial(job: Tuple[BenchSettings, int]) -> List[dict]:
    settings, trial = job
    instance_seed = trial_seed(settings.seed, trial)
    instance = generate(
        GenParams(
            model="impartial",
            n=settings.n,
            m=settings.m,
            k=settings.k,
            seed=instance_seed,
            p=settings.p,
        )
    )

    rows = []
    for rule in settings.rules:
        result = solve(rule, instance, enumeration_budget=settings.enumeration_budget)
        report = implication_audit(instance, result.committee, settings.check_budget)
        rows.append(
            {
                "trial": trial,
                "seed": instance_seed,
                "rule": rule,
                "committee": " ".join(str(c) for c in result.committee),
                "pav_score": rational_str(result.final_score),
                "swaps": result.swap_count,
                "jr": report.jr.satisfied,
                "pjr": report.pjr.satisfied,
                "ejr": report.ejr.satisfied,
            }
        )
    return rows


def run_table1(settings: BenchSettings, workers: int = 1) -> BenchReport:
    start = time.monotonic()
    jobs = [(settings, trial) for trial in range(settings.trials)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            # map() yields in submission order, so rows stay in trial order.
            batches = list(executor.map(_run_trial, jobs))
    else:
        batches = [_run_trial(job) for job in jobs]

    frame = pd.DataFrame([row for batch in batches for row in batch])
    rules = settings.rules
    passed: Dict[str, Dict[str, int]] = {}
    violation_seeds: Dict[str, List[int]] = {}
    for rule in rules:
        rows = frame[frame["rule"] == rule]
        passed[rule] = {axiom: int(rows[axiom].sum()) for axiom in AXIOMS}
        failing = rows[~(rows["jr"] & rows["pjr"] & rows["ejr"])]
        violation_seeds[rule] = [int(s) for s in failing["seed"]]

    logging.info(
        "Finished bench table1 n=%s m=%s k=%s trials=%s workers=%s duration=%.3fs",
        settings.n,
        settings.m,
        settings.k,
        settings.trials,
        workers,
        time.monotonic() - start,
    )
    return BenchReport(
        trials=settings.trials,
        rules=rules,
        passed=passed,
        violation_seeds=violation_seeds,
        frame=frame,
    )


def write_csv(report: BenchReport, path: str) -> None:
    report.frame.to_csv(path, index=False)
    logging.info("Wrote bench records path=%s rows=%s", path, len(report.frame))

