"""Committee rules: MaxSwapPAV, SwapPAV, exact PAV, GreedyAV and SeqPAV."""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional

import numpy as np

from core import ZERO, Committee, ElectionInstance, SolveResult, SwapWitness
from pav import (
    DEFAULT_ENUMERATION_BUDGET,
    ScoreTracker,
    exact_pav,
    harmonic,
    pav_score,
)

MAX_SEED = 2**64 - 1

# e > 2718/1000, so 2718^t >= k * 1000^t certifies t >= ln k.
_E_LOWER_NUM = 2718
_E_LOWER_DEN = 1000

INIT_KINDS = ("lexicographic", "random", "explicit", "rule")
INIT_RULES = ("greedyav", "seqpav")


class UnknownRuleError(ValueError):
    def __init__(self, rule_id: str):
        super().__init__(f'Rule "{rule_id}" is not known; expected one of {sorted(RULES)}.')
        self.rule_id = rule_id


class InitPolicyError(ValueError):
    """An InitPolicy does not describe a usable starting committee."""


@dataclass(frozen=True)
class InitPolicy:
    kind: str = "lexicographic"
    seed: Optional[int] = None
    committee: Optional[Committee] = None
    rule: Optional[str] = None

    def __post_init__(self) -> None:
        if self.kind not in INIT_KINDS:
            raise InitPolicyError(f"Unknown init kind {self.kind!r}; expected one of {INIT_KINDS}.")
        if self.kind == "random" and (self.seed is None or not 0 <= self.seed <= MAX_SEED):
            raise InitPolicyError(f"Seeded-random init needs a 64-bit unsigned seed, got {self.seed}.")
        if self.kind == "explicit" and self.committee is None:
            raise InitPolicyError("Explicit init needs a committee.")
        if self.kind == "rule" and self.rule not in INIT_RULES:
            raise InitPolicyError(f"Rule init needs one of {INIT_RULES}, got {self.rule!r}.")

    @classmethod
    def lexicographic(cls) -> "InitPolicy":
        return cls()

    @classmethod
    def seeded(cls, seed: int) -> "InitPolicy":
        return cls(kind="random", seed=seed)

    @classmethod
    def explicit(cls, committee: Committee) -> "InitPolicy":
        return cls(kind="explicit", committee=committee)

    @classmethod
    def from_rule(cls, rule: str) -> "InitPolicy":
        return cls(kind="rule", rule=rule)


def initial_committee(instance: ElectionInstance, policy: InitPolicy) -> Committee:
    if policy.kind == "lexicographic":
        return Committee(tuple(range(instance.k)))
    if policy.kind == "random":
        rng = np.random.Generator(np.random.PCG64(policy.seed))
        picked = rng.choice(instance.m, size=instance.k, replace=False)
        return Committee.of(int(candidate) for candidate in picked)
    if policy.kind == "rule":
        return greedy_av(instance) if policy.rule == "greedyav" else seq_pav(instance)
    policy.committee.require_size(instance)
    return policy.committee


def max_swap_threshold(k: int) -> Fraction:
    return Fraction(1, 2 * k**3)


def certified_ln_ceiling(k: int) -> int:
    """Smallest integer t >= 0 with (2718/1000)^t >= k; always t >= ln k."""
    t = 0
    while _E_LOWER_NUM**t < k * _E_LOWER_DEN**t:
        t += 1
    return t


def max_swap_bound(n: int, k: int) -> int:
    """Upper bound 2n(ln k + 1)k^3 on MaxSwapPAV swaps, with ln k rounded up."""
    return 2 * n * (certified_ln_ceiling(k) + 1) * k**3


def remaining_swap_bound(instance: ElectionInstance, score: Fraction) -> int:
    """Swaps still possible from ``score`` when each adds at least 1/(2k^3)."""
    headroom = instance.n * harmonic(instance.k) - score
    return math.floor(headroom / max_swap_threshold(instance.k))


def minimum_improvement(k: int) -> Fraction:
    """Smallest positive PAV-score change: scores are multiples of 1/lcm(1..k)."""
    return Fraction(1, math.lcm(*range(1, k + 1)))


def swap_pav_bound(instance: ElectionInstance) -> int:
    return math.floor(instance.n * harmonic(instance.k) / minimum_improvement(instance.k))


def max_swap_pav(
    instance: ElectionInstance,
    init: Optional[InitPolicy] = None,
    debug: bool = False,
) -> SolveResult:
    """Apply the maximum-diff swap while it gains at least 1/(2k^3)."""
    start = time.monotonic()
    initial = initial_committee(instance, init or InitPolicy.lexicographic())
    threshold = max_swap_threshold(instance.k)
    tracker = ScoreTracker(instance, initial, debug=debug)

    trace: List[SwapWitness] = []
    while True:
        best = tracker.best_swap()
        if best is None or best.diff < threshold:
            break
        tracker.apply(best.out_candidate, best.in_candidate)
        trace.append(best)
        logging.debug(
            "max_swap_pav swap out=%s in=%s diff=%s", best.out_candidate, best.in_candidate, best.diff
        )

    logging.info(
        "Finished max_swap_pav n=%s m=%s k=%s swaps=%s duration=%.3fs",
        instance.n,
        instance.m,
        instance.k,
        len(trace),
        time.monotonic() - start,
    )
    return SolveResult(
        rule="maxswappav",
        committee=tracker.committee,
        final_score=tracker.score,
        initial=initial,
        swaps=tuple(trace),
        swap_count=len(trace),
    )


def swap_pav(
    instance: ElectionInstance,
    init: Optional[InitPolicy] = None,
    debug: bool = False,
) -> SolveResult:
    """Apply the first strictly improving swap in (in, out) order until none is left."""
    start = time.monotonic()
    initial = initial_committee(instance, init or InitPolicy.lexicographic())
    tracker = ScoreTracker(instance, initial, debug=debug)

    trace: List[SwapWitness] = []
    improved = True
    while improved:
        improved = False
        for out_candidate, in_candidate in tracker.swaps():
            diff = tracker.diff(out_candidate, in_candidate)
            if diff > 0:
                tracker.apply(out_candidate, in_candidate)
                trace.append(SwapWitness(out_candidate, in_candidate, diff))
                improved = True
                break

    logging.info(
        "Finished swap_pav n=%s m=%s k=%s swaps=%s duration=%.3fs",
        instance.n,
        instance.m,
        instance.k,
        len(trace),
        time.monotonic() - start,
    )
    return SolveResult(
        rule="swappav",
        committee=tracker.committee,
        final_score=tracker.score,
        initial=initial,
        swaps=tuple(trace),
        swap_count=len(trace),
    )


def greedy_av(instance: ElectionInstance) -> Committee:
    chosen: List[int] = []
    represented = [False] * instance.n
    for _ in range(instance.k):
        best_candidate, best_count = -1, -1
        for candidate in instance.candidates:
            if candidate in chosen:
                continue
            count = sum(1 for voter in instance.approvers[candidate] if not represented[voter])
            if count > best_count:
                best_candidate, best_count = candidate, count
        chosen.append(best_candidate)
        for voter in instance.approvers[best_candidate]:
            represented[voter] = True
    return Committee.of(chosen)


def seq_pav(instance: ElectionInstance) -> Committee:
    chosen: List[int] = []
    counts = [0] * instance.n
    for _ in range(instance.k):
        best_candidate, best_gain = -1, Fraction(-1)
        for candidate in instance.candidates:
            if candidate in chosen:
                continue
            gain = sum(
                (Fraction(1, counts[voter] + 1) for voter in instance.approvers[candidate]), ZERO
            )
            if gain > best_gain:
                best_candidate, best_gain = candidate, gain
        chosen.append(best_candidate)
        for voter in instance.approvers[best_candidate]:
            counts[voter] += 1
    return Committee.of(chosen)


def _static_result(rule: str, instance: ElectionInstance, committee: Committee) -> SolveResult:
    return SolveResult(rule=rule, committee=committee, final_score=pav_score(instance, committee))


def _solve_pav(instance: ElectionInstance, init: Optional[InitPolicy], budget: int, debug: bool) -> SolveResult:
    committee, score = exact_pav(instance, budget=budget)
    return SolveResult(rule="pav", committee=committee, final_score=score)


RULES: Dict[str, Callable[[ElectionInstance, Optional[InitPolicy], int, bool], SolveResult]] = {
    "maxswappav": lambda instance, init, budget, debug: max_swap_pav(instance, init, debug),
    "swappav": lambda instance, init, budget, debug: swap_pav(instance, init, debug),
    "pav": _solve_pav,
    "greedyav": lambda instance, init, budget, debug: _static_result(
        "greedyav", instance, greedy_av(instance)
    ),
    "seqpav": lambda instance, init, budget, debug: _static_result(
        "seqpav", instance, seq_pav(instance)
    ),
}

SWAP_RULES = ("maxswappav", "swappav")


def solve(
    rule_id: str,
    instance: ElectionInstance,
    init: Optional[InitPolicy] = None,
    enumeration_budget: int = DEFAULT_ENUMERATION_BUDGET,
    debug: bool = False,
) -> SolveResult:
    if rule_id not in RULES:
        raise UnknownRuleError(rule_id)
    return RULES[rule_id](instance, init, enumeration_budget, debug)
