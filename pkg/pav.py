"""PAV scoring: harmonic weights, committee scores, marginal contributions and swaps.

``pav_score`` and ``swap_diff`` follow the definitions literally and are the
reference semantics. ``ScoreTracker`` keeps per-voter representation counts so
a swap diff costs O(approvers) instead of O(n * ballot size); with
``debug=True`` every incremental value is recomputed from scratch and compared.
"""

from __future__ import annotations

import itertools
import logging
import math
import time
from functools import lru_cache
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple

from core import (
    ZERO,
    Committee,
    ElectionInstance,
    MembershipError,
    SwapWitness,
)

DEFAULT_ENUMERATION_BUDGET = 1_000_000


class EnumerationBudgetExceeded(RuntimeError):
    def __init__(self, committees: int, budget: int):
        super().__init__(
            f"Exact PAV would enumerate {committees} committees, over the budget of {budget}."
        )
        self.committees = committees
        self.budget = budget


@lru_cache(maxsize=None)
def harmonic(p: int) -> Fraction:
    if p < 0:
        raise ValueError(f"harmonic() needs p >= 0, got {p}")
    if p == 0:
        return ZERO
    return harmonic(p - 1) + Fraction(1, p)


def representation_counts(instance: ElectionInstance, committee: Committee) -> List[int]:
    """``|W ∩ A_i|`` for every voter."""
    committee.check_against(instance)
    members = committee.member_set
    return [len(members & ballot) for ballot in instance.ballot_sets]


def pav_score(instance: ElectionInstance, committee: Committee) -> Fraction:
    return sum(
        (harmonic(count) for count in representation_counts(instance, committee)), ZERO
    )


def covered_voters(instance: ElectionInstance, committee: Committee) -> int:
    return sum(1 for count in representation_counts(instance, committee) if count > 0)


def marginal_contribution(instance: ElectionInstance, committee: Committee, member: int) -> Fraction:
    if member not in committee:
        raise MembershipError(f"Candidate {member} is not a member of {list(committee.members)}.")
    return pav_score(instance, committee) - pav_score(instance, committee.without(member))


def total_marginal_contribution(instance: ElectionInstance, committee: Committee) -> Fraction:
    return sum(
        (marginal_contribution(instance, committee, member) for member in committee), ZERO
    )


def swap_diff(
    instance: ElectionInstance, committee: Committee, out_candidate: int, in_candidate: int
) -> Fraction:
    if in_candidate < 0 or in_candidate >= instance.m:
        raise MembershipError(f"Candidate {in_candidate} is outside the range 0..{instance.m - 1}.")
    swapped = committee.swap(out_candidate, in_candidate)
    return pav_score(instance, swapped) - pav_score(instance, committee)


class ScoreTracker:
    """Mutable working committee with per-voter counts for fast swap diffs."""

    def __init__(self, instance: ElectionInstance, committee: Committee, debug: bool = False):
        self.instance = instance
        self.debug = debug
        self._members = set(committee.members)
        self._counts = representation_counts(instance, committee)
        self._score = sum((harmonic(count) for count in self._counts), ZERO)

    @property
    def committee(self) -> Committee:
        return Committee(tuple(sorted(self._members)))

    @property
    def score(self) -> Fraction:
        return self._score

    def outside(self) -> List[int]:
        return [c for c in self.instance.candidates if c not in self._members]

    def diff(self, out_candidate: int, in_candidate: int) -> Fraction:
        ballots = self.instance.ballot_sets
        gain = ZERO
        for voter in self.instance.approvers[in_candidate]:
            if out_candidate not in ballots[voter]:
                gain += Fraction(1, self._counts[voter] + 1)
        for voter in self.instance.approvers[out_candidate]:
            if in_candidate not in ballots[voter]:
                gain -= Fraction(1, self._counts[voter])

        if self.debug:
            reference = swap_diff(self.instance, self.committee, out_candidate, in_candidate)
            if reference != gain:
                raise AssertionError(
                    f"Incremental diff {gain} != recomputed {reference} "
                    f"for out={out_candidate} in={in_candidate}"
                )
        return gain

    def apply(self, out_candidate: int, in_candidate: int) -> Fraction:
        delta = self.diff(out_candidate, in_candidate)
        for voter in self.instance.approvers[out_candidate]:
            self._counts[voter] -= 1
        for voter in self.instance.approvers[in_candidate]:
            self._counts[voter] += 1
        self._members.remove(out_candidate)
        self._members.add(in_candidate)
        self._score += delta

        if self.debug:
            reference = pav_score(self.instance, self.committee)
            if reference != self._score:
                raise AssertionError(f"Incremental score {self._score} != recomputed {reference}")
        return delta

    def swaps(self) -> Iterable[Tuple[int, int]]:
        """All (out, in) pairs in lexicographic (in, out) order."""
        members = sorted(self._members)
        for in_candidate in self.outside():
            for out_candidate in members:
                yield out_candidate, in_candidate

    def best_swap(self) -> Optional[SwapWitness]:
        """Maximum-diff swap; ties go to the smallest (in, out)."""
        best: Optional[SwapWitness] = None
        for out_candidate, in_candidate in self.swaps():
            diff = self.diff(out_candidate, in_candidate)
            if best is None or diff > best.diff:
                best = SwapWitness(out_candidate, in_candidate, diff)
        return best


def is_swap_free(
    instance: ElectionInstance,
    committee: Committee,
    threshold: Optional[Fraction] = None,
) -> Tuple[bool, Optional[SwapWitness]]:
    """Strict mode (``threshold=None``) rejects any diff > 0; otherwise diff >= threshold.

    On failure the witness is the maximum-diff swap under the (in, out) tie order.
    """
    committee.require_size(instance)
    if threshold is not None and threshold <= 0:
        raise ValueError(f"Swap-freeness threshold must be positive, got {threshold}")

    best = ScoreTracker(instance, committee).best_swap()
    if best is None:
        return True, None
    qualifies = best.diff > 0 if threshold is None else best.diff >= threshold
    if qualifies:
        return False, best
    return True, None


def exact_pav(
    instance: ElectionInstance, budget: int = DEFAULT_ENUMERATION_BUDGET
) -> Tuple[Committee, Fraction]:
    """Brute-force maximum PAV committee; ties go to the lexicographically smallest."""
    total = math.comb(instance.m, instance.k)
    if total > budget:
        raise EnumerationBudgetExceeded(total, budget)

    start = time.monotonic()
    best_committee: Optional[Committee] = None
    best_score = Fraction(-1)
    for members in itertools.combinations(instance.candidates, instance.k):
        committee = Committee(members)
        score = pav_score(instance, committee)
        if score > best_score:
            best_committee, best_score = committee, score

    logging.debug(
        "exact_pav enumerated committees=%s duration=%.3fs", total, time.monotonic() - start
    )
    return best_committee, best_score
