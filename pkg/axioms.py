"""Exact JR / PJR / EJR verifiers with violation witnesses.

Witnesses are the first violation in the enumeration order: ascending ell,
then lexicographic candidate set T, then lexicographic voter set X.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple

from core import (
    AxiomVerdict,
    Committee,
    ElectionInstance,
    Witness,
    quota_met,
    quota_size,
)
from pav import representation_counts

AXIOMS = ("jr", "pjr", "ejr")
DEFAULT_MAX_CANDIDATE_SETS = 1_000_000
DEFAULT_MAX_VOTER_SUBSETS = 1_000_000
ORACLE_MAX_VOTERS = 16


class CheckBudgetExceeded(RuntimeError):
    def __init__(self, axiom: str, what: str, budget: int):
        super().__init__(f"{axiom.upper()} check refused: more than {budget} {what} to examine.")
        self.axiom = axiom
        self.what = what
        self.budget = budget


class ImplicationChainError(AssertionError):
    """Verdicts contradict EJR => PJR => JR; one of the checkers is wrong."""


@dataclass(frozen=True)
class CheckBudget:
    max_candidate_sets: int = DEFAULT_MAX_CANDIDATE_SETS
    max_voter_subsets: int = DEFAULT_MAX_VOTER_SUBSETS

    def __post_init__(self) -> None:
        if self.max_candidate_sets < 1 or self.max_voter_subsets < 1:
            raise ValueError(
                f"Check budgets must be positive, got candidate_sets={self.max_candidate_sets} "
                f"voter_subsets={self.max_voter_subsets}"
            )


@dataclass(frozen=True)
class AuditReport:
    jr: AxiomVerdict
    pjr: AxiomVerdict
    ejr: AxiomVerdict

    @property
    def verdicts(self) -> Tuple[AxiomVerdict, AxiomVerdict, AxiomVerdict]:
        return self.jr, self.pjr, self.ejr


class _Counter:
    def __init__(self, axiom: str, what: str, budget: int):
        self.axiom = axiom
        self.what = what
        self.budget = budget
        self.used = 0

    def tick(self) -> None:
        self.used += 1
        if self.used > self.budget:
            raise CheckBudgetExceeded(self.axiom, self.what, self.budget)


def _violated(axiom: str, ell: int, candidates: Sequence[int], voters: Sequence[int]) -> AxiomVerdict:
    return AxiomVerdict(
        axiom=axiom,
        satisfied=False,
        witness=Witness(ell=ell, candidates=tuple(candidates), voters=tuple(sorted(voters))),
    )


def check_jr(instance: ElectionInstance, committee: Committee) -> AxiomVerdict:
    committee.require_size(instance)
    counts = representation_counts(instance, committee)
    for candidate in instance.candidates:
        unrepresented = [v for v in instance.approvers[candidate] if counts[v] == 0]
        if quota_met(len(unrepresented), 1, instance):
            return _violated("jr", 1, (candidate,), unrepresented)
    return AxiomVerdict(axiom="jr", satisfied=True)


def check_ejr(
    instance: ElectionInstance, committee: Committee, budget: Optional[CheckBudget] = None
) -> AxiomVerdict:
    committee.require_size(instance)
    budget = budget or CheckBudget()
    counter = _Counter("ejr", "candidate sets", budget.max_candidate_sets)
    counts = representation_counts(instance, committee)

    for ell in range(1, instance.k + 1):
        q = quota_size(ell, instance)
        deficient: Dict[int, FrozenSet[int]] = {}
        for candidate in instance.candidates:
            voters = frozenset(v for v in instance.approvers[candidate] if counts[v] < ell)
            # A candidate with fewer than q deficient approvers cannot sit in a violating T.
            if len(voters) >= q:
                deficient[candidate] = voters
        if len(deficient) < ell:
            continue

        for candidate_set in itertools.combinations(sorted(deficient), ell):
            counter.tick()
            group = frozenset.intersection(*(deficient[c] for c in candidate_set))
            if len(group) >= q:
                return _violated("ejr", ell, candidate_set, group)

    logging.debug("EJR satisfied candidate_sets=%s", counter.used)
    return AxiomVerdict(axiom="ejr", satisfied=True)


def check_pjr(
    instance: ElectionInstance, committee: Committee, budget: Optional[CheckBudget] = None
) -> AxiomVerdict:
    """PJR via projections onto W.

    A size-q group X fails ell-PJR iff every A_i ∩ W (i in X) fits inside one
    U ⊆ W with |U| = ell - 1. For a fixed U the lexicographically smallest such
    X is the first q eligible voters, so the minimum over all U is the smallest
    violating X for this T.
    """
    committee.require_size(instance)
    budget = budget or CheckBudget()
    sets_counter = _Counter("pjr", "candidate sets", budget.max_candidate_sets)
    subsets_counter = _Counter("pjr", "voter subsets", budget.max_voter_subsets)
    members = committee.member_set
    projections = [ballot & members for ballot in instance.ballot_sets]
    approver_sets = [frozenset(voters) for voters in instance.approvers]

    for ell in range(1, instance.k + 1):
        q = quota_size(ell, instance)
        eligible = [c for c in instance.candidates if len(approver_sets[c]) >= q]
        if len(eligible) < ell:
            continue

        for candidate_set in itertools.combinations(eligible, ell):
            sets_counter.tick()
            cohesive = frozenset.intersection(*(approver_sets[c] for c in candidate_set))
            if len(cohesive) < q:
                continue
            # Voters already holding ell representatives can never be in a violating X.
            pool = sorted(v for v in cohesive if len(projections[v]) < ell)
            if len(pool) < q:
                continue

            best: Optional[Tuple[int, ...]] = None
            for covering in itertools.combinations(committee.members, ell - 1):
                subsets_counter.tick()
                allowed = frozenset(covering)
                eligible_voters = [v for v in pool if projections[v] <= allowed]
                if len(eligible_voters) >= q:
                    group = tuple(eligible_voters[:q])
                    if best is None or group < best:
                        best = group
            if best is not None:
                return _violated("pjr", ell, candidate_set, best)

    logging.debug(
        "PJR satisfied candidate_sets=%s voter_subsets=%s", sets_counter.used, subsets_counter.used
    )
    return AxiomVerdict(axiom="pjr", satisfied=True)


def _check_jr_with_budget(
    instance: ElectionInstance, committee: Committee, budget: Optional[CheckBudget] = None
) -> AxiomVerdict:
    return check_jr(instance, committee)


CHECKERS: Dict[str, Callable[..., AxiomVerdict]] = {
    "jr": _check_jr_with_budget,
    "pjr": check_pjr,
    "ejr": check_ejr,
}


def check_axiom(
    axiom: str, instance: ElectionInstance, committee: Committee, budget: Optional[CheckBudget] = None
) -> AxiomVerdict:
    if axiom not in CHECKERS:
        raise ValueError(f"Unknown axiom {axiom!r}; expected one of {AXIOMS}.")
    return CHECKERS[axiom](instance, committee, budget)


def implication_audit(
    instance: ElectionInstance, committee: Committee, budget: Optional[CheckBudget] = None
) -> AuditReport:
    report = AuditReport(
        jr=check_jr(instance, committee),
        pjr=check_pjr(instance, committee, budget),
        ejr=check_ejr(instance, committee, budget),
    )
    if report.ejr.satisfied and not report.pjr.satisfied:
        raise ImplicationChainError(f"EJR holds but PJR fails for {list(committee.members)}")
    if report.pjr.satisfied and not report.jr.satisfied:
        raise ImplicationChainError(f"PJR holds but JR fails for {list(committee.members)}")
    return report


def _group_violates(
    axiom: str,
    instance: ElectionInstance,
    members: FrozenSet[int],
    ell: int,
    voters: Sequence[int],
) -> bool:
    """The representation clause of ``axiom`` fails for group ``voters`` at ``ell``."""
    ballots = instance.ballot_sets
    if axiom == "ejr":
        return all(len(ballots[v] & members) < ell for v in voters)
    covered = frozenset().union(*(ballots[v] & members for v in voters))
    return len(covered) < ell


def validate_witness(instance: ElectionInstance, committee: Committee, verdict: AxiomVerdict) -> bool:
    """Re-check a violation witness directly against the definition it claims to break."""
    if verdict.satisfied or verdict.witness is None:
        return False
    witness = verdict.witness
    ell, candidates, voters = witness.ell, witness.candidates, witness.voters
    if verdict.axiom == "jr" and ell != 1:
        return False
    if not voters or len(set(voters)) != len(voters) or len(set(candidates)) != ell:
        return False
    if any(v < 0 or v >= instance.n for v in voters):
        return False
    if not quota_met(len(voters), ell, instance):
        return False
    common = frozenset.intersection(*(instance.ballot_sets[v] for v in voters))
    if not set(candidates) <= common or len(common) < ell:
        return False
    return _group_violates(verdict.axiom, instance, committee.member_set, ell, voters)


def check_by_voter_subsets(
    axiom: str, instance: ElectionInstance, committee: Committee
) -> AxiomVerdict:
    """Literal definition: try every voter group X and every ell. Desk scale only."""
    committee.require_size(instance)
    if instance.n > ORACLE_MAX_VOTERS:
        raise CheckBudgetExceeded(axiom, "voters for the subset oracle", ORACLE_MAX_VOTERS)
    members = committee.member_set
    ballots = instance.ballot_sets
    max_ell = 1 if axiom == "jr" else instance.k

    for ell in range(1, max_ell + 1):
        for size in range(quota_size(ell, instance), instance.n + 1):
            for voters in itertools.combinations(range(instance.n), size):
                common = frozenset.intersection(*(ballots[v] for v in voters))
                if len(common) < ell:
                    continue
                if _group_violates(axiom, instance, members, ell, voters):
                    candidates: List[int] = sorted(common)[:ell]
                    return _violated(axiom, ell, candidates, voters)
    return AxiomVerdict(axiom=axiom, satisfied=True)
