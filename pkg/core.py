"""Domain types shared by every module: instances, committees, verdicts, results."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence, Tuple

# Every score, margin and threshold is a Fraction; floats never reach a comparison.
ExactRational = Fraction

ZERO = Fraction(0)


def rational_str(value: Fraction) -> str:
    """Render as ``numerator/denominator`` (``3/1``, never ``3`` or ``3.0``)."""
    return f"{value.numerator}/{value.denominator}"


class InstanceError(ValueError):
    """Base class for election instance validation failures."""


class VoterCountError(InstanceError):
    def __init__(self, n: int, ballots: Optional[int] = None):
        if ballots is None:
            message = f"Voter count must be positive, got n={n}."
        else:
            message = f"Expected {n} ballots, got {ballots}."
        super().__init__(message)
        self.n = n
        self.ballots = ballots


class CandidateCountError(InstanceError):
    def __init__(self, m: int):
        super().__init__(f"Candidate count must be positive, got m={m}.")
        self.m = m


class CommitteeSizeError(InstanceError):
    def __init__(self, k: int, m: int):
        if k < 1:
            message = f"Committee size must be at least 1, got k={k}."
        else:
            message = f"Committee size k={k} exceeds candidate count m={m}."
        super().__init__(message)
        self.k = k
        self.m = m


class CandidateIndexError(InstanceError):
    def __init__(self, voter: int, index: int, m: int):
        super().__init__(
            f"Voter {voter} approves candidate {index}, outside the range 0..{m - 1}."
        )
        self.voter = voter
        self.index = index
        self.m = m


class DuplicateApprovalError(InstanceError):
    def __init__(self, voter: int, index: int):
        super().__init__(f"Voter {voter} approves candidate {index} more than once.")
        self.voter = voter
        self.index = index


class UnsortedBallotError(InstanceError):
    def __init__(self, voter: int, ballot: Sequence[int]):
        super().__init__(f"Ballot of voter {voter} must be strictly ascending, got {list(ballot)}.")
        self.voter = voter
        self.ballot = tuple(ballot)


class MembershipError(ValueError):
    """A committee operation was asked about a candidate on the wrong side of W."""


class CommitteeSizeMismatchError(ValueError):
    def __init__(self, size: int, k: int):
        super().__init__(f"Committee has {size} members but the instance expects k={k}.")
        self.size = size
        self.k = k


@dataclass(frozen=True)
class ElectionInstance:
    """Validated profile; ballots hold strictly ascending candidate indices.

    ``build_instance`` accepts ballots in any order and sorts them.
    """

    n: int
    m: int
    k: int
    ballots: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        _check_sizes(self.n, self.m, self.k, len(self.ballots))
        for voter, ballot in enumerate(self.ballots):
            for index in ballot:
                if index < 0 or index >= self.m:
                    raise CandidateIndexError(voter, index, self.m)
            for a, b in zip(ballot, ballot[1:]):
                if a == b:
                    raise DuplicateApprovalError(voter, a)
                if a > b:
                    raise UnsortedBallotError(voter, ballot)

    @cached_property
    def ballot_sets(self) -> Tuple[frozenset, ...]:
        return tuple(frozenset(ballot) for ballot in self.ballots)

    @cached_property
    def approvers(self) -> Tuple[Tuple[int, ...], ...]:
        """Voters approving each candidate, ascending by voter index."""
        per_candidate = [[] for _ in range(self.m)]
        for voter, ballot in enumerate(self.ballots):
            for candidate in ballot:
                per_candidate[candidate].append(voter)
        return tuple(tuple(voters) for voters in per_candidate)

    @property
    def candidates(self) -> range:
        return range(self.m)


@dataclass(frozen=True)
class Committee:
    """Strictly ascending candidate indices; equality is set equality."""

    members: Tuple[int, ...]

    def __post_init__(self) -> None:
        if any(a >= b for a, b in zip(self.members, self.members[1:])):
            raise MembershipError(
                f"Committee members must be strictly ascending, got {list(self.members)}."
            )
        if self.members and self.members[0] < 0:
            raise MembershipError(f"Negative candidate index in {list(self.members)}.")

    @classmethod
    def of(cls, candidates: Iterable[int]) -> "Committee":
        items = list(candidates)
        unique = sorted(set(items))
        if len(unique) != len(items):
            raise MembershipError(f"Duplicate candidates in committee {items}.")
        return cls(tuple(unique))

    @cached_property
    def member_set(self) -> frozenset:
        return frozenset(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, candidate: object) -> bool:
        return candidate in self.member_set

    def without(self, candidate: int) -> "Committee":
        if candidate not in self:
            raise MembershipError(f"Candidate {candidate} is not a member of {list(self.members)}.")
        return Committee(tuple(c for c in self.members if c != candidate))

    def swap(self, out_candidate: int, in_candidate: int) -> "Committee":
        if out_candidate not in self:
            raise MembershipError(
                f"Swap-out candidate {out_candidate} is not a member of {list(self.members)}."
            )
        if in_candidate in self:
            raise MembershipError(
                f"Swap-in candidate {in_candidate} is already a member of {list(self.members)}."
            )
        return Committee.of([c for c in self.members if c != out_candidate] + [in_candidate])

    def check_against(self, instance: ElectionInstance) -> None:
        """Raise if any member is not a candidate of ``instance``."""
        if self.members and self.members[-1] >= instance.m:
            raise MembershipError(
                f"Committee member {self.members[-1]} is outside the range 0..{instance.m - 1}."
            )

    def require_size(self, instance: ElectionInstance) -> None:
        self.check_against(instance)
        if len(self) != instance.k:
            raise CommitteeSizeMismatchError(len(self), instance.k)


@dataclass(frozen=True)
class SwapWitness:
    """A swap removing ``out_candidate`` and adding ``in_candidate``."""

    out_candidate: int
    in_candidate: int
    diff: Fraction


@dataclass(frozen=True)
class SolveResult:
    rule: str
    committee: Committee
    final_score: Fraction
    initial: Optional[Committee] = None
    swaps: Tuple[SwapWitness, ...] = ()
    swap_count: int = 0

    def __post_init__(self) -> None:
        if self.swap_count != len(self.swaps):
            raise ValueError(
                f"swap_count={self.swap_count} does not match trace length {len(self.swaps)}"
            )


@dataclass(frozen=True)
class Witness:
    """A violating group: ``ell``, candidate set ``T`` and voter set ``X``."""

    ell: int
    candidates: Tuple[int, ...]
    voters: Tuple[int, ...]


@dataclass(frozen=True)
class AxiomVerdict:
    axiom: str
    satisfied: bool
    witness: Optional[Witness] = None

    def __post_init__(self) -> None:
        if self.satisfied and self.witness is not None:
            raise ValueError("A satisfied verdict cannot carry a witness")
        if not self.satisfied and self.witness is None:
            raise ValueError("A violated verdict requires a witness")


def _check_sizes(n: int, m: int, k: int, ballot_count: int) -> None:
    if n < 1:
        raise VoterCountError(n)
    if m < 1:
        raise CandidateCountError(m)
    if k < 1 or k > m:
        raise CommitteeSizeError(k, m)
    if ballot_count != n:
        raise VoterCountError(n, ballot_count)


def build_instance(n: int, m: int, k: int, ballots: Sequence[Sequence[int]]) -> ElectionInstance:
    _check_sizes(n, m, k, len(ballots))

    canonical = []
    for voter, ballot in enumerate(ballots):
        seen = set()
        for index in ballot:
            if index < 0 or index >= m:
                raise CandidateIndexError(voter, index, m)
            if index in seen:
                raise DuplicateApprovalError(voter, index)
            seen.add(index)
        canonical.append(tuple(sorted(seen)))

    return ElectionInstance(n=n, m=m, k=k, ballots=tuple(canonical))


def quota_met(group_size: int, ell: int, instance: ElectionInstance) -> bool:
    """True iff ``group_size >= ell * n / k``, compared in integers."""
    return group_size * instance.k >= ell * instance.n


def quota_size(ell: int, instance: ElectionInstance) -> int:
    """Smallest group size meeting the quota for ``ell``."""
    return -(-ell * instance.n // instance.k)
