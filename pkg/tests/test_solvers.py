from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from axioms import check_ejr, check_jr
from core import Committee, CommitteeSizeMismatchError, build_instance
from pav import harmonic, is_swap_free, pav_score
from profile_io import read_profile
from solvers import (
    InitPolicy,
    InitPolicyError,
    UnknownRuleError,
    certified_ln_ceiling,
    greedy_av,
    initial_committee,
    max_swap_bound,
    max_swap_pav,
    max_swap_threshold,
    minimum_improvement,
    remaining_swap_bound,
    seq_pav,
    solve,
    swap_pav,
    swap_pav_bound,
)
from strategies import instances


def _trace(result):
    return [(s.out_candidate, s.in_candidate, s.diff) for s in result.swaps]


def test_max_swap_pav_lexicographic_start_is_stable(e1):
    result = max_swap_pav(e1)
    assert result.committee == Committee((0, 1))
    assert result.swap_count == 0
    assert result.final_score == 3


def test_max_swap_pav_single_swap(e1):
    result = max_swap_pav(e1, InitPolicy.explicit(Committee((2, 3))))
    assert result.committee == Committee((0, 3))
    assert result.initial == Committee((2, 3))
    assert _trace(result) == [(2, 0, Fraction(1))]
    assert result.final_score == 3


def test_max_swap_pav_two_swaps(e2):
    result = max_swap_pav(e2, InitPolicy.explicit(Committee((2, 3))))
    assert result.committee == Committee((0, 1))
    assert [s.diff for s in result.swaps] == [Fraction(2), Fraction(1)]
    assert result.final_score == 3


def test_swap_pav_examples(e1):
    result = swap_pav(e1, InitPolicy.explicit(Committee((2, 3))))
    assert result.committee == Committee((0, 3))
    assert _trace(result) == [(2, 0, Fraction(1))]
    assert swap_pav(e1, InitPolicy.explicit(Committee((0, 1)))).swap_count == 0
    full = build_instance(2, 3, 3, [[0], [2]])
    result = swap_pav(full)
    assert result.committee == Committee((0, 1, 2)) and result.swap_count == 0


def test_greedy_and_seq_pav_examples(e1):
    assert greedy_av(e1) == Committee((0, 2))
    assert seq_pav(e1) == Committee((0, 1))
    single = build_instance(1, 2, 1, [[1]])
    assert greedy_av(single) == Committee((1,))
    assert seq_pav(single) == Committee((1,))
    empty = build_instance(3, 4, 2, [[], [], []])
    assert greedy_av(empty) == Committee((0, 1))
    assert seq_pav(empty) == Committee((0, 1))
    assert max_swap_pav(empty).committee == Committee((0, 1))


def test_seq_pav_can_fail_jr(fixtures_dir):
    instance = read_profile(fixtures_dir / "seqpav_jr_counterexample.prof")
    committee = seq_pav(instance)
    assert committee == Committee(tuple(range(13)))
    verdict = check_jr(instance, committee)
    assert not verdict.satisfied
    assert verdict.witness.candidates == (13,)
    assert verdict.witness.voters == tuple(range(396, 429))


def test_init_policies(e1):
    assert initial_committee(e1, InitPolicy.lexicographic()) == Committee((0, 1))
    first = initial_committee(e1, InitPolicy.seeded(7))
    assert first == initial_committee(e1, InitPolicy.seeded(7))
    assert len(first) == e1.k
    assert initial_committee(e1, InitPolicy.from_rule("greedyav")) == Committee((0, 2))
    with pytest.raises(CommitteeSizeMismatchError):
        initial_committee(e1, InitPolicy.explicit(Committee((0,))))


@pytest.mark.parametrize(
    "kwargs",
    [
        {"kind": "random"},
        {"kind": "random", "seed": -1},
        {"kind": "random", "seed": 2**64},
        {"kind": "explicit"},
        {"kind": "rule", "rule": "pav"},
        {"kind": "annealing"},
    ],
)
def test_init_policy_validation(kwargs):
    with pytest.raises(InitPolicyError):
        InitPolicy(**kwargs)


def test_solve_dispatch(e1):
    assert solve("pav", e1).committee == Committee((0, 1))
    assert solve("greedyav", e1).final_score == pav_score(e1, Committee((0, 2)))
    with pytest.raises(UnknownRuleError):
        solve("phragmen", e1)


def test_bound_helpers():
    assert max_swap_threshold(2) == Fraction(1, 16)
    assert certified_ln_ceiling(1) == 0
    assert certified_ln_ceiling(2) == 1
    assert certified_ln_ceiling(3) == 2
    assert certified_ln_ceiling(7) == 2
    assert certified_ln_ceiling(8) == 3
    assert max_swap_bound(4, 2) == 2 * 4 * 2 * 8
    assert minimum_improvement(4) == Fraction(1, 12)


@pytest.mark.parametrize("k", [1, 2, 3, 5, 10, 50])
def test_certified_ln_ceiling_is_an_upper_bound(k):
    t = certified_ln_ceiling(k)
    assert t >= math.log(k)
    assert t == 0 or t - 1 < math.log(k) + 1


@settings(max_examples=150, deadline=None)
@given(instances(max_n=10, max_m=7, max_k=4), st.integers(0, 2**64 - 1))
def test_max_swap_pav_trace_properties(instance, seed):
    result = max_swap_pav(instance, InitPolicy.seeded(seed), debug=True)
    threshold = max_swap_threshold(instance.k)
    ceiling = instance.n * harmonic(instance.k)

    score = pav_score(instance, result.initial)
    assert result.swap_count <= remaining_swap_bound(instance, score)
    for swap in result.swaps:
        assert swap.diff >= threshold
        score += swap.diff
        assert score <= ceiling
    assert score == result.final_score == pav_score(instance, result.committee)
    assert result.swap_count <= max_swap_bound(instance.n, instance.k)
    assert check_ejr(instance, result.committee).satisfied


@settings(max_examples=150, deadline=None)
@given(instances(max_n=10, max_m=7, max_k=4), st.integers(0, 2**64 - 1))
def test_swap_pav_reaches_strict_swap_freeness(instance, seed):
    result = swap_pav(instance, InitPolicy.seeded(seed))
    assert all(swap.diff > 0 for swap in result.swaps)
    assert result.swap_count <= swap_pav_bound(instance)
    assert is_swap_free(instance, result.committee) == (True, None)
    assert check_ejr(instance, result.committee).satisfied


@settings(max_examples=100, deadline=None)
@given(instances(max_n=10, max_m=7, max_k=4), st.sampled_from(["greedyav", "seqpav"]))
def test_post_processing_never_loses_score(instance, rule):
    start = greedy_av(instance) if rule == "greedyav" else seq_pav(instance)
    result = max_swap_pav(instance, InitPolicy.from_rule(rule))
    assert result.initial == start
    assert result.final_score >= pav_score(instance, start)
    assert check_ejr(instance, result.committee).satisfied


@settings(max_examples=150, deadline=None)
@given(instances(max_n=10, max_m=7, max_k=4))
def test_greedy_av_satisfies_jr(instance):
    assert check_jr(instance, greedy_av(instance)).satisfied


@settings(max_examples=50, deadline=None)
@given(instances(), st.integers(0, 2**64 - 1))
def test_solvers_are_deterministic(instance, seed):
    policy = InitPolicy.seeded(seed)
    assert max_swap_pav(instance, policy) == max_swap_pav(instance, policy)
    assert swap_pav(instance, policy) == swap_pav(instance, policy)
