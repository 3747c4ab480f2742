from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from generators import GenParams, GenParamsError, generate

SEEDS = st.integers(0, 2**64 - 1)


@given(SEEDS)
def test_impartial_extremes(seed):
    empty = generate(GenParams(model="impartial", n=5, m=4, k=2, seed=seed, p=0.0))
    assert all(ballot == () for ballot in empty.ballots)
    full = generate(GenParams(model="impartial", n=5, m=4, k=2, seed=seed, p=1.0))
    assert all(ballot == (0, 1, 2, 3) for ballot in full.ballots)


@settings(max_examples=50)
@given(SEEDS, st.sampled_from(["impartial", "party"]))
def test_same_params_same_instance(seed, model):
    params = GenParams(model=model, n=12, m=8, k=3, seed=seed, p=0.3, party_sizes=(2, 3, 1))
    assert generate(params) == generate(params)


def test_different_seeds_usually_differ():
    instances = {
        generate(GenParams(model="impartial", n=10, m=8, k=3, seed=seed)).ballots for seed in range(5)
    }
    assert len(instances) > 1


@settings(max_examples=50)
@given(SEEDS)
def test_party_ballots_are_whole_blocks(seed):
    params = GenParams(
        model="party", n=20, m=7, k=3, seed=seed, party_sizes=(2, 3, 1), weights=(1.0, 2.0, 0.0)
    )
    instance = generate(params)
    assert set(instance.ballots) <= {(0, 1), (2, 3, 4)}


def test_party_blocks():
    params = GenParams(model="party", n=1, m=6, k=1, seed=0, party_sizes=(2, 3))
    assert params.party_blocks == ((0, 1), (2, 3, 4))


@pytest.mark.parametrize(
    "kwargs",
    [
        {"model": "mallows"},
        {"n": 0},
        {"k": 9},
        {"seed": -1},
        {"seed": 2**64},
        {"p": 1.5},
        {"model": "party", "party_sizes": ()},
        {"model": "party", "party_sizes": (5, 5)},
        {"model": "party", "party_sizes": (0, 2)},
        {"model": "party", "party_sizes": (2, 2), "weights": (1.0,)},
        {"model": "party", "party_sizes": (2, 2), "weights": (0.0, 0.0)},
    ],
)
def test_invalid_params(kwargs):
    base = {"model": "impartial", "n": 4, "m": 8, "k": 2, "seed": 1}
    base.update(kwargs)
    with pytest.raises(GenParamsError):
        GenParams(**base)
