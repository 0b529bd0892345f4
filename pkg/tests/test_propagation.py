"""
Tests for trailed domains and constraint propagation.
"""

import pytest

from engine.propagators import LinearRow, propagate
from engine.state import DomainStore, Inconsistency
from formulations.ir import Literal
from formulations.registry import build_model
from tests.factories import make_tiny_min_cost


def test_trail_restores_domains():
    store = DomainStore([0, 0], [1, 10])
    mark = store.mark()
    store.set_lo(1, 3)
    store.fix(0, 1)
    assert store.is_true(Literal(0))
    assert store.truth(Literal(0, negated=True)) is False
    store.undo(mark)
    assert (store.lo, store.hi) == ([0, 0], [1, 10])
    assert store.truth(Literal(0)) is None


def test_empty_domain_raises():
    store = DomainStore([0], [5])
    store.set_hi(0, 2)
    with pytest.raises(Inconsistency):
        store.set_lo(0, 3)


def test_linear_row_tightens_bounds():
    # x0 + 2 x1 <= 4 with x0 in [1, 10], x1 in [0, 10]
    store = DomainStore([1, 0], [10, 10])
    LinearRow([1, 2], [0, 1], 4).propagate(store)
    assert store.hi == [4, 1]


def test_drone_choice_forces_the_truck_loop(tiny_min_time):
    model = build_model("mt-3idx", tiny_min_time)
    result = propagate(model, {model.var(("x", 0, 1)): 1})
    assert not result.conflict
    assert result.literal_truth(model.lit(("z", 0, 1, 1))) is True
    # customer 2 has no drone option: the truck must visit it
    assert result.literal_truth(model.lit(("z", 0, 2, 2))) is False


def test_makespan_below_every_option_is_a_conflict(tiny_min_time):
    model = build_model("mt-3idx", tiny_min_time)
    assert propagate(model, {model.var(("alpha",)): 1}).conflict


def test_unconstrained_root_keeps_the_makespan_free(tiny_min_time):
    model = build_model("mt-2idx", tiny_min_time)
    result = propagate(model)
    assert not result.conflict
    lo, hi = result.domain(model.var(("alpha",)))
    assert lo <= 6 <= hi


def test_drone_time_limit_removes_the_drone_option():
    instance = make_tiny_min_cost(drone_time_limit=4)
    model = build_model("mc-3idx", instance)
    result = propagate(model)
    assert not result.conflict
    assert result.literal_truth(model.lit(("x", 0, 1))) is False
    assert result.literal_truth(model.lit(("z", 0, 1, 1))) is False


def test_capacity_and_drone_limit_together_are_infeasible():
    instance = make_tiny_min_cost(truck_capacity=5, drone_time_limit=4)
    assert propagate(build_model("mc-3idx", instance)).conflict
