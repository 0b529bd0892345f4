"""
Tests for circuit filtering on partially fixed arc sets.
"""

import functools
import itertools

import numpy as np
import pytest

from engine.circuit import circuit_filter
from formulations.ir import Circuit, Literal, MultipleCircuit, circuit_holds, multiple_circuit_holds

NODES = [0, 1, 2]
FOUR = (0, 1, 2, 3)


def single_arcs(**fixed):
    arcs = {(i, j): None for i in NODES for j in NODES}
    arcs.update(fixed)
    return arcs


def multiple_arcs():
    return {(i, j): None for i in NODES for j in NODES if not i == j == 0}


def selected(result):
    return sorted(a for a, v in result.arcs.items() if v is True)


def test_free_arcs_are_left_alone():
    arcs = single_arcs()
    result = circuit_filter(NODES, arcs)
    assert not result.conflict
    assert result.arcs == arcs
    assert result.removed(arcs) == []


def test_selected_arc_completes_the_circuit():
    arcs = single_arcs()
    arcs[(1, 2)] = True
    result = circuit_filter(NODES, arcs)
    assert not result.conflict
    assert (2, 1) in result.removed(arcs)
    assert selected(result) == [(0, 1), (1, 2), (2, 0)]


def test_two_node_subtour_is_a_conflict():
    arcs = single_arcs()
    arcs[(1, 2)] = True
    arcs[(2, 1)] = True
    assert circuit_filter(NODES, arcs).conflict


def test_selected_depot_loop_skips_every_node():
    arcs = single_arcs()
    arcs[(0, 0)] = True
    result = circuit_filter(NODES, arcs)
    assert not result.conflict
    assert selected(result) == [(0, 0), (1, 1), (2, 2)]


def test_unreachable_node_is_skipped():
    arcs = single_arcs()
    arcs[(0, 2)] = False
    arcs[(1, 2)] = False
    result = circuit_filter(NODES, arcs)
    assert not result.conflict
    assert result.arcs[(2, 2)] is True


def test_node_that_must_be_visited_but_cannot_be_reached():
    arcs = single_arcs()
    arcs[(0, 2)] = False
    arcs[(1, 2)] = False
    arcs[(2, 2)] = False
    assert circuit_filter(NODES, arcs).conflict


def test_departures_above_the_fleet_size_conflict():
    arcs = multiple_arcs()
    arcs[(0, 1)] = True
    arcs[(0, 2)] = True
    assert circuit_filter(NODES, arcs, multiple=True, max_departures=1).conflict


def test_departures_forced_up_to_the_minimum():
    arcs = multiple_arcs()
    result = circuit_filter(NODES, arcs, multiple=True, max_departures=2, min_departures=2)
    assert not result.conflict
    assert result.arcs[(0, 1)] is True
    assert result.arcs[(0, 2)] is True
    assert result.arcs[(1, 0)] is True
    assert result.arcs[(2, 0)] is True


def test_cycle_between_customers_is_a_conflict_in_multiple_mode():
    arcs = multiple_arcs()
    arcs[(1, 2)] = True
    arcs[(2, 1)] = True
    assert circuit_filter(NODES, arcs, multiple=True, max_departures=2).conflict


def test_two_trucks_may_share_the_depot():
    arcs = multiple_arcs()
    arcs[(0, 1)] = True
    arcs[(0, 2)] = True
    result = circuit_filter(NODES, arcs, multiple=True, max_departures=2)
    assert not result.conflict
    assert selected(result) == [(0, 1), (0, 2), (1, 0), (2, 0)]


# ----------------------------------------------------------------------
# chains that branch or merge
# ----------------------------------------------------------------------

def test_two_selected_arcs_into_one_node_conflict():
    arcs = {(i, j): None for i in FOUR for j in FOUR}
    arcs[(1, 2)] = True
    arcs[(3, 2)] = True
    assert circuit_filter(FOUR, arcs).conflict


def test_degree_forcing_that_merges_chains_terminates():
    arcs = {(i, j): None for i in FOUR for j in FOUR}
    arcs[(1, 2)] = True
    for arc in [(2, 0), (2, 2), (2, 3), (3, 0), (3, 2), (3, 3), (0, 1), (1, 1)]:
        arcs[arc] = False
    # node 2 can only leave towards 1 and node 3 can only leave towards 1
    assert circuit_filter(FOUR, arcs).conflict


def test_merging_chains_conflict_in_multiple_mode():
    arcs = {(i, j): None for i in FOUR for j in FOUR if not i == j == 0}
    arcs[(1, 3)] = True
    arcs[(2, 3)] = True
    assert circuit_filter(FOUR, arcs, multiple=True, max_departures=2).conflict


# ----------------------------------------------------------------------
# randomized agreement with exhaustive completion on four nodes
# ----------------------------------------------------------------------

def four_node_arcs(multiple):
    return [(i, j) for i in FOUR for j in FOUR if not (multiple and i == j == 0)]


@functools.lru_cache(maxsize=None)
def valid_completions(multiple, max_departures):
    """Every complete arc selection the circuit accepts."""
    arcs = four_node_arcs(multiple)
    literals = {arc: Literal(k) for k, arc in enumerate(arcs)}
    if multiple:
        constraint = MultipleCircuit(FOUR, literals, max_departures=max_departures)
        holds = multiple_circuit_holds
    else:
        constraint = Circuit(FOUR, literals)
        holds = circuit_holds
    valid = []
    for bits in itertools.product((0, 1), repeat=len(arcs)):
        if holds(constraint, dict(enumerate(bits))):
            valid.append(dict(zip(arcs, (b == 1 for b in bits))))
    return tuple(valid)


def random_states(rng, multiple, max_departures, count):
    arcs = four_node_arcs(multiple)
    valid = valid_completions(multiple, max_departures)
    for _ in range(count):
        roll = rng.random()
        if roll < 0.4:
            # subset of a valid completion
            completion = valid[rng.integers(len(valid))]
            yield {a: (completion[a] if rng.random() < 0.4 else None) for a in arcs}
        elif roll < 0.9:
            yield {a: [None, None, None, None, True, False][rng.integers(6)] for a in arcs}
        else:
            yield {a: bool(rng.integers(2)) for a in arcs}


@pytest.mark.parametrize("multiple,max_departures", [(False, None), (True, 1), (True, 2)])
def test_filter_agrees_with_exhaustive_completion(multiple, max_departures):
    rng = np.random.default_rng(2024)
    valid = valid_completions(multiple, max_departures)
    assert valid
    for state in random_states(rng, multiple, max_departures, 400):
        result = circuit_filter(FOUR, state, multiple=multiple, max_departures=max_departures)
        consistent = [c for c in valid if all(v is None or c[a] == v for a, v in state.items())]
        if result.conflict:
            assert not consistent, f"conflict reported on a completable state {state}"
            continue
        for arc, value in result.arcs.items():
            if value is not None:
                assert all(c[arc] == value for c in consistent), f"{arc} fixed wrongly in {state}"
        if all(v is not None for v in state.values()):
            assert consistent, f"invalid complete state accepted {state}"
