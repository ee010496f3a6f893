# !/usr/bin/env python
# -*- coding: utf-8 -*-

"""
@Time    : 2025-03-12
@Author  : Rey
@Contact : reyxbo@163.com
@Explain : Heuristic tests.
"""


from collections import deque
from random import Random
from pytest import raises, approx

from fluxtrap.rarch import HardwareSpec, QubitMapping, build_grid
from fluxtrap.rbase import InputError
from fluxtrap.rcircuit import Circuit, build_dag
from fluxtrap.rheuristic import (
    HeuristicConfig,
    ZoneAssignment,
    ScoreTerm,
    Scorer,
    select_window,
    assign_target_zone,
    cost,
    lookahead_score
)


def make_case(mapping: dict[int, int]):
    """
    Build one trap line case, zones at index 2 and 6.
    """

    graph = build_grid(HardwareSpec(1, 8, 2), QubitMapping(mapping))
    circuit = Circuit(3)
    circuit.add('cx', 0, 1)
    circuit.add('h', 2)
    circuit.add('h', 0)
    dag = build_dag(circuit)

    return graph, dag


def test_config() -> None:
    config = HeuristicConfig.from_dict({'alpha': 0.5})
    assert config.alpha == 0.5
    assert config.lookahead_gates == 20
    assert HeuristicConfig.from_dict(config.to_dict()) == config
    assert config != HeuristicConfig()
    with raises(InputError):
        HeuristicConfig.from_dict({'beta': 1})
    with raises(InputError):
        HeuristicConfig(alpha=-1)
    with raises(InputError):
        HeuristicConfig(congestion_patience=0)


def test_assignment_counters() -> None:
    assignment = ZoneAssignment()
    assignment.tick([0, 1])
    assignment.tick([1])
    assert assignment.ages == {0: 0, 1: 1}
    assignment.assign(1, 6)
    assignment.assign(2, 6)
    assert assignment.load == {6: 2}
    assignment.tick([1, 2])
    assert assignment.waits == {1: 1, 2: 1}
    assignment.assign(1, 2)
    assert assignment.load == {6: 1, 2: 1}
    assert assignment.waits[1] == 0
    assignment.release(2)
    assert assignment.load == {2: 1}
    assert 2 not in assignment.ages
    assignment.ages.update({0: 2, 1: 5, 3: 5})
    assert assignment.by_age([0, 1, 3]) == [1, 3, 0]


def test_cost() -> None:
    graph, dag = make_case({0: 0, 1: 4, 2: 5})
    config = HeuristicConfig()
    assignment = ZoneAssignment()
    assert cost(graph, dag, (), assignment, config) == approx(5.2 + 1.0)
    assert assignment.targets == {0: 2, 1: 6}
    assert cost(graph, dag, {0}, ZoneAssignment(), config) == approx(1.0)
    assert cost(graph, dag, (), ZoneAssignment(), config, started={0}) == approx(1.0)
    assert cost(graph, dag, (), ZoneAssignment(), HeuristicConfig(alpha=0)) == approx(4.0 + 1.0)


def test_empty_cost() -> None:
    graph = build_grid(HardwareSpec(1, 8, 2))
    dag = build_dag(Circuit(0))
    assert cost(graph, dag, (), ZoneAssignment(), HeuristicConfig()) == 0


def test_lookahead_score() -> None:
    graph, dag = make_case({0: 0, 1: 4, 2: 5})
    assignment = ZoneAssignment()
    score = lookahead_score(graph, dag, (), assignment, HeuristicConfig())
    assert assignment.targets == {0: 2, 1: 6, 2: 2}
    assert score == approx(5.2 + 1.0 + 0.5 * 2)


def test_zone_load() -> None:
    graph, dag = make_case({0: 3, 1: 4, 2: 4 + 8})
    assignment = ZoneAssignment()
    assignment.load[2] = 2
    assert assign_target_zone(0, dag, graph, assignment, HeuristicConfig()) == 6
    assert assign_target_zone(0, dag, graph, ZoneAssignment(), HeuristicConfig()) == 2
    assert assign_target_zone(0, dag, graph, ZoneAssignment(), HeuristicConfig(zone_load_beta=0)) == 2


def test_reassign() -> None:
    graph, dag = make_case({0: 0, 1: 4, 2: 5})
    config = HeuristicConfig(congestion_patience=1)
    assignment = ZoneAssignment()
    assert assign_target_zone(1, dag, graph, assignment, config) == 6
    graph.mapping.move(5, 3)
    assignment.tick([1])
    assert assign_target_zone(1, dag, graph, assignment, config) == 6
    assignment.tick([1])
    assert assign_target_zone(1, dag, graph, assignment, config) == 2
    assert assignment.load == {2: 1}
    assert assignment.waits[1] == 0


def test_window() -> None:
    graph, dag = make_case({0: 0, 1: 4, 2: 5})
    config = HeuristicConfig(congestion_patience=1)
    assignment = ZoneAssignment()
    assert select_window(dag, (), assignment, config) == [(0, 1.0), (1, 1.0), (2, 0.5)]
    assert select_window(dag, (), assignment, config, False) == [(0, 1.0), (1, 1.0)]
    assert select_window(dag, {0}, assignment, config) == [(1, 1.0), (2, 0.5)]
    assert select_window(dag, (), assignment, HeuristicConfig(lookahead_gates=2)) == [(0, 1.0), (1, 1.0)]
    assignment.ages.update({0: 2, 1: 1})
    assert select_window(dag, (), assignment, config) == [(0, 1.0)]


def test_scorer_gain() -> None:
    graph, _ = make_case({0: 0, 1: 4, 2: 5})
    scorer = Scorer(graph, [ScoreTerm(0, 1.0, (0, 1), 2, True)], 0.3)
    assert scorer.qubits == {0, 1}
    assert scorer.score() == approx(5.2)
    assert scorer.gain({0: 1}) == approx(1.3)
    assert scorer.gain({0: 1, 1: 3}) == approx(5.2 - 2.6)
    assert scorer.gain({2: 6}) == 0
    assert scorer.score({0: 2, 1: 3}) == approx(1.3)


def bfs_lengths(graph, source: int) -> dict[int, int]:
    """
    Breadth first search over trap neighbors and junction legs.
    """

    capacity = graph.spec.trap_capacity
    neighbors: dict[int, set[int]] = {pos: set() for pos in range(len(graph.positions))}
    for pos in neighbors:
        if pos % capacity != 0:
            neighbors[pos].add(pos - 1)
        if pos % capacity != capacity - 1:
            neighbors[pos].add(pos + 1)
    for junction in graph.junctions:
        ends = set(junction.leg_positions.values())
        for pos in ends:
            neighbors[pos] |= ends - {pos}
    lengths = {source: 0}
    queue = deque([source])
    while queue:
        pos = queue.popleft()
        for neighbor in neighbors[pos]:
            if neighbor not in lengths:
                lengths[neighbor] = lengths[pos] + 1
                queue.append(neighbor)

    return lengths


def test_cost_brute_force() -> None:
    rng = Random(11)
    for _ in range(50):
        dim = rng.choice((1, 2))
        capacity = rng.randint(3, 7)
        graph = build_grid(HardwareSpec(dim, capacity, rng.randint(1, capacity)))
        n = rng.randint(2, 8)
        slots = rng.sample(range(len(graph.positions)), n)
        graph = graph.copy(QubitMapping(dict(enumerate(slots))))
        circuit = Circuit(n)
        for _ in range(rng.randint(1, 10)):
            if rng.random() < 0.6:
                circuit.add('cx', *rng.sample(range(n), 2))
            else:
                circuit.add('h', rng.randrange(n))
        dag = build_dag(circuit)
        config = HeuristicConfig(alpha=rng.choice((0.0, 0.3, 1.0)))
        assignment = ZoneAssignment()
        value = cost(graph, dag, (), assignment, config)
        expected = 0.0
        for gate in dag.front():
            op = circuit.ops[gate]
            target = assignment.targets[gate]
            positions = [slots[qubit] for qubit in op.qubits]
            term = sum(bfs_lengths(graph, pos)[target] for pos in positions)
            if op.is_2q:
                term += config.alpha * bfs_lengths(graph, positions[0])[positions[1]]
            expected += term
        assert value == approx(expected)


def test_cost_wide_front() -> None:
    graph = build_grid(HardwareSpec(1, 8, 2))
    n = 25
    slots = Random(3).sample(range(len(graph.positions)), n)
    graph = graph.copy(QubitMapping(dict(enumerate(slots))))
    circuit = Circuit(n)
    for qubit in range(n):
        circuit.add('h', qubit)
    dag = build_dag(circuit)
    config = HeuristicConfig()
    assert len(select_window(dag, (), ZoneAssignment(), config)) == 20
    assert len(select_window(dag, (), ZoneAssignment(), config, False)) == n
    assignment = ZoneAssignment()
    value = cost(graph, dag, (), assignment, config)
    assert len(assignment.targets) == n
    expected = sum(
        bfs_lengths(graph, slots[gate])[assignment.targets[gate]]
        for gate in range(n)
    )
    assert value == approx(expected)
