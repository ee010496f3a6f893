# !/usr/bin/env python
# -*- coding: utf-8 -*-

"""
@Time    : 2025-03-12
@Author  : Rey
@Contact : reyxbo@163.com
@Explain : Aggregation tests.
"""


from random import Random
from pytest import approx

from fluxtrap.raggregation import AggregationStats, aggregate_s3, aggregate_jt, route_forced
from fluxtrap.rarch import HardwareSpec, QubitMapping, build_grid
from fluxtrap.rcircuit import Circuit, build_dag
from fluxtrap.rheuristic import EPSILON, ZoneAssignment, ScoreTerm, Scorer
from fluxtrap.risa import Direction, IntraShift, IntraSwap, S3, JTSIMD, get_jt_class


def make_contended():
    """
    Build contended vacancy case, three ions want right and two want left.
    """

    graph = build_grid(HardwareSpec(1, 8, 2), QubitMapping({0: 0, 1: 1, 2: 2, 3: 4, 4: 5}))
    terms = [
        ScoreTerm(gate, 1.0, (qubit,), target, False)
        for gate, (qubit, target) in enumerate(((0, 6), (1, 6), (2, 6), (3, 2), (4, 2)))
    ]
    scorer = Scorer(graph, terms, 0.3)

    return graph, scorer


def test_contended_vacancy() -> None:
    graph, scorer = make_contended()
    plan = aggregate_s3(graph, scorer, (), ())
    assert plan.instructions == [S3(0, Direction.RIGHT, (0, 1, 2))]
    assert plan.delta == approx(3)
    assert plan.weighted == approx(3)
    assert plan.stats == AggregationStats(2, 1)
    assert plan.mapping.to_dict() == {0: 1, 1: 2, 2: 3, 3: 4, 4: 5}
    assert graph.mapping.to_dict() == {0: 0, 1: 1, 2: 2, 3: 4, 4: 5}
    assert plan.candidates[0].to_dict() == {
        'kind': 's3',
        'trap': 0,
        'direction': 'right',
        'indices': [0, 1, 2],
        'delta': 3.0
    }


def test_engaged_excluded() -> None:
    graph, scorer = make_contended()
    plan = aggregate_s3(graph, scorer, {2}, ())
    assert plan.instructions == [S3(0, Direction.LEFT, (4, 5))]
    assert plan.delta == approx(2)
    assert plan.stats == AggregationStats(0, 0)


def test_reserved_excluded() -> None:
    graph, scorer = make_contended()
    plan = aggregate_s3(graph, scorer, (), {3})
    assert plan.instructions == []
    assert plan.delta == 0
    assert plan.mapping == graph.mapping


def test_single_chain() -> None:
    graph = build_grid(HardwareSpec(1, 8, 2), QubitMapping({0: 4}))
    scorer = Scorer(graph, [ScoreTerm(0, 1.0, (0,), 2, False)], 0.3)
    plan = aggregate_s3(graph, scorer, (), ())
    assert plan.instructions == [S3(0, Direction.LEFT, (4,))]
    assert plan.mapping.to_dict() == {0: 3}


def test_full_trap_swap() -> None:
    graph = build_grid(HardwareSpec(1, 4, 2, (0, 3)), QubitMapping({2: 0, 0: 1, 1: 2, 3: 3}))
    terms = [ScoreTerm(0, 1.0, (0,), 3, False), ScoreTerm(1, 1.0, (1,), 0, False)]
    scorer = Scorer(graph, terms, 0.3)
    plan = aggregate_s3(graph, scorer, (), ())
    assert plan.instructions == [IntraSwap(0, 1)]
    assert plan.delta == approx(2)
    assert plan.mapping.to_dict() == {0: 2, 1: 1, 2: 0, 3: 3}
    assert plan.weighted == approx(2 * 58 / 200)
    plan = aggregate_s3(graph, scorer, {1}, ())
    assert plan.instructions == []


def test_jt_candidates() -> None:
    graph = build_grid(HardwareSpec(1, 3, 1), QubitMapping({0: 8, 1: 4}))
    scorer = Scorer(graph, [ScoreTerm(0, 1.0, (0, 1), 4, True)], 0.3)
    plan = aggregate_jt(graph, scorer, (), ())
    assert len(plan.candidates) == 18
    assert plan.best.jt_class.name == 'shift_N_E'
    assert plan.best.instruction == JTSIMD(get_jt_class('shift_N_E'), (0,))
    assert plan.best.delta == approx(1.3)
    assert plan.best.cost_after == approx(1.3)
    assert sum(1 for candidate in plan.candidates if candidate.junctions) == 1
    assert plan.mapping.to_dict() == {0: 3, 1: 4}
    assert plan.best.to_dict()['junctions'] == [0]
    assert aggregate_jt(graph, scorer, {0}, ()).best is None
    assert aggregate_jt(graph, scorer, (), {3}).best is None


def test_jt_without_2q() -> None:
    graph = build_grid(HardwareSpec(1, 3, 1), QubitMapping({0: 8}))
    scorer = Scorer(graph, [ScoreTerm(0, 1.0, (0,), 4, False)], 0.3)
    plan = aggregate_jt(graph, scorer, (), ())
    assert plan.best is None
    assert plan.mapping == graph.mapping


def test_route_forced_1q() -> None:
    graph = build_grid(HardwareSpec(1, 8, 2), QubitMapping({0: 4, 1: 3}))
    circuit = Circuit(2)
    circuit.add('h', 0)
    circuit.add('h', 1)
    dag = build_dag(circuit)
    plan = route_forced(0, dag, graph, ZoneAssignment())
    assert plan == [IntraSwap(0, 3), IntraShift(0, 3, 2)]
    assert graph.mapping.to_dict() == {0: 4, 1: 3}
    graph = build_grid(HardwareSpec(1, 8, 2), QubitMapping({0: 2, 1: 3}))
    assert route_forced(0, dag, graph, ZoneAssignment()) == []


def test_route_forced_2q() -> None:
    graph = build_grid(HardwareSpec(1, 8, 2), QubitMapping({0: 0, 1: 5}))
    circuit = Circuit(2)
    circuit.add('cx', 0, 1)
    dag = build_dag(circuit)
    plan = route_forced(0, dag, graph, ZoneAssignment())
    assert plan == [
        IntraShift(0, 5, 4),
        IntraShift(0, 4, 3),
        IntraShift(0, 3, 2),
        IntraShift(0, 2, 1),
        IntraShift(0, 1, 2),
        IntraShift(0, 0, 1)
    ]


def test_route_forced_junction() -> None:
    graph = build_grid(HardwareSpec(1, 3, 1), QubitMapping({0: 1, 1: 4}))
    circuit = Circuit(2)
    circuit.add('cz', 0, 1)
    dag = build_dag(circuit)
    plan = route_forced(0, dag, graph, ZoneAssignment())
    assert plan == [IntraShift(1, 1, 0), JTSIMD(get_jt_class('shift_E_W'), (0,))]


def test_route_forced_blocked_ends() -> None:
    graph = build_grid(HardwareSpec(1, 4, 2), QubitMapping({0: 11, 1: 12}))
    circuit = Circuit(2)
    circuit.add('cx', 0, 1)
    circuit.add('cx', 1, 0)
    dag = build_dag(circuit)
    plan = route_forced(0, dag, graph, ZoneAssignment())
    assert plan == [IntraShift(2, 3, 2), JTSIMD(get_jt_class('shift_S_N'), (0,))]
    plan = route_forced(1, dag, graph, ZoneAssignment())
    assert plan == [IntraShift(3, 0, 1), JTSIMD(get_jt_class('shift_N_S'), (0,))]


def test_branch_bound() -> None:
    rng = Random(7)
    total_branches = 0
    total_contended = 0
    for _ in range(200):
        capacity = rng.randint(3, 10)
        graph = build_grid(HardwareSpec(1, capacity, rng.randint(1, 3)))
        slots = rng.sample(range(capacity), rng.randint(1, capacity - 1))
        mapping = QubitMapping({qubit: pos for qubit, pos in enumerate(slots)})
        graph = graph.copy(mapping)
        terms = [
            ScoreTerm(qubit, 1.0, (qubit,), rng.choice(graph.gate_zones[:3]), False)
            for qubit in range(len(slots))
        ]
        scorer = Scorer(graph, terms, 0.3)
        plan = aggregate_s3(graph, scorer, (), ())

        # Recount from occupancy, a branch starts where the side ion gains by entering the vacancy.
        contended = 0
        branches = 0
        for vacant in range(capacity):
            if vacant in slots or vacant in (0, capacity - 1):
                continue
            sides = [graph.occupant(vacant - 1), graph.occupant(vacant + 1)]
            if None in sides:
                continue
            contended += 1
            branches += sum(1 for qubit in sides if scorer.gain({qubit: vacant}) > EPSILON)
        assert plan.stats == AggregationStats(branches, contended)
        assert plan.stats.branches <= 2 * plan.stats.contended
        total_branches += branches
        total_contended += contended

        assert plan.delta >= 0
        positions = [pos for candidate in plan.candidates for pos in candidate.positions]
        assert len(positions) == len(set(positions))
    assert 0 < total_branches < 2 * total_contended
