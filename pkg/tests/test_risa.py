# !/usr/bin/env python
# -*- coding: utf-8 -*-

"""
@Time    : 2025-03-12
@Author  : Rey
@Contact : reyxbo@163.com
@Explain : Instruction set tests.
"""


from pytest import raises

from fluxtrap.rarch import HardwareSpec, QubitMapping, build_grid
from fluxtrap.rbase import InputError, ValidationError
from fluxtrap.risa import (
    OpTable,
    JTKind,
    Direction,
    Gate1Q,
    Gate2Q,
    Measure,
    IntraShift,
    IntraSwap,
    S3,
    JTSIMD,
    enumerate_jt_classes,
    get_jt_class,
    gate2q_form,
    instruction_latency,
    instruction_positions,
    instruction_qubits,
    validate,
    apply
)


def rules(instr, graph) -> list[str]:
    return [violation.rule for violation in validate(instr, graph)]


def test_jt_classes() -> None:
    classes = enumerate_jt_classes()
    assert len(classes) == 18
    assert [jt_class.name for jt_class in classes[:4]] == ['shift_N_E', 'shift_N_S', 'shift_N_W', 'shift_E_N']
    assert [jt_class.name for jt_class in classes[12:]] == [
        'swap_N_E', 'swap_N_S', 'swap_N_W', 'swap_E_S', 'swap_E_W', 'swap_S_W'
    ]
    assert sum(1 for jt_class in classes if jt_class.kind == JTKind.SHIFT) == 12
    assert str(get_jt_class('shift_W_S')) == 'shift_W_S'
    with raises(InputError):
        get_jt_class('swap_W_E')


def test_op_table() -> None:
    table = OpTable.from_dict({'gate2q': {'latency_us': 40}})
    assert table.gate2q == (40, 0.9982)
    assert table.inter_swap == (500, 0.99912)
    with raises(InputError):
        OpTable.from_dict({'teleport': {'latency_us': 1}})
    with raises(InputError):
        OpTable.from_dict({'gate1q': {'fidelity': 1.5}})


def test_gate_forms() -> None:
    graph = build_grid(HardwareSpec(1, 8, 2), QubitMapping({0: 2, 1: 3, 2: 5, 3: 6, 4: 7, 5: 8}))
    table = OpTable()
    assert gate2q_form(graph, 0, 1) == 'adjacent'
    assert gate2q_form(graph, 1, 2) is None
    assert gate2q_form(graph, 3, 2) == 'adjacent'
    assert gate2q_form(graph, 4, 5) is None
    assert instruction_latency(Gate2Q(0, 1, 'cx'), table, graph) == 141
    assert instruction_latency(Gate1Q(0, 'h'), table) == 5
    assert instruction_latency(Measure(0), table) == 120
    assert instruction_latency(S3(0, Direction.RIGHT, (1, 2, 3)), table) == 58
    assert instruction_latency(IntraSwap(0, 1), table) == 200
    assert instruction_latency(JTSIMD(get_jt_class('shift_N_E'), (0,)), table) == 250
    assert instruction_latency(JTSIMD(get_jt_class('swap_N_E'), (0,)), table) == 500


def test_colocated_form() -> None:
    graph = build_grid(HardwareSpec(1, 4, 4), QubitMapping({0: 1, 1: 2}))
    assert gate2q_form(graph, 0, 1) == 'colocated'
    assert instruction_latency(Gate2Q(1, 0, 'cz'), OpTable(), graph) == 25


def test_validate_gates() -> None:
    graph = build_grid(HardwareSpec(1, 8, 2), QubitMapping({0: 2, 1: 4, 2: 5}))
    assert rules(Gate1Q(0, 'h'), graph) == []
    assert rules(Gate1Q(1, 'h'), graph) == ['not in gate zone']
    assert rules(Measure(9), graph) == ['qubit not placed']
    assert rules(Gate2Q(0, 0, 'cx'), graph) == ['same qubit']
    assert rules(Gate2Q(0, 1, 'cx'), graph) == ['not co-located']
    assert rules(Gate2Q(1, 2, 'cx'), graph) == ['not co-located']


def test_validate_transport() -> None:
    graph = build_grid(HardwareSpec(1, 8, 2), QubitMapping({0: 2, 1: 3, 2: 7}))
    assert rules(IntraShift(0, 3, 4), graph) == []
    assert rules(IntraShift(0, 3, 5), graph) == ['not adjacent']
    assert rules(IntraShift(0, 2, 3), graph) == ['destination occupied']
    assert rules(IntraShift(0, 4, 5), graph) == ['source empty']
    assert rules(IntraShift(0, 7, 8), graph) == ['out of trap']
    assert rules(IntraSwap(0, 2), graph) == []
    assert rules(IntraSwap(0, 3), graph) == ['swap ion missing']
    assert rules(S3(0, Direction.RIGHT, (2, 3)), graph) == []
    assert rules(S3(0, Direction.LEFT, (2, 3)), graph) == []
    assert rules(S3(0, Direction.RIGHT, ()), graph) == ['empty group']
    assert rules(S3(0, Direction.RIGHT, (2, 4)), graph) == ['not contiguous']
    assert rules(S3(0, Direction.RIGHT, (7,)), graph) == ['out of trap']
    assert rules(S3(0, Direction.RIGHT, (1, 2)), graph) == ['destination occupied', 'source empty']
    assert rules(S3(9, Direction.RIGHT, (1,)), graph) == ['out of grid']


def test_validate_jt() -> None:
    graph = build_grid(HardwareSpec(1, 3, 1), QubitMapping({0: 8, 1: 2}))
    assert rules(JTSIMD(get_jt_class('shift_N_E'), (0,)), graph) == []
    assert rules(JTSIMD(get_jt_class('shift_N_W'), (0,)), graph) == ['destination occupied']
    assert rules(JTSIMD(get_jt_class('swap_N_W'), (0,)), graph) == []
    assert rules(JTSIMD(get_jt_class('swap_N_E'), (0,)), graph) == ['swap ion missing']
    assert rules(JTSIMD(get_jt_class('shift_E_S'), (0,)), graph) == ['wrong leg end']
    assert rules(JTSIMD(get_jt_class('shift_N_E'), ()), graph) == ['empty group']
    assert 'duplicate participant' in rules(JTSIMD(get_jt_class('shift_N_E'), (0, 0)), graph)
    assert rules(JTSIMD(get_jt_class('shift_N_E'), (4,)), graph) == ['out of grid']


def test_validate_shared_end() -> None:
    graph = build_grid(HardwareSpec(2, 1, 1), QubitMapping({0: 1, 1: 2}))
    instr = JTSIMD(get_jt_class('shift_W_E'), (0, 1))
    assert 'position conflict' in rules(instr, graph)


def test_apply() -> None:
    graph = build_grid(HardwareSpec(1, 8, 2), QubitMapping({0: 1, 1: 2, 2: 3}))
    after = apply(S3(0, Direction.RIGHT, (1, 2, 3)), graph)
    assert after.mapping.to_dict() == {0: 2, 1: 3, 2: 4}
    assert graph.mapping.to_dict() == {0: 1, 1: 2, 2: 3}
    after = apply(S3(0, Direction.LEFT, (1, 2, 3)), graph)
    assert after.mapping.to_dict() == {0: 0, 1: 1, 2: 2}
    after = apply(IntraSwap(0, 1), graph)
    assert after.mapping.to_dict() == {0: 2, 1: 1, 2: 3}
    with raises(ValidationError) as info:
        apply(IntraShift(0, 1, 2), graph)
    assert info.value.violations[0].rule == 'destination occupied'


def test_apply_jt() -> None:
    graph = build_grid(HardwareSpec(1, 3, 1), QubitMapping({0: 8, 1: 2}))
    after = apply(JTSIMD(get_jt_class('shift_N_E'), (0,)), graph)
    assert after.mapping.to_dict() == {0: 3, 1: 2}
    after = apply(JTSIMD(get_jt_class('swap_N_W'), (0,)), graph)
    assert after.mapping.to_dict() == {0: 2, 1: 8}


def test_touched() -> None:
    graph = build_grid(HardwareSpec(1, 8, 2), QubitMapping({0: 1, 1: 2, 5: 6}))
    instr = S3(0, Direction.RIGHT, (1, 2))
    assert instruction_positions(instr, graph) == (1, 2, 3)
    assert instruction_qubits(instr, graph) == (0, 1)
    assert instruction_positions(Gate2Q(5, 1, 'cx'), graph) == (2, 6)
    assert instruction_qubits(Gate2Q(5, 1, 'cx'), graph) == (5, 1)
