# !/usr/bin/env python
# -*- coding: utf-8 -*-

"""
@Time    : 2025-03-12
@Author  : Rey
@Contact : reyxbo@163.com
@Explain : Circuit tests.
"""


from math import pi as math_pi
from pytest import raises, approx, mark

from fluxtrap.rbase import InputError, CircuitParseError
from fluxtrap.rcircuit import (
    Operation,
    Circuit,
    build_dag,
    parse_circuit,
    circuit_to_json,
    circuit_to_qasm,
    gen_qaoa,
    gen_bv,
    gen_rca,
    gen_vqe,
    gen_benchmark
)


def test_circuit_check() -> None:
    circuit = Circuit(3)
    circuit.add('h', 0)
    circuit.add('rzz', 0, 2, param=0.5)
    circuit.add('measure', 1)
    assert circuit.count() == 3
    assert circuit.count('1q') == 1
    assert circuit.count('2q') == 1
    assert circuit.count('measure') == 1
    with raises(InputError):
        circuit.add('ccx', 0, 1)
    with raises(InputError):
        circuit.add('cx', 0, 0)
    with raises(InputError):
        circuit.add('h', 3)
    with raises(InputError):
        circuit.add('rz', 0)
    with raises(InputError):
        circuit.add('h', 0, param=1.0)
    assert len(circuit) == 3


def test_dag() -> None:
    circuit = Circuit(3)
    circuit.add('h', 0)
    circuit.add('cx', 0, 1)
    circuit.add('h', 2)
    circuit.add('cx', 1, 2)
    circuit.add('measure', 0)
    dag = build_dag(circuit)
    assert dag.front() == [0, 2]
    assert dag.next_level() == [1]
    with raises(ValueError):
        dag.complete_gate(1)
    assert dag.complete_gate(0) == [1]
    assert dag.front() == [1, 2]
    assert dag.next_level() == [3, 4]
    assert dag.predecessors(3) == [1, 2]
    assert dag.complete_gate(2) == []
    assert dag.complete_gate(1) == [3, 4]
    assert not dag.done
    dag.complete_gate(4)
    dag.complete_gate(3)
    assert dag.done
    assert dag.front() == []


def test_empty_dag() -> None:
    dag = build_dag(Circuit(2))
    assert dag.done
    assert dag.front() == []
    assert dag.next_level() == []


def test_parse_qasm() -> None:
    text = '''OPENQASM 2.0;
include "qelib1.inc";
qreg a[2];
qreg b[1]; creg c[3];
h a; // broadcast
rz(-pi/4 + 2**-1) b[0];
cx a[1], b[0];
measure a -> c;
'''
    circuit = parse_circuit(text, 'qasm')
    assert circuit.n_qubits == 3
    assert circuit.ops == [
        Operation('h', (0,)),
        Operation('h', (1,)),
        Operation('rz', (2,), -math_pi / 4 + 0.5),
        Operation('cx', (1, 2)),
        Operation('measure', (0,)),
        Operation('measure', (1,))
    ]


@mark.parametrize(
    'body',
    (
        'foo q[0];',
        'h q[0]',
        'cx q[0], q[5];',
        'cx q[0], q[0];',
        'rz(pi/0) q[0];',
        'rz(__import__("os")) q[0];',
        'rz q[0];',
        'h(0.5) q[0];',
        'h r[0];'
    )
)
def test_parse_qasm_error(body: str) -> None:
    with raises(CircuitParseError) as info:
        parse_circuit('qreg q[2];\n' + body + '\n', 'qasm')
    assert info.value.line == 2
    assert str(info.value).startswith('line 2:')


def test_parse_json() -> None:
    text = '{"n": 2, "ops": [{"kind": "rzz", "q": [0, 1], "param": 0.5}, {"kind": "measure", "q": [1]}]}'
    circuit = parse_circuit(text, 'json')
    assert circuit.ops == [Operation('rzz', (0, 1), 0.5), Operation('measure', (1,))]
    with raises(InputError):
        parse_circuit('{"n": 2, "ops": [{"kind": "cx", "q": [0]}]}', 'json')
    with raises(InputError):
        parse_circuit('{"n": 2}', 'json')
    with raises(InputError):
        parse_circuit('[1, 2', 'json')
    with raises(InputError):
        parse_circuit('{"n": 1, "ops": [{"kind": "rz", "q": [0], "param": "abc"}]}', 'json')
    with raises(InputError):
        parse_circuit('{"n": 1, "ops": [{"kind": ["h"], "q": [0]}]}', 'json')


def test_writers() -> None:
    circuit = gen_vqe(4, seed=7)
    assert parse_circuit(circuit_to_json(circuit), 'json') == circuit
    assert parse_circuit(circuit_to_qasm(circuit), 'qasm') == circuit


def test_gen_qaoa() -> None:
    circuit = gen_qaoa(20, seed=1)
    assert circuit.n_qubits == 20
    assert circuit.count('rzz') == 30
    assert circuit.count('h') == 20
    assert circuit.count('rx') == 20
    assert circuit.count('measure') == 20
    assert gen_qaoa(20, seed=1) == circuit
    assert gen_qaoa(8, seed=1, p=2).count('rzz') == 24
    with raises(InputError):
        gen_qaoa(5)


def test_gen_bv() -> None:
    circuit = gen_bv(5, seed=3)
    assert len(circuit) == 16
    assert circuit.count('2q') == 2
    assert all(op.qubits[1] == 4 for op in circuit.ops if op.is_2q)
    assert circuit.count('measure') == 4
    with raises(InputError):
        gen_bv(1)


def test_gen_rca() -> None:
    circuit = gen_rca(4)
    assert len(circuit) == 37
    assert circuit.count('2q') == 17
    assert circuit.count('1q') == 18
    assert [op.qubits for op in circuit.ops if op.is_measure] == [(2,), (3,)]
    assert gen_rca(8).count('2q') == 3 * 16 + 1
    with raises(InputError):
        gen_rca(5)


def test_gen_vqe() -> None:
    circuit = gen_vqe(4, seed=2)
    assert len(circuit) == 18
    assert circuit.count('cx') == 6
    assert gen_vqe(4, layers=2, seed=2).count('cx') == 12
    assert gen_vqe(4, seed=2) == circuit


def test_gen_benchmark() -> None:
    assert gen_benchmark('bv', 6, 0) == gen_bv(6, 0)
    assert gen_benchmark('rca', 6) == gen_rca(6)
    with raises(InputError):
        gen_benchmark('grover', 6)


def test_angle_value() -> None:
    circuit = parse_circuit('qreg q[1];\nrx(pi) q[0];\n', 'qasm')
    assert circuit.ops[0].param == approx(math_pi)
