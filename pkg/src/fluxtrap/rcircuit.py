# !/usr/bin/env python
# -*- coding: utf-8 -*-

"""
@Time    : 2025-03-06
@Author  : Rey
@Contact : reyxbo@163.com
@Explain : Circuit methods, dependency DAG, parsers and benchmark generators.
"""


from typing import Any, Literal
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from math import pi as math_pi, isfinite as math_isfinite
from re import compile as re_compile
from ast import (
    parse as ast_parse,
    Expression,
    BinOp,
    UnaryOp,
    Constant,
    Name,
    Add,
    Sub,
    Mult,
    Div,
    Pow,
    USub,
    UAdd
)
from networkx import DiGraph, random_regular_graph

from .rbase import Base, InputError, CircuitParseError, throw
from .rdata import to_json, from_json
from .rrand import RandomSeed, get_random, randf, randi


__all__ = (
    'GATES_1Q',
    'GATES_2Q',
    'PARAM_GATES',
    'Operation',
    'Circuit',
    'DependencyDAG',
    'build_dag',
    'parse_circuit',
    'circuit_to_json',
    'circuit_to_qasm',
    'gen_qaoa',
    'gen_bv',
    'gen_rca',
    'gen_vqe',
    'gen_benchmark'
)


GATES_1Q = frozenset(('h', 'x', 'y', 'z', 'rx', 'ry', 'rz', 't', 'tdg', 's', 'sdg'))
GATES_2Q = frozenset(('cx', 'cz', 'rzz'))
PARAM_GATES = frozenset(('rx', 'ry', 'rz', 'rzz'))


@dataclass(frozen=True)
class Operation(Base):
    """
    Circuit operation, gate or measure.
    """

    kind: str
    qubits: tuple[int, ...]
    param: float | None = None


    @property
    def is_2q(self) -> bool:
        """
        Whether two qubit gate.

        Returns
        -------
        Result.
        """

        return len(self.qubits) == 2


    @property
    def is_measure(self) -> bool:
        """
        Whether measure.

        Returns
        -------
        Result.
        """

        return self.kind == 'measure'


    def to_dict(self) -> dict[str, Any]:
        """
        Convert to circuit JSON operation.

        Returns
        -------
        Dictionary.
        """

        # Convert.
        data = {'kind': self.kind, 'q': list(self.qubits)}
        if self.param is not None:
            data['param'] = self.param

        return data


class Circuit(Base):
    """
    Circuit type, list order is program order.
    """


    def __init__(self, n_qubits: int, ops: Iterable[Operation] = ()) -> None:
        """
        Build instance attributes.

        Parameters
        ----------
        n_qubits : Qubit count.
        ops : Operations.
        """

        # Check.
        if type(n_qubits) != int or n_qubits < 0:
            throw(InputError, n_qubits)

        # Set attribute.
        self.n_qubits = n_qubits
        self.ops: list[Operation] = []
        for op in ops:
            self.append(op)


    def append(self, op: Operation) -> None:
        """
        Append operation.

        Parameters
        ----------
        op : Operation.
        """

        # Check.
        if op.kind == 'measure':
            arity = 1
        elif op.kind in GATES_1Q:
            arity = 1
        elif op.kind in GATES_2Q:
            arity = 2
        else:
            throw(InputError, op.kind, text='unknown gate')
        if len(op.qubits) != arity:
            throw(InputError, op.qubits, text='gate "%s" needs %s qubits' % (op.kind, arity))
        if len(set(op.qubits)) != len(op.qubits):
            throw(InputError, op.qubits, text='gate "%s" uses a qubit twice' % op.kind)
        for qubit in op.qubits:
            if type(qubit) != int or not 0 <= qubit < self.n_qubits:
                throw(InputError, qubit, text='qubit out of range')
        if (op.kind in PARAM_GATES) != (op.param is not None):
            throw(InputError, op.param, text='gate "%s" parameter mismatch' % op.kind)

        # Append.
        self.ops.append(op)


    def add(self, kind: str, *qubits: int, param: float | None = None) -> None:
        """
        Append operation by parts.

        Parameters
        ----------
        kind : Gate name.
        qubits : Qubits.
        param : Angle parameter.
        """

        # Append.
        self.append(Operation(kind, qubits, param))


    def count(self, kind: str | None = None) -> int:
        """
        Count operations.

        Parameters
        ----------
        kind : Gate name.
            - `None`: Count all.
            - `Literal['1q', '2q']`: Count by arity, measure excluded.
            - `str`: Count this gate name.

        Returns
        -------
        Count.
        """

        # Count.
        match kind:
            case None:
                return len(self.ops)
            case '1q':
                return sum(1 for op in self.ops if len(op.qubits) == 1 and not op.is_measure)
            case '2q':
                return sum(1 for op in self.ops if op.is_2q)
            case _:
                return sum(1 for op in self.ops if op.kind == kind)


    def __len__(self) -> int:
        """
        Operation count.

        Returns
        -------
        Count.
        """

        return len(self.ops)


    def __eq__(self, other: object) -> bool:
        """
        Judge equal.

        Returns
        -------
        Result.
        """

        if not isinstance(other, Circuit):
            return NotImplemented

        return self.n_qubits == other.n_qubits and self.ops == other.ops


class DependencyDAG(Base):
    """
    Dependency DAG type, strict per qubit program order, maintained front layer.
    """


    def __init__(self, circuit: Circuit) -> None:
        """
        Build instance attributes.

        Parameters
        ----------
        circuit : Circuit.
        """

        # Set attribute.
        self.circuit = circuit
        self.graph = DiGraph()
        self.graph.add_nodes_from(range(len(circuit.ops)))

        ## Edge to next gate on each qubit.
        last: dict[int, int] = {}
        for index, op in enumerate(circuit.ops):
            for qubit in op.qubits:
                if qubit in last:
                    self.graph.add_edge(last[qubit], index)
                last[qubit] = index

        ## Front.
        self.indegree: dict[int, int] = dict(self.graph.in_degree())
        self.front_set: set[int] = {
            node
            for node, degree in self.indegree.items()
            if degree == 0
        }
        self.completed: set[int] = set()


    def front(self) -> list[int]:
        """
        Get front layer gates in program order.

        Returns
        -------
        Gate indices.
        """

        return sorted(self.front_set)


    def next_level(self) -> list[int]:
        """
        Get gates whose unfinished predecessors are all in front layer, in program order.

        Returns
        -------
        Gate indices.
        """

        # Get.
        gates = {
            successor
            for node in self.front_set
            for successor in self.graph.successors(node)
            if all(
                predecessor in self.front_set or predecessor in self.completed
                for predecessor in self.graph.predecessors(successor)
            )
        }

        return sorted(gates)


    def predecessors(self, gate: int) -> list[int]:
        """
        Get direct predecessors.

        Parameters
        ----------
        gate : Gate index.

        Returns
        -------
        Gate indices.
        """

        return sorted(self.graph.predecessors(gate))


    def complete_gate(self, gate: int) -> list[int]:
        """
        Complete front layer gate, release successors.

        Parameters
        ----------
        gate : Gate index.

        Returns
        -------
        Gates newly joined front layer.
        """

        # Check.
        if gate not in self.front_set:
            throw(ValueError, gate, text='gate not in front layer')

        # Complete.
        self.front_set.remove(gate)
        self.completed.add(gate)
        released = []
        for successor in self.graph.successors(gate):
            self.indegree[successor] -= 1
            if self.indegree[successor] == 0:
                self.front_set.add(successor)
                released.append(successor)

        return sorted(released)


    @property
    def done(self) -> bool:
        """
        Whether all gates completed.

        Returns
        -------
        Result.
        """

        return len(self.completed) == len(self.circuit.ops)


def build_dag(circuit: Circuit) -> DependencyDAG:
    """
    Build dependency DAG of circuit.

    Parameters
    ----------
    circuit : Circuit.

    Returns
    -------
    DAG.
    """

    return DependencyDAG(circuit)


## Angle expression.
_angle_nodes = (Expression, BinOp, UnaryOp, Constant, Name, Add, Sub, Mult, Div, Pow, USub, UAdd)


def _eval_angle(text: str, line: int) -> float:
    """
    Evaluate angle expression with `pi`.

    Parameters
    ----------
    text : Expression text.
    line : Line number.

    Returns
    -------
    Angle value.
    """


    def evaluate(node) -> float:
        match node:
            case Expression(body=body):
                return evaluate(body)
            case Constant(value=value) if type(value) in (int, float):
                return float(value)
            case Name(id='pi'):
                return math_pi
            case UnaryOp(op=USub(), operand=operand):
                return -evaluate(operand)
            case UnaryOp(op=UAdd(), operand=operand):
                return evaluate(operand)
            case BinOp(left=left, op=op, right=right):
                left = evaluate(left)
                right = evaluate(right)
                match op:
                    case Add():
                        return left + right
                    case Sub():
                        return left - right
                    case Mult():
                        return left * right
                    case Div():
                        return left / right
                    case Pow():
                        return left ** right
        raise CircuitParseError('invalid angle "%s"' % text, line)


    # Parse.
    try:
        tree = ast_parse(text.strip(), mode='eval')
        value = evaluate(tree)
    except CircuitParseError:
        raise
    except (SyntaxError, ZeroDivisionError, OverflowError):
        raise CircuitParseError('invalid angle "%s"' % text, line)

    return value


_pattern_qreg = re_compile(r'^qreg\s+([A-Za-z_]\w*)\s*\[\s*(\d+)\s*\]$')
_pattern_creg = re_compile(r'^creg\s+([A-Za-z_]\w*)\s*\[\s*(\d+)\s*\]$')
_pattern_measure = re_compile(r'^measure\s+(\S+)\s*->\s*(\S+)$')
_pattern_gate = re_compile(r'^([A-Za-z_]\w*)\s*(?:\((.*)\))?\s+(.+)$')
_pattern_arg = re_compile(r'^([A-Za-z_]\w*)(?:\s*\[\s*(\d+)\s*\])?$')


def _parse_qasm(text: str) -> Circuit:
    """
    Parse OpenQASM 2 subset.

    Parameters
    ----------
    text : QASM text.

    Returns
    -------
    Circuit.
    """

    # Parameter.
    registers: dict[str, tuple[int, int]] = {}
    n_qubits = 0
    statements: list[tuple[int, str]] = []

    # Split statements.
    for line_index, line in enumerate(text.splitlines(), 1):
        line = line.split('//', 1)[0].strip()
        if line == '':
            continue
        parts = line.split(';')
        if parts[-1].strip() != '':
            raise CircuitParseError('missing ";"', line_index)
        for part in parts[:-1]:
            part = part.strip()
            if part != '':
                statements.append((line_index, part))


    def resolve(arg: str, line: int) -> list[int]:
        result = _pattern_arg.match(arg.strip())
        if result is None:
            raise CircuitParseError('invalid argument "%s"' % arg, line)
        name, index = result.groups()
        if name not in registers:
            raise CircuitParseError('unknown register "%s"' % name, line)
        offset, size = registers[name]
        if index is None:
            return list(range(offset, offset + size))
        index = int(index)
        if index >= size:
            raise CircuitParseError('index %s out of register "%s"' % (index, name), line)
        return [offset + index]


    # Statements in line order, registers declared before use.
    ops: list[tuple[int, Operation]] = []
    for line, statement in statements:

        ## Header.
        if statement.startswith('OPENQASM'):
            if statement.split()[-1] not in ('2.0', '2'):
                raise CircuitParseError('unsupported version "%s"' % statement, line)
            continue
        if statement.startswith('include'):
            continue

        ## Register.
        result = _pattern_qreg.match(statement)
        if result is not None:
            name, size = result.group(1), int(result.group(2))
            if name in registers:
                raise CircuitParseError('register "%s" defined twice' % name, line)
            registers[name] = (n_qubits, size)
            n_qubits += size
            continue
        if _pattern_creg.match(statement) is not None:
            continue

        ## Measure.
        result = _pattern_measure.match(statement)
        if result is not None:
            for qubit in resolve(result.group(1), line):
                ops.append((line, Operation('measure', (qubit,))))
            continue

        ## Gate.
        result = _pattern_gate.match(statement)
        if result is None:
            raise CircuitParseError('syntax error "%s"' % statement, line)
        name, params, args = result.groups()
        name = name.lower()
        if name in GATES_1Q:
            arity = 1
        elif name in GATES_2Q:
            arity = 2
        else:
            raise CircuitParseError('unknown gate "%s"' % name, line)
        param = None
        if name in PARAM_GATES:
            if params is None or params.strip() == '' or ',' in params:
                raise CircuitParseError('gate "%s" needs one angle' % name, line)
            param = _eval_angle(params, line)
        elif params is not None:
            raise CircuitParseError('gate "%s" takes no angle' % name, line)
        arg_qubits = [resolve(arg, line) for arg in args.split(',')]
        if len(arg_qubits) != arity:
            raise CircuitParseError('gate "%s" needs %s arguments' % (name, arity), line)

        ### Broadcast.
        if arity == 1:
            for qubit in arg_qubits[0]:
                ops.append((line, Operation(name, (qubit,), param)))
        else:
            if len(arg_qubits[0]) != 1 or len(arg_qubits[1]) != 1:
                raise CircuitParseError('gate "%s" needs single qubit arguments' % name, line)
            ops.append((line, Operation(name, (arg_qubits[0][0], arg_qubits[1][0]), param)))

    # Build.
    circuit = Circuit(n_qubits)
    for line, op in ops:
        try:
            circuit.append(op)
        except InputError as exc:
            raise CircuitParseError(str(exc), line)

    return circuit


def _parse_json(text: str) -> Circuit:
    """
    Parse circuit JSON.

    Parameters
    ----------
    text : JSON text.

    Returns
    -------
    Circuit.
    """

    # Load.
    data = from_json(text)
    if (
        not isinstance(data, Mapping)
        or set(data) != {'n', 'ops'}
        or type(data['n']) != int
        or type(data['ops']) != list
    ):
        throw(InputError, text='circuit JSON must be an object with keys "n" and "ops"')

    # Build.
    circuit = Circuit(data['n'])
    for op in data['ops']:
        if (
            not isinstance(op, Mapping)
            or 'kind' not in op
            or 'q' not in op
            or set(op) - {'kind', 'q', 'param'}
            or type(op['kind']) != str
            or type(op['q']) != list
        ):
            throw(InputError, op, text='invalid circuit operation')
        param = op.get('param')
        if param is not None:
            if type(param) not in (int, float) or not math_isfinite(param):
                throw(InputError, param, text='gate "%s" parameter must be a finite number' % op['kind'])
            param = float(param)
        circuit.append(Operation(op['kind'], tuple(op['q']), param))

    return circuit


def parse_circuit(text: str, format_: Literal['json', 'qasm']) -> Circuit:
    """
    Parse circuit text.

    Parameters
    ----------
    text : Circuit text.
    format\\_ : Text format.
        - `Literal['json']`: Circuit JSON `{"n": int, "ops": [...]}`.
        - `Literal['qasm']`: OpenQASM 2 subset.

    Returns
    -------
    Circuit.
    """

    # Parse.
    match format_:
        case 'json':
            circuit = _parse_json(text)
        case 'qasm':
            circuit = _parse_qasm(text)
        case _:
            throw(ValueError, format_)

    return circuit


def circuit_to_json(circuit: Circuit, compact: bool = True) -> str:
    """
    Convert circuit to JSON text.

    Parameters
    ----------
    circuit : Circuit.
    compact : Whether compact content.

    Returns
    -------
    JSON text.
    """

    # Convert.
    data = {
        'n': circuit.n_qubits,
        'ops': [op.to_dict() for op in circuit.ops]
    }
    text = to_json(data, compact)

    return text


def circuit_to_qasm(circuit: Circuit) -> str:
    """
    Convert circuit to OpenQASM 2 text, angles in full precision.

    Parameters
    ----------
    circuit : Circuit.

    Returns
    -------
    QASM text.
    """

    # Header.
    lines = [
        'OPENQASM 2.0;',
        'include "qelib1.inc";',
        'qreg q[%s];' % circuit.n_qubits,
        'creg c[%s];' % circuit.n_qubits
    ]

    # Body.
    for op in circuit.ops:
        if op.is_measure:
            lines.append('measure q[%s] -> c[%s];' % (op.qubits[0], op.qubits[0]))
            continue
        args = ', '.join('q[%s]' % qubit for qubit in op.qubits)
        if op.param is None:
            lines.append('%s %s;' % (op.kind, args))
        else:
            lines.append('%s(%r) %s;' % (op.kind, op.param, args))
    text = '\n'.join(lines) + '\n'

    return text


def gen_qaoa(n: int, seed: int = 0, p: int = 1) -> Circuit:
    """
    Generate QAOA circuit on random 3-regular graph.

    Parameters
    ----------
    n : Qubit count, even and at least 4.
    seed : Random seed.
    p : Layer count.

    Returns
    -------
    Circuit.
    """

    # Check.
    if n < 4 or n % 2 != 0:
        throw(InputError, n, text='3-regular graph needs even qubit count of at least 4')
    if p < 1:
        throw(InputError, p)

    # Generate.
    with RandomSeed(seed):
        graph = random_regular_graph(3, n, seed=get_random())
        edges = sorted(
            tuple(sorted(edge))
            for edge in graph.edges()
        )
        angles = [
            (randf(0, math_pi), randf(0, math_pi))
            for _ in range(p)
        ]
    circuit = Circuit(n)
    for qubit in range(n):
        circuit.add('h', qubit)
    for gamma, beta in angles:
        for u, v in edges:
            circuit.add('rzz', u, v, param=2 * gamma)
        for qubit in range(n):
            circuit.add('rx', qubit, param=2 * beta)
    for qubit in range(n):
        circuit.add('measure', qubit)

    return circuit


def gen_bv(n: int, seed: int = 0) -> Circuit:
    """
    Generate Bernstein-Vazirani circuit, `n - 1` data qubits and last qubit ancilla, secret with `n // 2` ones.

    Parameters
    ----------
    n : Qubit count, at least 2.
    seed : Random seed.

    Returns
    -------
    Circuit.
    """

    # Check.
    if n < 2:
        throw(InputError, n, text='needs at least 2 qubits')

    # Secret.
    ancilla = n - 1
    with RandomSeed(seed):
        secret = sorted(randi(range(ancilla), n // 2))

    # Generate.
    circuit = Circuit(n)
    circuit.add('x', ancilla)
    for qubit in range(n):
        circuit.add('h', qubit)
    for qubit in secret:
        circuit.add('cx', qubit, ancilla)
    for qubit in range(ancilla):
        circuit.add('h', qubit)
    for qubit in range(ancilla):
        circuit.add('measure', qubit)

    return circuit


def _add_ccx(circuit: Circuit, a: int, b: int, c: int) -> None:
    """
    Append Toffoli decomposed to Clifford+T, target `c`.

    Parameters
    ----------
    circuit : Circuit.
    a : Control.
    b : Control.
    c : Target.
    """

    # Append.
    circuit.add('h', c)
    circuit.add('cx', b, c)
    circuit.add('tdg', c)
    circuit.add('cx', a, c)
    circuit.add('t', c)
    circuit.add('cx', b, c)
    circuit.add('tdg', c)
    circuit.add('cx', a, c)
    circuit.add('t', b)
    circuit.add('t', c)
    circuit.add('h', c)
    circuit.add('cx', a, b)
    circuit.add('t', a)
    circuit.add('tdg', b)
    circuit.add('cx', a, b)


def gen_rca(n: int) -> Circuit:
    """
    Generate Cuccaro ripple carry adder, `(n - 2) // 2` bits.
    Layout is carry in `q0`, `a_i = q[1 + 2i]`, `b_i = q[2 + 2i]`, carry out `q[n - 1]`.

    Parameters
    ----------
    n : Qubit count, even and at least 4.

    Returns
    -------
    Circuit.
    """

    # Check.
    if n < 4 or n % 2 != 0:
        throw(InputError, n, text='adder needs even qubit count of at least 4')

    # Parameter.
    bits = (n - 2) // 2
    a = [1 + 2 * i for i in range(bits)]
    b = [2 + 2 * i for i in range(bits)]
    carry = [0] + a[:-1]
    z = n - 1
    circuit = Circuit(n)

    # Majority.
    for i in range(bits):
        circuit.add('cx', a[i], b[i])
        circuit.add('cx', a[i], carry[i])
        _add_ccx(circuit, carry[i], b[i], a[i])

    # Carry out.
    circuit.add('cx', a[-1], z)

    # Unmajority and add.
    for i in reversed(range(bits)):
        _add_ccx(circuit, carry[i], b[i], a[i])
        circuit.add('cx', a[i], carry[i])
        circuit.add('cx', carry[i], b[i])

    # Measure.
    for qubit in (*b, z):
        circuit.add('measure', qubit)

    return circuit


def gen_vqe(n: int, layers: int = 1, seed: int = 0) -> Circuit:
    """
    Generate full entanglement VQE ansatz.

    Parameters
    ----------
    n : Qubit count, at least 2.
    layers : Layer count.
    seed : Random seed.

    Returns
    -------
    Circuit.
    """

    # Check.
    if n < 2:
        throw(InputError, n, text='needs at least 2 qubits')
    if layers < 1:
        throw(InputError, layers)

    # Generate.
    circuit = Circuit(n)
    with RandomSeed(seed):
        for _ in range(layers):
            for qubit in range(n):
                circuit.add('ry', qubit, param=randf(0, 2 * math_pi))
            for qubit in range(n):
                circuit.add('rz', qubit, param=randf(0, 2 * math_pi))
            for i in range(n):
                for j in range(i + 1, n):
                    circuit.add('cx', i, j)
    for qubit in range(n):
        circuit.add('measure', qubit)

    return circuit


def gen_benchmark(kind: str, n: int, seed: int = 0) -> Circuit:
    """
    Generate benchmark circuit by kind name.

    Parameters
    ----------
    kind : Benchmark kind.
        - `Literal['qaoa']`: QAOA, one layer.
        - `Literal['bv']`: Bernstein-Vazirani.
        - `Literal['rca']`: Ripple carry adder.
        - `Literal['vqe']`: VQE, one layer.
    n : Qubit count.
    seed : Random seed.

    Returns
    -------
    Circuit.
    """

    # Generate.
    match kind:
        case 'qaoa':
            circuit = gen_qaoa(n, seed)
        case 'bv':
            circuit = gen_bv(n, seed)
        case 'rca':
            circuit = gen_rca(n)
        case 'vqe':
            circuit = gen_vqe(n, 1, seed)
        case _:
            throw(InputError, kind, text='unknown benchmark')

    return circuit
