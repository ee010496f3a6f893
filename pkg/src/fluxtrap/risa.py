# !/usr/bin/env python
# -*- coding: utf-8 -*-

"""
@Time    : 2025-03-05
@Author  : Rey
@Contact : reyxbo@163.com
@Explain : Instruction set methods.
"""


from typing import Any, NamedTuple, Literal
from collections.abc import Mapping
from dataclasses import dataclass, fields
from enum import StrEnum
from functools import cache

from .rarch import Leg, LEG_ORDER, PositionGraph, QubitMapping
from .rbase import Base, InputError, ValidationError, throw


__all__ = (
    'OpEntry',
    'OpTable',
    'JTKind',
    'JTClass',
    'Direction',
    'Gate1Q',
    'Gate2Q',
    'Measure',
    'IntraShift',
    'IntraSwap',
    'S3',
    'JTSIMD',
    'Instruction',
    'Violation',
    'KIND_CATEGORY',
    'enumerate_jt_classes',
    'get_jt_class',
    'gate2q_form',
    'instruction_kind',
    'instruction_latency',
    'instruction_qubits',
    'instruction_positions',
    'instruction_moves',
    'validate',
    'apply',
    'apply_to_mapping'
)


class OpEntry(NamedTuple):
    """
    Operation table entry.
    """

    latency_us: int
    fidelity: float


@dataclass(frozen=True)
class OpTable(Base):
    """
    Operation table type, latency microseconds and fidelity per operation kind.
    """

    gate1q: OpEntry = OpEntry(5, 0.999975)
    gate2q: OpEntry = OpEntry(25, 0.9982)
    measure: OpEntry = OpEntry(120, 0.9984)
    intra_shift: OpEntry = OpEntry(58, 0.99978)
    intra_swap: OpEntry = OpEntry(200, 0.99978)
    inter_shift: OpEntry = OpEntry(250, 0.99956)
    inter_swap: OpEntry = OpEntry(500, 0.99912)


    def __post_init__(self) -> None:
        """
        Check attributes.
        """

        # Check.
        for field_ in fields(self):
            entry = getattr(self, field_.name)
            latency_us, fidelity = entry
            if type(latency_us) != int or latency_us <= 0:
                throw(InputError, latency_us, text='latency of "%s" must be a positive integer' % field_.name)
            if not 0 < fidelity <= 1:
                throw(InputError, fidelity, text='fidelity of "%s" must be in (0, 1]' % field_.name)
            object.__setattr__(self, field_.name, OpEntry(latency_us, float(fidelity)))


    def to_dict(self) -> dict[str, dict[str, int | float]]:
        """
        Convert to dictionary.

        Returns
        -------
        Dictionary.
        """

        # Convert.
        data = {
            field_.name: {
                'latency_us': getattr(self, field_.name).latency_us,
                'fidelity': getattr(self, field_.name).fidelity
            }
            for field_ in fields(self)
        }

        return data


    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> 'OpTable':
        """
        Build from override dictionary, missing kinds and keys use defaults.

        Parameters
        ----------
        data : Override dictionary.

        Returns
        -------
        Instance.
        """

        # Check.
        if not isinstance(data, Mapping):
            throw(InputError, text='op table must be an object')
        default = cls()
        names = {field_.name for field_ in fields(cls)}
        unknown = set(data) - names
        if unknown:
            throw(InputError, text='unknown op table kinds %s' % sorted(unknown))

        # Build.
        entries = {}
        for name, override in data.items():
            if not isinstance(override, Mapping) or set(override) - {'latency_us', 'fidelity'}:
                throw(InputError, text='op table entry "%s" must have keys latency_us and fidelity' % name)
            entry: OpEntry = getattr(default, name)
            entries[name] = OpEntry(
                override.get('latency_us', entry.latency_us),
                override.get('fidelity', entry.fidelity)
            )
        table = cls(**entries)

        return table


class JTKind(StrEnum):
    """
    Junction transfer kind.
    """

    SHIFT = 'shift'
    SWAP = 'swap'


@dataclass(frozen=True)
class JTClass(Base):
    """
    Junction transfer class, swap leg pair is stored in leg order.
    """

    kind: JTKind
    from_leg: Leg
    to_leg: Leg


    @property
    def name(self) -> str:
        """
        Class name, for example `shift_N_E`.

        Returns
        -------
        Name.
        """

        return '%s_%s_%s' % (self.kind.value, self.from_leg.value, self.to_leg.value)


    def __str__(self) -> str:
        """
        Class name.

        Returns
        -------
        Name.
        """

        return self.name


@cache
def enumerate_jt_classes() -> tuple[JTClass, ...]:
    """
    Enumerate all 18 junction transfer classes, 12 shifts lexicographic by leg order then 6 swaps.

    Returns
    -------
    Classes.
    """

    # Shift.
    shifts = [
        JTClass(JTKind.SHIFT, from_leg, to_leg)
        for from_leg in LEG_ORDER
        for to_leg in LEG_ORDER
        if from_leg != to_leg
    ]

    # Swap.
    swaps = [
        JTClass(JTKind.SWAP, leg_a, leg_b)
        for i, leg_a in enumerate(LEG_ORDER)
        for leg_b in LEG_ORDER[i + 1:]
    ]
    classes = (*shifts, *swaps)

    return classes


def get_jt_class(name: str) -> JTClass:
    """
    Get junction transfer class by name.

    Parameters
    ----------
    name : Class name.

    Returns
    -------
    Class.
    """

    # Get.
    for jt_class in enumerate_jt_classes():
        if jt_class.name == name:
            return jt_class

    throw(InputError, name, text='unknown JT class')


class Direction(StrEnum):
    """
    In-trap shift direction, right is increasing index.
    """

    LEFT = 'left'
    RIGHT = 'right'


@dataclass(frozen=True)
class Gate1Q(Base):
    """
    Single qubit gate.
    """

    qubit: int
    name: str
    gate: int = -1
    param: float | None = None


@dataclass(frozen=True)
class Gate2Q(Base):
    """
    Two qubit gate.
    """

    q1: int
    q2: int
    name: str
    gate: int = -1
    param: float | None = None


@dataclass(frozen=True)
class Measure(Base):
    """
    Measurement.
    """

    qubit: int
    gate: int = -1


@dataclass(frozen=True)
class IntraShift(Base):
    """
    Scalar in-trap shift to adjacent slot.
    """

    trap: int
    src: int
    dst: int


@dataclass(frozen=True)
class IntraSwap(Base):
    """
    In-trap swap of index `i` and `i + 1`.
    """

    trap: int
    i: int


@dataclass(frozen=True)
class S3(Base):
    """
    Segmented shift of a contiguous ion run by one slot.
    """

    trap: int
    direction: Direction
    indices: tuple[int, ...]


    @property
    def head(self) -> int:
        """
        Index of run head in shift direction.

        Returns
        -------
        Index.
        """

        if self.direction == Direction.RIGHT:
            return self.indices[-1]

        return self.indices[0]


    @property
    def step(self) -> Literal[1, -1]:
        """
        Index step.

        Returns
        -------
        Step.
        """

        if self.direction == Direction.RIGHT:
            return 1

        return -1


@dataclass(frozen=True)
class JTSIMD(Base):
    """
    Junction transfer of one class at participating junctions.
    """

    jt_class: JTClass
    junctions: tuple[int, ...]


type Instruction = Gate1Q | Gate2Q | Measure | IntraShift | IntraSwap | S3 | JTSIMD


## Event kind to busy time category.
KIND_CATEGORY: dict[str, Literal['gate', 'intra', 'inter']] = {
    'gate1q': 'gate',
    'gate2q': 'gate',
    'measure': 'gate',
    'intra_shift': 'intra',
    'intra_swap': 'intra',
    's3': 'intra',
    'jt_simd': 'inter'
}


@dataclass(frozen=True)
class Violation(Base):
    """
    Rule violation record.
    """

    rule: str
    text: str
    t: int | None = None


    def to_dict(self) -> dict[str, Any]:
        """
        Convert to dictionary.

        Returns
        -------
        Dictionary.
        """

        return {'rule': self.rule, 'text': self.text, 't': self.t}


def gate2q_form(graph: PositionGraph, q1: int, q2: int) -> Literal['colocated', 'adjacent'] | None:
    """
    Get executable form of two qubit gate on current mapping.

    Parameters
    ----------
    graph : Position graph.
    q1 : Qubit.
    q2 : Qubit.

    Returns
    -------
    Form.
        - `Literal['colocated']`: Both qubits in adjacent gate zones.
        - `Literal['adjacent']`: Adjacent in one trap and one in gate zone, implicit shift in and out.
        - `None`: Not executable.
    """

    # Parameter.
    pos_1 = graph.mapping.qubit_pos.get(q1)
    pos_2 = graph.mapping.qubit_pos.get(q2)

    # Judge.
    if (
        pos_1 is None
        or pos_2 is None
        or graph.trap_of(pos_1) != graph.trap_of(pos_2)
        or abs(pos_1 - pos_2) != 1
    ):
        return
    gate_1 = graph.is_gate_zone(pos_1)
    gate_2 = graph.is_gate_zone(pos_2)
    if gate_1 and gate_2:
        return 'colocated'
    if gate_1 or gate_2:
        return 'adjacent'


def instruction_kind(instr: Instruction) -> str:
    """
    Get event kind name of instruction.

    Parameters
    ----------
    instr : Instruction.

    Returns
    -------
    Kind name.
    """

    # Get.
    match instr:
        case Gate1Q():
            return 'gate1q'
        case Gate2Q():
            return 'gate2q'
        case Measure():
            return 'measure'
        case IntraShift():
            return 'intra_shift'
        case IntraSwap():
            return 'intra_swap'
        case S3():
            return 's3'
        case JTSIMD():
            return 'jt_simd'
        case _:
            throw(TypeError, instr)


def instruction_latency(
    instr: Instruction,
    table: OpTable,
    graph: PositionGraph | None = None
) -> int:
    """
    Get instruction latency microseconds, grouped transports cost one operation latency.

    Parameters
    ----------
    instr : Instruction.
    table : Operation table.
    graph : Position graph, required by two qubit gate form.

    Returns
    -------
    Latency.
    """

    # Get.
    match instr:
        case Gate1Q():
            return table.gate1q.latency_us
        case Gate2Q(q1=q1, q2=q2):
            if graph is None:
                throw(ValueError, graph, text='two qubit gate latency needs graph')
            form = gate2q_form(graph, q1, q2)
            if form == 'colocated':
                return table.gate2q.latency_us
            return table.gate2q.latency_us + 2 * table.intra_shift.latency_us
        case Measure():
            return table.measure.latency_us
        case IntraShift() | S3():
            return table.intra_shift.latency_us
        case IntraSwap():
            return table.intra_swap.latency_us
        case JTSIMD(jt_class=jt_class):
            if jt_class.kind == JTKind.SHIFT:
                return table.inter_shift.latency_us
            return table.inter_swap.latency_us
        case _:
            throw(TypeError, instr)


def instruction_moves(instr: Instruction, graph: PositionGraph) -> list[tuple[int, int]]:
    """
    Get position moves of transport instruction, swaps give both directions.

    Parameters
    ----------
    instr : Instruction.
    graph : Position graph.

    Returns
    -------
    Source and destination position pairs.
    """

    # Get.
    match instr:
        case IntraShift(trap=trap, src=src, dst=dst):
            return [(graph.position_id(trap, src), graph.position_id(trap, dst))]
        case IntraSwap(trap=trap, i=i):
            pos_a = graph.position_id(trap, i)
            pos_b = graph.position_id(trap, i + 1)
            return [(pos_a, pos_b), (pos_b, pos_a)]
        case S3(trap=trap, indices=indices):
            return [
                (graph.position_id(trap, index), graph.position_id(trap, index + instr.step))
                for index in indices
            ]
        case JTSIMD(jt_class=jt_class, junctions=junctions):
            moves = []
            for junction_id in junctions:
                junction = graph.junctions[junction_id]
                src = junction.leg_positions[jt_class.from_leg]
                dst = junction.leg_positions[jt_class.to_leg]
                moves.append((src, dst))
                if jt_class.kind == JTKind.SWAP:
                    moves.append((dst, src))
            return moves
        case _:
            return []


def instruction_positions(instr: Instruction, graph: PositionGraph) -> tuple[int, ...]:
    """
    Get positions touched by instruction on pre-state, sorted.

    Parameters
    ----------
    instr : Instruction.
    graph : Position graph of pre-state.

    Returns
    -------
    Position IDs.
    """

    # Get.
    qubit_pos = graph.mapping.qubit_pos
    match instr:
        case Gate1Q(qubit=qubit) | Measure(qubit=qubit):
            positions = {qubit_pos[qubit]} if qubit in qubit_pos else set()
        case Gate2Q(q1=q1, q2=q2):
            positions = {
                qubit_pos[qubit]
                for qubit in (q1, q2)
                if qubit in qubit_pos
            }
        case _:
            positions = {
                pos
                for move in instruction_moves(instr, graph)
                for pos in move
            }

    return tuple(sorted(positions))


def instruction_qubits(instr: Instruction, graph: PositionGraph) -> tuple[int, ...]:
    """
    Get qubits used or moved by instruction on pre-state.

    Parameters
    ----------
    instr : Instruction.
    graph : Position graph of pre-state.

    Returns
    -------
    Qubits, gates keep operand order, transports sorted.
    """

    # Get.
    match instr:
        case Gate1Q(qubit=qubit) | Measure(qubit=qubit):
            return (qubit,)
        case Gate2Q(q1=q1, q2=q2):
            return (q1, q2)
        case _:
            pos_qubit = graph.mapping.pos_qubit
            qubits = {
                pos_qubit[src]
                for src, _ in instruction_moves(instr, graph)
                if src in pos_qubit
            }
            return tuple(sorted(qubits))


def _check_index(graph: PositionGraph, trap: int, index: int, violations: list[Violation]) -> bool:
    """
    Check trap and index in range.

    Parameters
    ----------
    graph : Position graph.
    trap : Trap ID.
    index : In-trap index.
    violations : Violation list to append.

    Returns
    -------
    Whether in range.
    """

    # Check.
    if not 0 <= trap < len(graph.traps):
        violations.append(Violation('out of grid', 'trap %s not in grid' % trap))
        return False
    if not 0 <= index < graph.capacity:
        violations.append(Violation('out of trap', 'index %s not in trap %s' % (index, trap)))
        return False

    return True


def validate(instr: Instruction, graph: PositionGraph) -> list[Violation]:
    """
    Validate instruction on graph state, never mutate.

    Parameters
    ----------
    instr : Instruction.
    graph : Position graph.

    Returns
    -------
    Violations, empty when legal.
    """

    # Parameter.
    violations: list[Violation] = []
    qubit_pos = graph.mapping.qubit_pos
    pos_qubit = graph.mapping.pos_qubit

    # Check.
    match instr:

        ## Single qubit.
        case Gate1Q(qubit=qubit) | Measure(qubit=qubit):
            if qubit not in qubit_pos:
                violations.append(Violation('qubit not placed', 'qubit %s not placed' % qubit))
            elif not graph.is_gate_zone(qubit_pos[qubit]):
                violations.append(Violation('not in gate zone', 'qubit %s at position %s' % (qubit, qubit_pos[qubit])))

        ## Two qubit.
        case Gate2Q(q1=q1, q2=q2):
            if q1 == q2:
                violations.append(Violation('same qubit', 'qubit %s used twice' % q1))
            elif q1 not in qubit_pos or q2 not in qubit_pos:
                violations.append(Violation('qubit not placed', 'qubits %s, %s' % (q1, q2)))
            elif gate2q_form(graph, q1, q2) is None:
                violations.append(
                    Violation(
                        'not co-located',
                        'qubits %s, %s at positions %s, %s' % (q1, q2, qubit_pos[q1], qubit_pos[q2])
                    )
                )

        ## Scalar shift.
        case IntraShift(trap=trap, src=src, dst=dst):
            if _check_index(graph, trap, src, violations) and _check_index(graph, trap, dst, violations):
                if abs(src - dst) != 1:
                    violations.append(Violation('not adjacent', 'indices %s, %s' % (src, dst)))
                if graph.position_id(trap, src) not in pos_qubit:
                    violations.append(Violation('source empty', 'trap %s index %s' % (trap, src)))
                if graph.position_id(trap, dst) in pos_qubit:
                    violations.append(Violation('destination occupied', 'trap %s index %s' % (trap, dst)))

        ## Swap.
        case IntraSwap(trap=trap, i=i):
            if _check_index(graph, trap, i, violations) and _check_index(graph, trap, i + 1, violations):
                if (
                    graph.position_id(trap, i) not in pos_qubit
                    or graph.position_id(trap, i + 1) not in pos_qubit
                ):
                    violations.append(Violation('swap ion missing', 'trap %s indices %s, %s' % (trap, i, i + 1)))

        ## Segmented shift.
        case S3(trap=trap, indices=indices):
            if len(indices) == 0:
                violations.append(Violation('empty group', 'trap %s' % trap))
            elif any(b - a != 1 for a, b in zip(indices, indices[1:])):
                violations.append(Violation('not contiguous', 'indices %s' % (indices,)))
            elif all(_check_index(graph, trap, index, violations) for index in indices):
                dst = instr.head + instr.step
                if not 0 <= dst < graph.capacity:
                    violations.append(Violation('out of trap', 'head destination %s' % dst))
                elif graph.position_id(trap, dst) in pos_qubit:
                    violations.append(Violation('destination occupied', 'trap %s index %s' % (trap, dst)))
                for index in indices:
                    if graph.position_id(trap, index) not in pos_qubit:
                        violations.append(Violation('source empty', 'trap %s index %s' % (trap, index)))

        ## Junction transfer.
        case JTSIMD(jt_class=jt_class, junctions=junctions):
            if len(junctions) == 0:
                violations.append(Violation('empty group', 'class %s' % jt_class.name))
            if len(set(junctions)) != len(junctions):
                violations.append(Violation('duplicate participant', 'junctions %s' % (junctions,)))
            touched: set[int] = set()
            for junction_id in junctions:
                if not 0 <= junction_id < len(graph.junctions):
                    violations.append(Violation('out of grid', 'junction %s' % junction_id))
                    continue
                junction = graph.junctions[junction_id]
                src = junction.leg_positions[jt_class.from_leg]
                dst = junction.leg_positions[jt_class.to_leg]
                if src not in pos_qubit:
                    violations.append(
                        Violation('wrong leg end', 'junction %s has no ion at leg %s' % (junction_id, jt_class.from_leg))
                    )
                if jt_class.kind == JTKind.SHIFT:
                    if dst in pos_qubit:
                        violations.append(Violation('destination occupied', 'junction %s leg %s' % (junction_id, jt_class.to_leg)))
                elif dst not in pos_qubit:
                    violations.append(Violation('swap ion missing', 'junction %s leg %s' % (junction_id, jt_class.to_leg)))
                if src in touched or dst in touched:
                    violations.append(Violation('position conflict', 'junction %s shares a trap end' % junction_id))
                touched.update((src, dst))

        ## Throw exception.
        case _:
            throw(TypeError, instr)

    return violations


def apply_to_mapping(instr: Instruction, graph: PositionGraph, mapping: QubitMapping | None = None) -> None:
    """
    Apply instruction occupancy change in place, without validation.

    Parameters
    ----------
    instr : Instruction.
    graph : Position graph, give static structure.
    mapping : Mapping to update.
        - `None`: Use mapping of graph.
    """

    # Parameter.
    if mapping is None:
        mapping = graph.mapping

    # Apply.
    match instr:
        case IntraShift(trap=trap, src=src, dst=dst):
            mapping.move(graph.position_id(trap, src), graph.position_id(trap, dst))
        case IntraSwap(trap=trap, i=i):
            mapping.exchange(graph.position_id(trap, i), graph.position_id(trap, i + 1))
        case S3(trap=trap, indices=indices):

            ## Head first.
            ordered = indices if instr.direction == Direction.LEFT else reversed(indices)
            for index in ordered:
                mapping.move(graph.position_id(trap, index), graph.position_id(trap, index + instr.step))

        case JTSIMD(jt_class=jt_class, junctions=junctions):
            for junction_id in junctions:
                junction = graph.junctions[junction_id]
                src = junction.leg_positions[jt_class.from_leg]
                dst = junction.leg_positions[jt_class.to_leg]
                if jt_class.kind == JTKind.SHIFT:
                    mapping.move(src, dst)
                else:
                    mapping.exchange(src, dst)


def apply(instr: Instruction, graph: PositionGraph) -> PositionGraph:
    """
    Apply legal instruction, return updated graph copy.

    Parameters
    ----------
    instr : Instruction.
    graph : Position graph.

    Returns
    -------
    Updated graph.
    """

    # Check.
    violations = validate(instr, graph)
    if violations:
        raise ValidationError(
            'illegal instruction %s: %s' % (instr, ', '.join(violation.rule for violation in violations)),
            violations
        )

    # Apply.
    graph = graph.copy()
    apply_to_mapping(instr, graph)

    return graph
