# !/usr/bin/env python
# -*- coding: utf-8 -*-

"""
@Time    : 2025-03-08
@Author  : Rey
@Contact : reyxbo@163.com
@Explain : Aggregation methods, segmented shift groups, junction transfer classes and forced routing.
"""


from typing import Any, NamedTuple
from collections.abc import Collection
from dataclasses import dataclass, field
from networkx import NetworkXNoPath, restricted_view, shortest_path, single_source_shortest_path

from .rarch import LEG_ORDER, PositionGraph, QubitMapping
from .rbase import Base
from .rcircuit import DependencyDAG
from .rheuristic import EPSILON, ZoneAssignment, Scorer
from .risa import (
    JTKind,
    JTClass,
    Direction,
    IntraShift,
    IntraSwap,
    S3,
    JTSIMD,
    Instruction,
    enumerate_jt_classes,
    apply_to_mapping
)


__all__ = (
    'S3Candidate',
    'JTCandidate',
    'AggregationStats',
    'IntraPlan',
    'InterPlan',
    'aggregate_s3',
    'aggregate_jt',
    'route_forced'
)


@dataclass(frozen=True)
class S3Candidate(Base):
    """
    Intra trap candidate, segmented shift or exchange.
    """

    instruction: S3 | IntraSwap
    delta: float
    locked: frozenset[int]
    freed: frozenset[int]
    moves: dict[int, int] = field(hash=False, compare=False)


    @property
    def positions(self) -> frozenset[int]:
        """
        Positions touched.

        Returns
        -------
        Position IDs.
        """

        return self.locked | self.freed


    def to_dict(self) -> dict[str, Any]:
        """
        Convert to dictionary.

        Returns
        -------
        Dictionary.
        """

        # Convert.
        instr = self.instruction
        data = {'kind': 's3' if type(instr) == S3 else 'intra_swap', 'trap': instr.trap}
        match instr:
            case S3(direction=direction, indices=indices):
                data['direction'] = direction.value
                data['indices'] = list(indices)
            case IntraSwap(i=i):
                data['indices'] = [i, i + 1]
        data['delta'] = self.delta

        return data


@dataclass(frozen=True)
class JTCandidate(Base):
    """
    Junction transfer candidate of one class.
    """

    jt_class: JTClass
    junctions: tuple[int, ...]
    delta: float
    cost_after: float
    moves: dict[int, int] = field(hash=False, compare=False)


    @property
    def instruction(self) -> JTSIMD:
        """
        Junction transfer instruction.

        Returns
        -------
        Instruction.
        """

        return JTSIMD(self.jt_class, self.junctions)


    def to_dict(self) -> dict[str, Any]:
        """
        Convert to dictionary.

        Returns
        -------
        Dictionary.
        """

        return {
            'jt_class': self.jt_class.name,
            'junctions': list(self.junctions),
            'delta': self.delta,
            'cost_after': self.cost_after
        }


@dataclass(frozen=True)
class AggregationStats(Base):
    """
    Segmented shift search counters.
    Contended vacancies have movers on both sides, branches are chains built from them.
    """

    branches: int = 0
    contended: int = 0


class IntraPlan(NamedTuple):
    """
    Selected intra trap plan.
    """

    candidates: list[S3Candidate]
    mapping: QubitMapping
    delta: float
    stats: AggregationStats

    # Gain with exchange part scaled by shift over exchange latency.
    weighted: float = 0.0


    @property
    def instructions(self) -> list[S3 | IntraSwap]:
        """
        Instructions of plan.

        Returns
        -------
        Instructions.
        """

        return [candidate.instruction for candidate in self.candidates]


class InterPlan(NamedTuple):
    """
    All junction transfer candidates and best one.
    """

    candidates: list[JTCandidate]
    best: JTCandidate | None
    mapping: QubitMapping


def _build_chain(
    graph: PositionGraph,
    scorer: Scorer,
    movers: Collection[int],
    vacant: int,
    direction: Direction
) -> S3Candidate | None:
    """
    Build chain shifting toward vacant slot, head strictly improving and members never harmful.

    Parameters
    ----------
    graph : Position graph.
    scorer : Scorer.
    movers : Qubits allowed to move.
    vacant : Vacant position ID.
    direction : Shift direction.

    Returns
    -------
    Candidate or `None`.
    """

    # Parameter.
    trap = graph.trap_of(vacant)
    step = 1 if direction == Direction.RIGHT else -1
    index = graph.index_of(vacant) - step
    members: list[int] = []
    moves: dict[int, int] = {}

    # Grow.
    while 0 <= index < graph.capacity:
        pos = graph.position_id(trap, index)
        qubit = graph.occupant(pos)
        if qubit is None or qubit not in movers:
            break
        delta = scorer.gain({qubit: pos + step})
        if len(members) == 0:
            if delta <= EPSILON:
                return
        elif delta < -EPSILON:
            break
        members.append(index)
        moves[qubit] = pos + step
        index -= step

    # Check.
    if len(members) == 0:
        return

    # Build.
    indices = tuple(sorted(members))
    sources = frozenset(graph.position_id(trap, index) for index in members)
    candidate = S3Candidate(
        S3(trap, direction, indices),
        scorer.gain(moves),
        frozenset((vacant,)),
        sources,
        moves
    )

    return candidate


def _select(
    scorer: Scorer,
    candidates: list[S3Candidate],
    selected: list[S3Candidate],
    moves: dict[int, int],
    delta: float
) -> float:
    """
    Greedy select position disjoint candidates while total cost strictly decreases.

    Parameters
    ----------
    scorer : Scorer.
    candidates : Candidates in priority order.
    selected : Selected list to append.
    moves : Cumulative moves to update.
    delta : Cumulative gain.

    Returns
    -------
    New cumulative gain.
    """

    # Select.
    used = set().union(*(candidate.positions for candidate in selected))
    for candidate in candidates:
        if used & candidate.positions:
            continue
        new_moves = {**moves, **candidate.moves}
        new_delta = scorer.gain(new_moves)
        if new_delta > delta + EPSILON:
            selected.append(candidate)
            moves.update(candidate.moves)
            used |= candidate.positions
            delta = new_delta

    return delta


def aggregate_s3(
    graph: PositionGraph,
    scorer: Scorer,
    engaged: Collection[int],
    reserved: Collection[int]
) -> IntraPlan:
    """
    Aggregate segmented shifts by position reuse, contended vacancies branch into two chains.
    Then add exchanges for movers blocked by idle ions.

    Parameters
    ----------
    graph : Position graph in current state.
    scorer : Scorer of window.
    engaged : Qubits of in-flight operations.
    reserved : Positions of in-flight operations.

    Returns
    -------
    Plan with mapping after all selected instructions.
    """

    # Parameter.
    qubit_pos = graph.mapping.qubit_pos
    movers = {
        qubit
        for qubit in scorer.qubits
        if qubit not in engaged and qubit_pos[qubit] not in reserved
    }
    branches = 0
    contended = 0

    # Chains.
    chains: list[S3Candidate] = []
    if movers:
        for vacant in graph.vacant_positions():
            if vacant in reserved:
                continue
            right = _build_chain(graph, scorer, movers, vacant, Direction.RIGHT)
            left = _build_chain(graph, scorer, movers, vacant, Direction.LEFT)

            ## Contention.
            trap = graph.trap_of(vacant)
            index = graph.index_of(vacant)
            sides = [
                graph.occupant(graph.position_id(trap, side_index)) in movers
                for side_index in (index - 1, index + 1)
                if 0 <= side_index < graph.capacity
            ]
            if len(sides) == 2 and all(sides):
                contended += 1
                branches += (right is not None) + (left is not None)

            ## Branch.
            if right is not None and left is not None:
                best = min(
                    (right, left),
                    key=lambda candidate: (
                        -candidate.delta,
                        -len(candidate.instruction.indices),
                        graph.position_id(candidate.instruction.trap, candidate.instruction.head)
                    )
                )
                chains.append(best)
            elif right is not None:
                chains.append(right)
            elif left is not None:
                chains.append(left)

    ## Select.
    chains.sort(
        key=lambda candidate: (
            -candidate.delta,
            -len(candidate.instruction.indices),
            candidate.instruction.trap,
            candidate.instruction.head
        )
    )
    selected: list[S3Candidate] = []
    moves: dict[int, int] = {}
    shift_delta = _select(scorer, chains, selected, moves, 0.0)

    # Exchanges.
    chained = set(moves)
    swaps: list[S3Candidate] = []
    for qubit in sorted(movers - chained):
        pos = qubit_pos[qubit]
        trap = graph.trap_of(pos)
        index = graph.index_of(pos)

        ## Best direction.
        best_gain = EPSILON
        best_pos = None
        for neighbor_index in (index - 1, index + 1):
            if not 0 <= neighbor_index < graph.capacity:
                continue
            neighbor = graph.position_id(trap, neighbor_index)
            gain = scorer.gain({qubit: neighbor})
            if gain > best_gain:
                best_gain = gain
                best_pos = neighbor
        if best_pos is None:
            continue

        ## Partner.
        partner = graph.occupant(best_pos)
        if (
            partner is None
            or partner in engaged
            or partner in chained
            or best_pos in reserved
        ):
            continue
        swap_moves = {qubit: best_pos, partner: pos}
        gain = scorer.gain(swap_moves)
        if gain <= EPSILON:
            continue
        candidate = S3Candidate(
            IntraSwap(trap, graph.index_of(min(pos, best_pos))),
            gain,
            frozenset((pos, best_pos)),
            frozenset((pos, best_pos)),
            swap_moves
        )
        if candidate not in swaps:
            swaps.append(candidate)

    ## Select.
    swaps.sort(key=lambda candidate: (-candidate.delta, candidate.instruction.trap, candidate.instruction.i))
    delta = _select(scorer, swaps, selected, moves, shift_delta)

    # Mapping.
    mapping = graph.mapping.copy()
    for candidate in selected:
        apply_to_mapping(candidate.instruction, graph, mapping)
    stats = AggregationStats(branches, contended)
    table = graph.spec.get_op_table()
    weighted = shift_delta + (delta - shift_delta) * table.intra_shift.latency_us / table.intra_swap.latency_us
    plan = IntraPlan(selected, mapping, delta, stats, weighted)

    return plan


def aggregate_jt(
    graph: PositionGraph,
    scorer: Scorer,
    engaged: Collection[int],
    reserved: Collection[int]
) -> InterPlan:
    """
    Aggregate junction transfers of every class, ions of pending two qubit gates join when cost strictly decreases.

    Parameters
    ----------
    graph : Position graph in current state.
    scorer : Scorer of window.
    engaged : Qubits of in-flight operations.
    reserved : Positions of in-flight operations.

    Returns
    -------
    All 18 candidates in class order, best class and its mapping.
    """

    # Parameter.
    base = scorer.score()
    routed = {
        qubit
        for term in scorer.terms
        if term.is_2q
        for qubit in term.qubits
    }
    candidates: list[JTCandidate] = []

    # Classes.
    for jt_class in enumerate_jt_classes():
        locked: set[int] = set()
        junctions: list[int] = []
        moves: dict[int, int] = {}
        delta = 0.0
        for junction in graph.junctions:
            src = junction.leg_positions[jt_class.from_leg]
            dst = junction.leg_positions[jt_class.to_leg]
            if src in locked or dst in locked or src in reserved or dst in reserved:
                continue

            ## Source ion.
            qubit = graph.occupant(src)
            if qubit is None or qubit in engaged or qubit not in routed:
                continue

            ## Destination.
            partner = graph.occupant(dst)
            if jt_class.kind == JTKind.SHIFT:
                if partner is not None:
                    continue
                junction_moves = {qubit: dst}
            else:
                if partner is None or partner in engaged:
                    continue
                junction_moves = {qubit: dst, partner: src}

            ## Accept.
            new_moves = {**moves, **junction_moves}
            new_delta = scorer.gain(new_moves)
            if new_delta > delta + EPSILON:
                moves = new_moves
                delta = new_delta
                junctions.append(junction.id)
                locked.update((src, dst))

        candidate = JTCandidate(jt_class, tuple(junctions), delta, base - delta, moves)
        candidates.append(candidate)

    # Best.
    best = None
    for candidate in candidates:
        if len(candidate.junctions) == 0:
            continue
        if best is None or candidate.cost_after < best.cost_after - EPSILON:
            best = candidate
    mapping = graph.mapping.copy()
    if best is not None:
        apply_to_mapping(best.instruction, graph, mapping)
    plan = InterPlan(candidates, best, mapping)

    return plan


def _step(graph: PositionGraph, mapping: QubitMapping, src: int, dst: int) -> Instruction:
    """
    Build scalar instruction moving occupant of source one edge to destination, exchange when occupied.

    Parameters
    ----------
    graph : Position graph.
    mapping : Hypothetical mapping.
    src : Source position ID.
    dst : Destination position ID.

    Returns
    -------
    Instruction.
    """

    # Parameter.
    occupied = dst in mapping.pos_qubit

    # In trap.
    trap = graph.trap_of(src)
    if trap == graph.trap_of(dst):
        index_src = graph.index_of(src)
        index_dst = graph.index_of(dst)
        if occupied:
            return IntraSwap(trap, min(index_src, index_dst))
        return IntraShift(trap, index_src, index_dst)

    # Junction.
    src_legs = dict(graph.end_legs[src])
    for junction_id, dst_leg in graph.end_legs[dst]:
        if junction_id in src_legs:
            src_leg = src_legs[junction_id]
            break
    if occupied:
        leg_a, leg_b = sorted((src_leg, dst_leg), key=LEG_ORDER.index)
        jt_class = JTClass(JTKind.SWAP, leg_a, leg_b)
    else:
        jt_class = JTClass(JTKind.SHIFT, src_leg, dst_leg)

    return JTSIMD(jt_class, (junction_id,))


def _walk(
    graph: PositionGraph,
    mapping: QubitMapping,
    path: list[int],
    plan: list[Instruction]
) -> None:
    """
    Walk occupant of path start along path, append steps and update mapping.

    Parameters
    ----------
    graph : Position graph.
    mapping : Hypothetical mapping to update.
    path : Position path.
    plan : Plan to append.
    """

    # Walk.
    for src, dst in zip(path, path[1:]):
        instr = _step(graph, mapping, src, dst)
        apply_to_mapping(instr, graph, mapping)
        plan.append(instr)


def _path_to_any(
    graph: PositionGraph,
    src: int,
    targets: Collection[int],
    avoid: int
) -> list[int] | None:
    """
    Get shortest union graph path to nearest target, avoiding one position, ties by lowest target.

    Parameters
    ----------
    graph : Position graph.
    src : Source position ID.
    targets : Target position IDs.
    avoid : Position to avoid.

    Returns
    -------
    Path or `None`.
    """

    # Search.
    view = restricted_view(graph.union, [avoid], [])
    paths = single_source_shortest_path(view, src)
    reachable = [
        target
        for target in targets
        if target in paths
    ]
    if len(reachable) == 0:
        return
    target = min(reachable, key=lambda target: (len(paths[target]), target))

    return paths[target]


def _trap_neighbors(graph: PositionGraph, pos: int) -> list[int]:
    """
    Get in-trap neighbor positions.

    Parameters
    ----------
    graph : Position graph.
    pos : Position ID.

    Returns
    -------
    Position IDs.
    """

    # Get.
    index = graph.index_of(pos)
    trap = graph.trap_of(pos)
    neighbors = [
        graph.position_id(trap, neighbor_index)
        for neighbor_index in (index - 1, index + 1)
        if 0 <= neighbor_index < graph.capacity
    ]

    return neighbors


def route_forced(
    gate: int,
    dag: DependencyDAG,
    graph: PositionGraph,
    assignment: ZoneAssignment
) -> list[Instruction]:
    """
    Build serial scalar plan routing one blocked gate to executable placement.

    Parameters
    ----------
    gate : Gate index.
    dag : Dependency DAG.
    graph : Position graph in current state.
    assignment : Zone assignment, give target zone.

    Returns
    -------
    Instructions in execution order, empty when no route.
    """

    # Parameter.
    op = dag.circuit.ops[gate]
    mapping = graph.mapping.copy()
    plan: list[Instruction] = []

    # Single qubit.
    if not op.is_2q:
        pos = mapping.qubit_pos[op.qubits[0]]
        if graph.is_gate_zone(pos):
            return plan
        target = assignment.targets.get(gate)
        if target is None:
            target = min(graph.gate_zones, key=lambda zone: (graph.distances_from(pos)[zone], zone))
        try:
            path = shortest_path(graph.union, pos, target)
        except NetworkXNoPath:
            return plan
        _walk(graph, mapping, path, plan)
        return plan

    # Two qubit pairing.
    qubit_a, qubit_b = op.qubits
    for _ in range(graph.capacity + 1):
        pos_a = mapping.qubit_pos[qubit_a]
        pos_b = mapping.qubit_pos[qubit_b]
        if pos_b in _trap_neighbors(graph, pos_a):
            break
        path = _path_to_any(graph, pos_b, _trap_neighbors(graph, pos_a), pos_a)
        if path is None:
            path = _path_to_any(graph, pos_a, _trap_neighbors(graph, pos_b), pos_b)
        if path is None:

            ## Inward, frees trap end of partner path.
            index = graph.index_of(pos_a)
            if graph.capacity < 2 or 0 < index < graph.capacity - 1:
                return []
            path = [pos_a, pos_a + 1 if index == 0 else pos_a - 1]
        _walk(graph, mapping, path, plan)
    else:
        return []
    pos_a = mapping.qubit_pos[qubit_a]
    pos_b = mapping.qubit_pos[qubit_b]

    # Two qubit walk to zone.
    trap = graph.trap_of(pos_a)
    zones = [
        zone
        for zone in graph.gate_zones
        if graph.trap_of(zone) == trap
    ]
    if graph.is_gate_zone(pos_a) or graph.is_gate_zone(pos_b) or len(zones) == 0:
        return plan
    low, high = sorted((pos_a, pos_b))
    zone = min(zones, key=lambda zone: (min(abs(zone - low), abs(zone - high)), zone))
    step = 1 if zone > high else -1
    while True:
        lead, trail = (high, low) if step == 1 else (low, high)
        if graph.is_gate_zone(lead) or graph.is_gate_zone(trail):
            break
        for pos in (lead, trail):
            instr = _step(graph, mapping, pos, pos + step)
            apply_to_mapping(instr, graph, mapping)
            plan.append(instr)
        low, high = low + step, high + step

    return plan
