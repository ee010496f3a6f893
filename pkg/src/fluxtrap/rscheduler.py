# !/usr/bin/env python
# -*- coding: utf-8 -*-

"""
@Time    : 2025-03-09
@Author  : Rey
@Contact : reyxbo@163.com
@Explain : Scheduler methods, simulation based compile loop and independent schedule validation.
"""


from typing import Any, Literal, TYPE_CHECKING
from collections.abc import Callable, Collection, Mapping
from dataclasses import dataclass, fields
from enum import StrEnum

from .raggregation import aggregate_s3, aggregate_jt, route_forced
from .rarch import PositionGraph, QubitMapping, build_grid
from .rbase import Base, InputError, DeadlockError, throw
from .rcircuit import Circuit, build_dag
from .rdata import to_json, from_json
from .rheuristic import EPSILON, HeuristicConfig, ZoneAssignment, select_window, assign_window, build_scorer
from .risa import (
    KIND_CATEGORY,
    Direction,
    Gate1Q,
    Gate2Q,
    Measure,
    IntraShift,
    IntraSwap,
    S3,
    JTSIMD,
    Instruction,
    Violation,
    get_jt_class,
    gate2q_form,
    instruction_kind,
    instruction_latency,
    instruction_positions,
    instruction_qubits,
    validate,
    apply_to_mapping
)
from .rlog import get_log
from .rrand import RandomSeed, randsort

if TYPE_CHECKING:
    from .rmetrics import Metrics


__all__ = (
    'Policy',
    'SchedulerConfig',
    'Event',
    'Schedule',
    'ActiveOp',
    'ActiveOps',
    'Scheduler',
    'compile',
    'initial_mapping',
    'validate_schedule',
    'schedule_to_json',
    'schedule_from_json',
    'render_gantt'
)


class Policy(StrEnum):
    """
    Scheduling policy.
    """

    FLUXTRAP = 'fluxtrap'
    EAGER_JT = 'eager-jt'
    DEPTH_SYNC = 'depth-sync'


class SchedulerConfig(Base):
    """
    Scheduler config type.
    """


    def __init__(
        self,
        heuristic: HeuristicConfig | None = None,
        inter_gain_factor: float = 2.0,
        max_cycles: int = 100000
    ) -> None:
        """
        Build instance attributes.

        Parameters
        ----------
        heuristic : Heuristic config.
            - `None`: Use defaults.
        inter_gain_factor : Inter trap gain must exceed this multiple of intra trap gain.
        max_cycles : Cycle cap before deadlock abort.
        """

        # Check.
        if inter_gain_factor < 0:
            throw(InputError, inter_gain_factor)
        if type(max_cycles) != int or max_cycles < 1:
            throw(InputError, max_cycles)

        # Set attribute.
        self.heuristic = heuristic or HeuristicConfig()
        self.inter_gain_factor = float(inter_gain_factor)
        self.max_cycles = max_cycles


    def to_dict(self) -> dict[str, Any]:
        """
        Convert to dictionary.

        Returns
        -------
        Dictionary.
        """

        return {
            'heuristic': self.heuristic.to_dict(),
            'inter_gain_factor': self.inter_gain_factor,
            'max_cycles': self.max_cycles
        }


    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> 'SchedulerConfig':
        """
        Build from dictionary, heuristic keys may be nested under `heuristic` or flat.

        Parameters
        ----------
        data : Dictionary.

        Returns
        -------
        Instance.
        """

        # Check.
        if not isinstance(data, Mapping):
            throw(InputError, text='scheduler config must be an object')
        keys = {'heuristic', 'inter_gain_factor', 'max_cycles'}
        heuristic_data = {
            key: value
            for key, value in data.items()
            if key in HeuristicConfig.keys
        }
        unknown = set(data) - keys - set(heuristic_data)
        if unknown:
            throw(InputError, text='unknown scheduler keys %s' % sorted(unknown))

        # Build.
        heuristic_data.update(data.get('heuristic', {}))
        config = cls(
            HeuristicConfig.from_dict(heuristic_data),
            data.get('inter_gain_factor', 2.0),
            data.get('max_cycles', 100000)
        )

        return config


@dataclass
class Event(Base):
    """
    Schedule event, one started instruction.
    """

    t: int
    dur: int
    kind: str
    qubits: list[int]
    positions: list[int]
    name: str | None = None
    param: float | None = None
    gate: int | None = None
    form: str | None = None
    trap: int | None = None
    indices: list[int] | None = None
    direction: str | None = None
    jt_class: str | None = None
    junctions: list[int] | None = None


    @property
    def end(self) -> int:
        """
        End time.

        Returns
        -------
        Time microseconds.
        """

        return self.t + self.dur


    @property
    def category(self) -> Literal['gate', 'intra', 'inter']:
        """
        Busy time category.

        Returns
        -------
        Category.
        """

        return KIND_CATEGORY[self.kind]


    def to_dict(self) -> dict[str, Any]:
        """
        Convert to dictionary, stable field order and `None` fields omitted.

        Returns
        -------
        Dictionary.
        """

        # Convert.
        data = {}
        for field_ in fields(self):
            value = getattr(self, field_.name)
            if value is not None:
                data[field_.name] = value

        return data


    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> 'Event':
        """
        Build from dictionary.

        Parameters
        ----------
        data : Dictionary.

        Returns
        -------
        Instance.
        """

        # Check.
        names = {field_.name for field_ in fields(cls)}
        if not isinstance(data, Mapping) or set(data) - names:
            throw(InputError, data, text='invalid schedule event')
        for key in ('t', 'dur', 'kind', 'qubits', 'positions'):
            if key not in data:
                throw(InputError, text='schedule event missing key "%s"' % key)
        if data['kind'] not in KIND_CATEGORY:
            throw(InputError, data['kind'], text='unknown event kind')

        # Build.
        event = cls(**data)

        return event


    def to_instruction(self) -> Instruction:
        """
        Rebuild instruction of event.

        Returns
        -------
        Instruction.
        """

        # Build.
        match self.kind:
            case 'gate1q':
                return Gate1Q(self.qubits[0], self.name, self.gate, self.param)
            case 'gate2q':
                return Gate2Q(self.qubits[0], self.qubits[1], self.name, self.gate, self.param)
            case 'measure':
                return Measure(self.qubits[0], self.gate)
            case 'intra_shift':
                return IntraShift(self.trap, self.indices[0], self.indices[1])
            case 'intra_swap':
                return IntraSwap(self.trap, min(self.indices))
            case 's3':
                return S3(self.trap, Direction(self.direction), tuple(self.indices))
            case 'jt_simd':
                return JTSIMD(get_jt_class(self.jt_class), tuple(self.junctions))


class Schedule(Base):
    """
    Schedule type, events in start order.
    """


    def __init__(self, events: list[Event] | None = None, total_time_us: int | None = None) -> None:
        """
        Build instance attributes.

        Parameters
        ----------
        events : Events.
        total_time_us : Total time microseconds.
            - `None`: Latest event end.
        """

        # Set attribute.
        self.events = events or []
        if total_time_us is None:
            total_time_us = max((event.end for event in self.events), default=0)
        self.total_time_us = total_time_us


    def to_dict(self) -> dict[str, Any]:
        """
        Convert to dictionary.

        Returns
        -------
        Dictionary.
        """

        return {
            'total_time_us': self.total_time_us,
            'events': [event.to_dict() for event in self.events]
        }


    def to_json(self, compact: bool = True) -> str:
        """
        Convert to JSON text.

        Parameters
        ----------
        compact : Whether compact content.

        Returns
        -------
        JSON text.
        """

        return to_json(self.to_dict(), compact)


    @classmethod
    def from_json(cls, text: str) -> 'Schedule':
        """
        Build from JSON text.

        Parameters
        ----------
        text : JSON text.

        Returns
        -------
        Instance.
        """

        # Load.
        data = from_json(text)
        if not isinstance(data, Mapping) or set(data) != {'total_time_us', 'events'}:
            throw(InputError, text='schedule JSON must be an object with keys "total_time_us" and "events"')

        # Build.
        events = [Event.from_dict(event) for event in data['events']]
        schedule = cls(events, data['total_time_us'])

        return schedule


    def __len__(self) -> int:
        """
        Event count.

        Returns
        -------
        Count.
        """

        return len(self.events)


def schedule_to_json(schedule: Schedule, compact: bool = False) -> str:
    """
    Convert schedule to JSON text.

    Parameters
    ----------
    schedule : Schedule.
    compact : Whether compact content.

    Returns
    -------
    JSON text.
    """

    return schedule.to_json(compact)


def schedule_from_json(text: str) -> Schedule:
    """
    Load schedule from JSON text.

    Parameters
    ----------
    text : JSON text.

    Returns
    -------
    Schedule.
    """

    return Schedule.from_json(text)


@dataclass(frozen=True)
class ActiveOp(Base):
    """
    In-flight instruction.
    """

    instruction: Instruction
    event: Event
    qubits: frozenset[int]
    positions: frozenset[int]


    @property
    def end(self) -> int:
        """
        End time.

        Returns
        -------
        Time microseconds.
        """

        return self.event.end


    @property
    def category(self) -> Literal['gate', 'intra', 'inter']:
        """
        Busy time category.

        Returns
        -------
        Category.
        """

        return self.event.category


class ActiveOps(Base):
    """
    In-flight instruction table, derive engaged qubits and reserved positions.
    """


    def __init__(self) -> None:
        """
        Build instance attributes.
        """

        # Set attribute.
        self.ops: list[ActiveOp] = []
        self.engaged: set[int] = set()
        self.reserved: set[int] = set()


    def add(self, op: ActiveOp) -> None:
        """
        Add operation.

        Parameters
        ----------
        op : Operation.
        """

        # Add.
        self.ops.append(op)
        self.engaged |= op.qubits
        self.reserved |= op.positions


    def pop_until(self, t: int) -> list[ActiveOp]:
        """
        Remove operations ending at or before time.

        Parameters
        ----------
        t : Time microseconds.

        Returns
        -------
        Removed operations in start order.
        """

        # Split.
        done = [op for op in self.ops if op.end <= t]
        self.ops = [op for op in self.ops if op.end > t]

        # Derive.
        self.engaged = set().union(*(op.qubits for op in self.ops))
        self.reserved = set().union(*(op.positions for op in self.ops))

        return done


    def has(self, category: Literal['gate', 'intra', 'inter']) -> bool:
        """
        Whether any operation of category in flight.

        Parameters
        ----------
        category : Busy time category.

        Returns
        -------
        Result.
        """

        return any(op.category == category for op in self.ops)


    def min_end(self, category: Literal['gate', 'intra', 'inter'] | None = None) -> int:
        """
        Shortest remaining end time.

        Parameters
        ----------
        category : Only this category.
            - `None`: All operations.

        Returns
        -------
        Time microseconds.
        """

        return min(op.end for op in self.ops if category is None or op.category == category)


    def max_end(self) -> int:
        """
        Longest remaining end time.

        Returns
        -------
        Time microseconds.
        """

        return max(op.end for op in self.ops)


    def __len__(self) -> int:
        """
        Operation count.

        Returns
        -------
        Count.
        """

        return len(self.ops)


class Scheduler(Base):
    """
    Scheduler type, run compile loop of one circuit.

    Examples
    --------
    >>> scheduler = Scheduler(circuit, graph, Policy.FLUXTRAP)
    >>> schedule = scheduler.run()
    """


    def __init__(
        self,
        circuit: Circuit,
        graph: PositionGraph,
        policy: Policy | str = Policy.FLUXTRAP,
        config: SchedulerConfig | None = None,
        dump: Callable[[dict], Any] | None = None
    ) -> None:
        """
        Build instance attributes.

        Parameters
        ----------
        circuit : Circuit.
        graph : Position graph with initial mapping, copied.
        policy : Scheduling policy.
        config : Scheduler config.
            - `None`: Use defaults.
        dump : Receive per cycle candidate records.
        """

        # Check.
        policy = Policy(policy)
        qubit_pos = graph.mapping.qubit_pos
        missing = [
            qubit
            for qubit in range(circuit.n_qubits)
            if qubit not in qubit_pos
        ]
        if missing:
            throw(InputError, missing, text='initial mapping misses qubits')
        if circuit.count('2q') and graph.capacity < 2:
            throw(InputError, graph.capacity, text='two qubit gates need trap capacity of at least 2')

        # Set attribute.
        self.circuit = circuit
        self.graph = graph.copy()
        self.policy = policy
        self.config = config or SchedulerConfig()
        self.dump = dump
        self.table = graph.spec.get_op_table()
        self.dag = build_dag(circuit)
        self.assignment = ZoneAssignment()
        self.active = ActiveOps()
        self.events: list[Event] = []
        self.started: set[int] = set()
        self.forced: list[Instruction] = []
        self.pinned: dict[int, frozenset[int]] = {}
        self.t = 0
        self.cycle = 0
        self.idle_cycles = 0
        self.best_cost: float | None = None
        self.window_key: tuple[int, ...] = ()
        self.log = get_log()


    def state(self) -> dict[str, Any]:
        """
        Get diagnostic state dump.

        Returns
        -------
        State dictionary.
        """

        return {
            't': self.t,
            'cycle': self.cycle,
            'front': self.dag.front(),
            'started': sorted(self.started),
            'mapping': self.graph.mapping.to_dict(),
            'active': [op.event.to_dict() for op in self.active.ops],
            'forced': [str(instr) for instr in self.forced],
            'pinned': sorted(set().union(*self.pinned.values()))
        }


    def start(self, instr: Instruction, gate: int | None = None) -> Event:
        """
        Start instruction at current time, occupancy changes at start and positions stay reserved until end.

        Parameters
        ----------
        instr : Instruction.
        gate : Circuit gate index.

        Returns
        -------
        Event.
        """

        # Parameter.
        graph = self.graph
        kind = instruction_kind(instr)
        dur = instruction_latency(instr, self.table, graph)
        qubits = instruction_qubits(instr, graph)
        positions = instruction_positions(instr, graph)
        event = Event(self.t, dur, kind, list(qubits), list(positions))

        # Detail.
        match instr:
            case Gate1Q(name=name, param=param):
                event.name = name
                event.param = param
                event.gate = gate
            case Gate2Q(q1=q1, q2=q2, name=name, param=param):
                event.name = name
                event.param = param
                event.gate = gate
                event.form = gate2q_form(graph, q1, q2)
            case Measure():
                event.name = 'measure'
                event.gate = gate
            case IntraShift(trap=trap, src=src, dst=dst):
                event.trap = trap
                event.indices = [src, dst]
            case IntraSwap(trap=trap, i=i):
                event.trap = trap
                event.indices = [i, i + 1]
            case S3(trap=trap, direction=direction, indices=indices):
                event.trap = trap
                event.direction = direction.value
                event.indices = list(indices)
            case JTSIMD(jt_class=jt_class, junctions=junctions):
                event.jt_class = jt_class.name
                event.junctions = list(junctions)

        # Start.
        apply_to_mapping(instr, graph)
        self.active.add(ActiveOp(instr, event, frozenset(qubits), frozenset(positions)))
        self.events.append(event)

        return event


    def start_gates(self, exclude: Collection[int] = ()) -> int:
        """
        Start executable front layer gates in program order.

        Parameters
        ----------
        exclude : Qubits not to use.

        Returns
        -------
        Started count.
        """

        # Parameter.
        graph = self.graph
        qubit_pos = graph.mapping.qubit_pos
        count = 0

        # Start.
        for gate in self.dag.front():
            if gate in self.started:
                continue
            op = self.circuit.ops[gate]
            if any(
                qubit in self.active.engaged
                or qubit in exclude
                or qubit_pos[qubit] in self.active.reserved
                for qubit in op.qubits
            ):
                continue
            if op.is_2q:
                if gate2q_form(graph, *op.qubits) is None:
                    continue
                instr = Gate2Q(op.qubits[0], op.qubits[1], op.kind, gate, op.param)
            else:
                if not graph.is_gate_zone(qubit_pos[op.qubits[0]]):
                    continue
                if op.is_measure:
                    instr = Measure(op.qubits[0], gate)
                else:
                    instr = Gate1Q(op.qubits[0], op.kind, gate, op.param)
            self.start(instr, gate)
            self.started.add(gate)
            self.assignment.release(gate)
            self.pinned.pop(gate, None)
            count += 1

        ## Progress.
        if count:
            self.idle_cycles = 0

        return count


    def complete_until(self, t: int) -> None:
        """
        Advance time and complete operations ending at or before it.

        Parameters
        ----------
        t : Time microseconds.
        """

        # Complete.
        self.t = t
        for op in self.active.pop_until(t):
            gate = op.event.gate
            if gate is not None:
                self.dag.complete_gate(gate)


    def advance(self) -> None:
        """
        Advance to next completion, shortest remaining time, or all completions under depth synchronized policy.
        """

        # Advance.
        if self.policy == Policy.DEPTH_SYNC:
            self.complete_until(self.active.max_end())
        else:
            self.complete_until(self.active.min_end())


    def run_inter(self, instr: JTSIMD, participants: Collection[int]) -> None:
        """
        Drain intra trap transports, then run junction transfer to completion.

        Parameters
        ----------
        instr : Junction transfer.
        participants : Moving qubits.
        """

        # Drain.
        if self.policy == Policy.DEPTH_SYNC:
            if len(self.active):
                self.complete_until(self.active.max_end())
        else:
            while self.active.has('intra'):
                self.complete_until(self.active.min_end())
                self.start_gates(participants)

        # Check.
        violations = validate(instr, self.graph)
        if violations:
            self.log.warning('junction transfer %s dropped after drain: %s' % (instr, violations))
            return

        # Run.
        event = self.start(instr)
        if self.policy == Policy.DEPTH_SYNC:
            self.complete_until(self.active.max_end())
        else:
            while self.t < event.end:
                self.complete_until(self.active.min_end())
                self.start_gates(participants)


    def step_forced(self) -> None:
        """
        Start next forced routing step when possible, otherwise advance.
        """

        # Parameter.
        instr = self.forced[0]
        graph = self.graph
        qubits = instruction_qubits(instr, graph)
        positions = instruction_positions(instr, graph)

        # Start.
        if (
            not self.active.has('intra')
            and not self.active.has('inter')
            and not set(qubits) & self.active.engaged
            and not set(positions) & self.active.reserved
        ):
            if validate(instr, graph):
                self.log.warning('forced routing step %s no longer legal, plan dropped' % (instr,))
                self.forced.clear()
                self.pinned.clear()
                return
            self.start(instr)
            self.forced.pop(0)

        # Advance.
        if len(self.active):
            self.advance()


    def force(self, pending: list[int], stalled: bool) -> None:
        """
        Build forced routing plan of oldest pending gate that needs transport.
        Gate qubits stay pinned against aggregation until the gate starts.

        Parameters
        ----------
        pending : Front layer gates not started.
        stalled : Whether nothing is in flight, then missing route is a deadlock.
        """

        # Parameter.
        self.idle_cycles = 0
        self.pinned.clear()
        gates = self.assignment.by_age(pending)

        # Build.
        for gate in gates:
            plan = route_forced(gate, self.dag, self.graph, self.assignment)
            if plan:
                self.log.warning('forced routing of gate %s with %s steps at t=%s' % (gate, len(plan), self.t))
                self.forced = plan
                self.pinned[gate] = frozenset(self.circuit.ops[gate].qubits)
                return

        # Throw exception.
        if stalled:
            raise DeadlockError('no route for blocked gates %s' % gates, self.state())


    def run(self) -> Schedule:
        """
        Run compile loop.

        Returns
        -------
        Schedule.
        """

        # Parameter.
        config = self.config
        heuristic = config.heuristic
        graph = self.graph

        # Loop.
        while True:
            self.cycle += 1
            if self.cycle > config.max_cycles:
                raise DeadlockError('cycle cap %s reached' % config.max_cycles, self.state())

            ## Start gates.
            self.start_gates()
            if self.dag.done and len(self.active) == 0:
                break

            ## Forced routing.
            pending = [
                gate
                for gate in self.dag.front()
                if gate not in self.started
            ]
            if not self.forced and pending and self.idle_cycles > heuristic.congestion_patience:
                if self.active.has('intra') or self.active.has('inter'):
                    self.advance()
                    continue
                self.force(pending, False)
            if self.forced:
                self.step_forced()
                continue

            ## Score.
            self.assignment.tick(pending)
            window = select_window(self.dag, self.started, self.assignment, heuristic)
            assign_window(window, self.dag, graph, self.assignment, heuristic)
            scorer = build_scorer(window, self.dag, graph, self.active.engaged, self.assignment, heuristic)
            cost = scorer.score()
            fixed = self.active.engaged.union(*self.pinned.values())
            intra = aggregate_s3(graph, scorer, fixed, self.active.reserved)
            inter = aggregate_jt(graph, scorer, fixed, self.active.reserved)
            intra_gain = intra.delta if intra.candidates else 0.0
            inter_gain = inter.best.delta if inter.best is not None else 0.0

            ## Decide.
            if inter.best is None:
                use_inter = False
            elif self.policy == Policy.EAGER_JT:
                use_inter = inter_gain > intra_gain + EPSILON
            else:
                use_inter = inter_gain > config.inter_gain_factor * intra.weighted + EPSILON
            if use_inter:
                decision = 'inter'
            elif intra.candidates:
                decision = 'intra'
            elif len(self.active):
                decision = 'wait'
            else:
                decision = 'stall'

            ## Idle, no new lowest cost of this window.
            window_key = tuple(gate for gate, _ in window)
            if window_key != self.window_key:
                self.window_key = window_key
                self.best_cost = None
            match decision:
                case 'inter':
                    after = cost - inter_gain
                case 'intra':
                    after = cost - intra_gain
                case _:
                    after = None
            if after is not None and (self.best_cost is None or after < self.best_cost - EPSILON):
                self.best_cost = after
            else:
                self.idle_cycles += 1
            self.log.debug(
                'cycle %s t=%s active=%s cost=%.4f intra=%.4f inter=%.4f decision=%s'
                % (self.cycle, self.t, len(self.active), cost, intra_gain, inter_gain, decision)
            )
            if self.dump is not None:
                self.dump({
                    'cycle': self.cycle,
                    't': self.t,
                    'cost': cost,
                    'decision': decision,
                    'intra': [candidate.to_dict() for candidate in intra.candidates],
                    'branches': intra.stats.branches,
                    'contended': intra.stats.contended,
                    'intra_weighted': intra.weighted,
                    'inter': [candidate.to_dict() for candidate in inter.candidates]
                })

            ## Act.
            match decision:
                case 'inter':
                    self.run_inter(inter.best.instruction, set(inter.best.moves))
                case 'intra':
                    for instr in intra.instructions:
                        self.start(instr)
                    self.advance()
                case 'wait':
                    self.advance()
                case 'stall':
                    self.force(pending, True)

        # Build.
        schedule = Schedule(self.events, self.t)
        self.log.info(
            'compiled %s gates in %s events, total %s us, %s cycles'
            % (len(self.circuit), len(self.events), schedule.total_time_us, self.cycle)
        )

        return schedule


def initial_mapping(
    circuit: Circuit,
    graph: PositionGraph,
    strategy: Literal['packed', 'random'] = 'packed',
    seed: int = 0
) -> QubitMapping:
    """
    Build initial mapping, trap interiors first and trap ends last.

    Parameters
    ----------
    circuit : Circuit.
    graph : Position graph.
    strategy : Placement strategy.
        - `Literal['packed']`: Fill slots trap by trap in index order.
        - `Literal['random']`: Seeded shuffle of slots.
    seed : Random seed.

    Returns
    -------
    Mapping.
    """

    # Parameter.
    capacity = graph.capacity
    n = circuit.n_qubits
    if n > len(graph.positions):
        throw(InputError, n, len(graph.positions), text='more qubits than positions')

    # Slots.
    interior = [
        graph.position_id(trap.id, index)
        for trap in graph.traps
        for index in range(1, capacity - 1)
    ]
    ends = [
        graph.position_id(trap.id, index)
        for trap in graph.traps
        for index in sorted({0, capacity - 1})
    ]
    slots = interior + ends

    # Place.
    match strategy:
        case 'packed':
            pass
        case 'random':
            with RandomSeed(seed):
                slots = randsort(slots)
        case _:
            throw(InputError, strategy, text='unknown mapping strategy')
    mapping = QubitMapping({qubit: slots[qubit] for qubit in range(n)})

    return mapping


def compile(
    circuit: Circuit,
    graph: PositionGraph,
    policy: Policy | str = Policy.FLUXTRAP,
    config: SchedulerConfig | None = None,
    mapping: QubitMapping | None = None,
    seed: int = 0,
    dump: Callable[[dict], Any] | None = None
) -> tuple[Schedule, 'Metrics']:
    """
    Compile circuit to timed schedule.

    Parameters
    ----------
    circuit : Circuit.
    graph : Position graph.
    policy : Scheduling policy.
    config : Scheduler config.
    mapping : Initial mapping.
        - `None`: Graph mapping when not empty, otherwise packed mapping.
    seed : Random seed of mapping strategy.
    dump : Receive per cycle candidate records.

    Returns
    -------
    Schedule and metrics.
    """

    # Import.
    from .rmetrics import compute_metrics

    # Mapping.
    if mapping is None:
        mapping = graph.mapping if len(graph.mapping) else initial_mapping(circuit, graph, 'packed', seed)
    graph = graph.copy(mapping.copy())

    # Compile.
    scheduler = Scheduler(circuit, graph, policy, config, dump)
    schedule = scheduler.run()
    metrics = compute_metrics(schedule, circuit.n_qubits, graph.spec)

    return schedule, metrics


def _overlaps(intervals: dict[Any, list[tuple[int, int, int]]], label: str, violations: list[Violation]) -> None:
    """
    Append violations of overlapping half open intervals per key.

    Parameters
    ----------
    intervals : Key to start, end and event index.
    label : Resource label.
    violations : Violation list to append.
    """

    # Check.
    for key, items in intervals.items():
        items = sorted(items)
        for (_, end_a, index_a), (start_b, _, index_b) in zip(items, items[1:]):
            if start_b < end_a:
                violations.append(
                    Violation(
                        '%s overlap' % label,
                        '%s %s used by events %s and %s' % (label, key, index_a, index_b),
                        start_b
                    )
                )


def validate_schedule(
    schedule: Schedule,
    graph: PositionGraph,
    circuit: Circuit,
    mapping: QubitMapping | None = None
) -> list[Violation]:
    """
    Replay schedule as independent oracle.

    Parameters
    ----------
    schedule : Schedule.
    graph : Position graph, give structure and operation table.
    circuit : Circuit.
    mapping : Initial mapping.
        - `None`: Use graph mapping.

    Returns
    -------
    Violations, empty when legal.
    """

    # Parameter.
    if mapping is None:
        mapping = graph.mapping
    state = build_grid(graph.spec, mapping.copy())
    table = graph.spec.get_op_table()
    violations: list[Violation] = []
    order = sorted(range(len(schedule.events)), key=lambda index: schedule.events[index].t)
    position_use: dict[int, list[tuple[int, int, int]]] = {}
    qubit_use: dict[int, list[tuple[int, int, int]]] = {}
    gate_times: dict[int, list[tuple[int, int]]] = {}

    # Replay.
    for index in order:
        event = schedule.events[index]
        if event.t < 0 or event.dur <= 0:
            violations.append(Violation('invalid time', 'event %s at %s lasts %s' % (index, event.t, event.dur), event.t))
            continue
        try:
            instr = event.to_instruction()
        except (InputError, TypeError, IndexError, ValueError):
            violations.append(Violation('invalid event', 'event %s cannot be rebuilt' % index, event.t))
            continue

        ## Legality.
        found = validate(instr, state)
        for violation in found:
            violations.append(Violation(violation.rule, 'event %s: %s' % (index, violation.text), event.t))
        if found:
            continue
        latency = instruction_latency(instr, table, state)
        if latency != event.dur:
            violations.append(
                Violation('latency mismatch', 'event %s lasts %s, expected %s' % (index, event.dur, latency), event.t)
            )

        ## Resources.
        end = event.t + event.dur
        for pos in instruction_positions(instr, state):
            position_use.setdefault(pos, []).append((event.t, end, index))
        for qubit in instruction_qubits(instr, state):
            qubit_use.setdefault(qubit, []).append((event.t, end, index))

        ## Gate.
        if event.category == 'gate':
            gate = event.gate
            if gate is None or not 0 <= gate < len(circuit.ops):
                violations.append(Violation('gate mismatch', 'event %s has no circuit gate' % index, event.t))
            else:
                op = circuit.ops[gate]
                name = 'measure' if op.is_measure else op.kind
                if name != event.name or tuple(event.qubits) != op.qubits:
                    violations.append(Violation('gate mismatch', 'event %s does not match gate %s' % (index, gate), event.t))
                gate_times.setdefault(gate, []).append((event.t, end))
        apply_to_mapping(instr, state)

    # Overlap.
    _overlaps(position_use, 'position', violations)
    _overlaps(qubit_use, 'qubit', violations)

    # Mode.
    intra = [event for event in schedule.events if event.category == 'intra']
    inter = [event for event in schedule.events if event.category == 'inter']
    for event_jt in inter:
        for event in intra:
            if event.t < event_jt.end and event_jt.t < event.end:
                violations.append(
                    Violation('mode exclusivity', 'intra transport at %s overlaps junction transfer at %s' % (event.t, event_jt.t), event.t)
                )
    for i, event_a in enumerate(inter):
        for event_b in inter[i + 1:]:
            if event_a.t < event_b.end and event_b.t < event_a.end:
                violations.append(
                    Violation('multiple jt', 'junction transfers at %s and %s overlap' % (event_a.t, event_b.t), event_b.t)
                )

    # Coverage.
    for gate in range(len(circuit.ops)):
        count = len(gate_times.get(gate, ()))
        if count != 1:
            violations.append(Violation('gate coverage', 'gate %s executed %s times' % (gate, count)))

    ## Dependency.
    dag = build_dag(circuit)
    for gate, times in gate_times.items():
        if len(times) != 1:
            continue
        start = times[0][0]
        for predecessor in dag.predecessors(gate):
            predecessor_times = gate_times.get(predecessor)
            if predecessor_times and predecessor_times[0][1] > start:
                violations.append(
                    Violation('dependency order', 'gate %s starts before gate %s ends' % (gate, predecessor), start)
                )

    # Total.
    total = max((event.end for event in schedule.events), default=0)
    if total != schedule.total_time_us:
        violations.append(Violation('total time', 'total %s, expected %s' % (schedule.total_time_us, total)))

    return violations


def render_gantt(schedule: Schedule, graph: PositionGraph, width: int = 80) -> str:
    """
    Render schedule as text chart, one row per trap and per junction.

    Parameters
    ----------
    schedule : Schedule.
    graph : Position graph, give structure.
    width : Time axis characters.

    Returns
    -------
    Chart text.
    """

    # Parameter.
    total = max(schedule.total_time_us, 1)
    scale = width / total
    marks = {
        'gate1q': 'g',
        'gate2q': 'G',
        'measure': 'M',
        'intra_shift': 's',
        'intra_swap': 'x',
        's3': 'S',
        'jt_simd': 'J'
    }
    rows = {('T', trap.id): [' '] * width for trap in graph.traps}
    rows.update({('J', junction.id): [' '] * width for junction in graph.junctions})

    # Paint.
    for event in schedule.events:
        start = min(int(event.t * scale), width - 1)
        end = max(start + 1, min(int(event.end * scale), width))
        keys = {('T', graph.trap_of(pos)) for pos in event.positions}
        if event.junctions:
            keys |= {('J', junction) for junction in event.junctions}
        for key in keys:
            row = rows[key]
            for column in range(start, end):
                row[column] = marks[event.kind]

    # Text.
    lines = ['%6s |%s| %s us' % ('', '-' * width, schedule.total_time_us)]
    for (kind, id_), row in rows.items():
        lines.append('%6s |%s|' % ('%s%s' % (kind, id_), ''.join(row)))
    text = '\n'.join(lines)

    return text
