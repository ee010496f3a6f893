# !/usr/bin/env python
# -*- coding: utf-8 -*-

"""
@Time    : 2025-03-07
@Author  : Rey
@Contact : reyxbo@163.com
@Explain : Heuristic methods, gate zone aware cost and target zone assignment.
"""


from typing import Any, NamedTuple
from collections import ChainMap
from collections.abc import Collection, Iterable, Mapping

from .rarch import PositionGraph, distance, nearest_gate_zone
from .rbase import Base, InputError, throw
from .rcircuit import DependencyDAG
from .rlog import get_log


__all__ = (
    'EPSILON',
    'HeuristicConfig',
    'ZoneAssignment',
    'ScoreTerm',
    'Scorer',
    'select_window',
    'assign_target_zone',
    'assign_window',
    'build_scorer',
    'cost',
    'lookahead_score'
)


EPSILON = 1e-9


class HeuristicConfig(Base):
    """
    Heuristic config type.
    """

    keys = ('alpha', 'lookahead_gates', 'lookahead_weight', 'congestion_patience', 'zone_load_beta')


    def __init__(
        self,
        alpha: float = 0.3,
        lookahead_gates: int = 20,
        lookahead_weight: float = 0.5,
        congestion_patience: int = 50,
        zone_load_beta: float = 2.0
    ) -> None:
        """
        Build instance attributes.

        Parameters
        ----------
        alpha : Weight of two qubit gate operand distance.
        lookahead_gates : Window size in program order.
        lookahead_weight : Weight of next DAG level terms.
        congestion_patience : Cycles before zone reassignment and age priority.
        zone_load_beta : Zone choice penalty per outstanding assignment.
        """

        # Check.
        if alpha < 0:
            throw(InputError, alpha)
        if type(lookahead_gates) != int or lookahead_gates < 1:
            throw(InputError, lookahead_gates)
        if lookahead_weight < 0:
            throw(InputError, lookahead_weight)
        if type(congestion_patience) != int or congestion_patience < 1:
            throw(InputError, congestion_patience)
        if zone_load_beta < 0:
            throw(InputError, zone_load_beta)

        # Set attribute.
        self.alpha = float(alpha)
        self.lookahead_gates = lookahead_gates
        self.lookahead_weight = float(lookahead_weight)
        self.congestion_patience = congestion_patience
        self.zone_load_beta = float(zone_load_beta)


    def to_dict(self) -> dict[str, Any]:
        """
        Convert to dictionary.

        Returns
        -------
        Dictionary.
        """

        return {key: getattr(self, key) for key in self.keys}


    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> 'HeuristicConfig':
        """
        Build from dictionary, missing keys use defaults.

        Parameters
        ----------
        data : Dictionary.

        Returns
        -------
        Instance.
        """

        # Check.
        if not isinstance(data, Mapping):
            throw(InputError, text='heuristic config must be an object')
        unknown = set(data) - set(cls.keys)
        if unknown:
            throw(InputError, text='unknown heuristic keys %s' % sorted(unknown))

        # Build.
        config = cls(**data)

        return config


    def __eq__(self, other: object) -> bool:
        """
        Judge equal.

        Returns
        -------
        Result.
        """

        if not isinstance(other, HeuristicConfig):
            return NotImplemented

        return self.to_dict() == other.to_dict()


class ZoneAssignment(Base):
    """
    Zone assignment type, gate targets, zone load and gate age counters.
    """


    def __init__(self) -> None:
        """
        Build instance attributes.
        """

        # Set attribute.
        self.targets: dict[int, int] = {}
        self.load: dict[int, int] = {}

        ## Cycles since entering front layer.
        self.ages: dict[int, int] = {}

        ## Cycles since last assignment.
        self.waits: dict[int, int] = {}


    def tick(self, pending: Iterable[int]) -> None:
        """
        Advance one cycle of counters.

        Parameters
        ----------
        pending : Front layer gates not started.
        """

        # Age.
        for gate in pending:
            self.ages[gate] = self.ages.get(gate, -1) + 1

        # Wait.
        for gate in self.waits:
            self.waits[gate] += 1


    def assign(self, gate: int, zone: int) -> None:
        """
        Record assignment, replace old one.

        Parameters
        ----------
        gate : Gate index.
        zone : Gate zone position ID.
        """

        # Assign.
        self.unassign(gate)
        self.targets[gate] = zone
        self.load[zone] = self.load.get(zone, 0) + 1
        self.waits[gate] = 0


    def unassign(self, gate: int) -> None:
        """
        Drop assignment and its load.

        Parameters
        ----------
        gate : Gate index.
        """

        # Drop.
        zone = self.targets.pop(gate, None)
        self.waits.pop(gate, None)
        if zone is not None:
            self.load[zone] -= 1
            if self.load[zone] == 0:
                del self.load[zone]


    def release(self, gate: int) -> None:
        """
        Release gate at start.

        Parameters
        ----------
        gate : Gate index.
        """

        # Release.
        self.unassign(gate)
        self.ages.pop(gate, None)


    def by_age(self, pending: Iterable[int]) -> list[int]:
        """
        Sort pending gates oldest first, ties by lowest index.

        Parameters
        ----------
        pending : Front layer gates not started.

        Returns
        -------
        Gate indices.
        """

        return sorted(pending, key=lambda gate: (-self.ages.get(gate, 0), gate))


class ScoreTerm(NamedTuple):
    """
    One weighted gate term of cost.
    """

    gate: int
    weight: float
    qubits: tuple[int, ...]
    target: int
    is_2q: bool


class Scorer(Base):
    """
    Scorer type, fast evaluation of cost terms under hypothetical moves.
    """


    def __init__(self, graph: PositionGraph, terms: Iterable[ScoreTerm], alpha: float) -> None:
        """
        Build instance attributes.

        Parameters
        ----------
        graph : Position graph, give distances.
        terms : Cost terms.
        alpha : Weight of two qubit gate operand distance.
        """

        # Set attribute.
        self.graph = graph
        self.terms = list(terms)
        self.alpha = alpha
        self.qubit_terms: dict[int, list[int]] = {}
        for index, term in enumerate(self.terms):
            for qubit in term.qubits:
                self.qubit_terms.setdefault(qubit, []).append(index)


    @property
    def qubits(self) -> set[int]:
        """
        Qubits appearing in any term.

        Returns
        -------
        Qubits.
        """

        return set(self.qubit_terms)


    def term_cost(self, term: ScoreTerm, qubit_pos: Mapping[int, int]) -> float:
        """
        Get weighted cost of one term.

        Parameters
        ----------
        term : Cost term.
        qubit_pos : Qubit to position.

        Returns
        -------
        Cost.
        """

        # Zone distance.
        positions = [qubit_pos[qubit] for qubit in term.qubits]
        value = sum(
            distance(self.graph, pos, term.target)
            for pos in positions
        )

        # Operand distance.
        if term.is_2q:
            value += self.alpha * distance(self.graph, positions[0], positions[1])

        return term.weight * value


    def score(self, qubit_pos: Mapping[int, int] | None = None) -> float:
        """
        Get total cost.

        Parameters
        ----------
        qubit_pos : Qubit to position.
            - `None`: Use graph mapping.

        Returns
        -------
        Cost.
        """

        # Parameter.
        if qubit_pos is None:
            qubit_pos = self.graph.mapping.qubit_pos

        # Sum.
        value = sum(
            self.term_cost(term, qubit_pos)
            for term in self.terms
        )

        return value


    def gain(self, moves: Mapping[int, int], qubit_pos: Mapping[int, int] | None = None) -> float:
        """
        Get cost decrease of moving qubits, only touched terms are evaluated.

        Parameters
        ----------
        moves : Qubit to new position.
        qubit_pos : Qubit to position before moves.
            - `None`: Use graph mapping.

        Returns
        -------
        Cost before minus cost after, positive is improvement.
        """

        # Parameter.
        if qubit_pos is None:
            qubit_pos = self.graph.mapping.qubit_pos
        indices = sorted({
            index
            for qubit in moves
            for index in self.qubit_terms.get(qubit, ())
        })
        after_pos = ChainMap(moves, qubit_pos)

        # Compare.
        before = sum(self.term_cost(self.terms[index], qubit_pos) for index in indices)
        after = sum(self.term_cost(self.terms[index], after_pos) for index in indices)

        return before - after


def select_window(
    dag: DependencyDAG,
    started: Collection[int],
    assignment: ZoneAssignment,
    config: HeuristicConfig,
    lookahead: bool = True
) -> list[tuple[int, float]]:
    """
    Select weighted gate window of front layer and next level.
    When any pending front gate waited more than patience, only the oldest front gates remain.

    Parameters
    ----------
    dag : Dependency DAG.
    started : Started gates.
    assignment : Zone assignment, give ages.
    config : Heuristic config.
    lookahead : Whether include next level.

    Returns
    -------
    Gate and weight pairs in program order.
    """

    # Parameter.
    pending = [
        gate
        for gate in dag.front()
        if gate not in started
    ]
    ages = [assignment.ages.get(gate, 0) for gate in pending]

    # Congestion.
    if ages and max(ages) > config.congestion_patience:
        oldest = max(ages)
        window = [
            (gate, 1.0)
            for gate, age in zip(pending, ages)
            if age == oldest
        ]
        return window

    # Front layer.
    weights = {gate: 1.0 for gate in pending}
    if not lookahead:
        window = list(weights.items())
        return window

    # Lookahead, front most gates by level.
    for gate in dag.next_level():
        weights.setdefault(gate, config.lookahead_weight)
    kept = list(weights)[:config.lookahead_gates]
    window = [
        (gate, weights[gate])
        for gate in sorted(kept)
    ]

    return window


def assign_target_zone(
    gate: int,
    dag: DependencyDAG,
    graph: PositionGraph,
    assignment: ZoneAssignment,
    config: HeuristicConfig
) -> int:
    """
    Get target gate zone of gate, assign once, reassign after waiting more than patience.

    Parameters
    ----------
    gate : Gate index.
    dag : Dependency DAG, give operations.
    graph : Position graph.
    assignment : Zone assignment.
    config : Heuristic config.

    Returns
    -------
    Gate zone position ID.
    """

    # Cache.
    zone = assignment.targets.get(gate)
    if zone is not None:
        if assignment.waits[gate] <= config.congestion_patience:
            return zone
        assignment.unassign(gate)

    # Select.
    op = dag.circuit.ops[gate]
    qubit_pos = graph.mapping.qubit_pos
    if op.is_2q:
        lengths = [graph.distances_from(qubit_pos[qubit]) for qubit in op.qubits]
        new_zone = min(
            graph.gate_zones,
            key=lambda pos: (
                lengths[0][pos] + lengths[1][pos] + config.zone_load_beta * assignment.load.get(pos, 0),
                pos
            )
        )
    else:
        new_zone = nearest_gate_zone(
            graph,
            qubit_pos[op.qubits[0]],
            assignment.load,
            config.zone_load_beta
        )
    if zone is not None:
        log = get_log()
        log.warning('gate %s waited past patience, zone %s reassigned to %s' % (gate, zone, new_zone))
    assignment.assign(gate, new_zone)

    return new_zone


def assign_window(
    window: Iterable[tuple[int, float]],
    dag: DependencyDAG,
    graph: PositionGraph,
    assignment: ZoneAssignment,
    config: HeuristicConfig
) -> None:
    """
    Assign target zones of window gates in program order.

    Parameters
    ----------
    window : Gate and weight pairs.
    dag : Dependency DAG.
    graph : Position graph.
    assignment : Zone assignment.
    config : Heuristic config.
    """

    # Assign.
    for gate, _ in window:
        assign_target_zone(gate, dag, graph, assignment, config)


def build_scorer(
    window: Iterable[tuple[int, float]],
    dag: DependencyDAG,
    graph: PositionGraph,
    engaged: Collection[int],
    assignment: ZoneAssignment,
    config: HeuristicConfig
) -> Scorer:
    """
    Build scorer of window, gates touching engaged qubits excluded.

    Parameters
    ----------
    window : Gate and weight pairs, assigned.
    dag : Dependency DAG.
    graph : Position graph.
    engaged : Qubits of in-flight operations.
    assignment : Zone assignment.
    config : Heuristic config.

    Returns
    -------
    Scorer.
    """

    # Terms.
    terms = []
    for gate, weight in window:
        op = dag.circuit.ops[gate]
        if any(qubit in engaged for qubit in op.qubits):
            continue
        term = ScoreTerm(gate, weight, op.qubits, assignment.targets[gate], op.is_2q)
        terms.append(term)

    # Build.
    scorer = Scorer(graph, terms, config.alpha)

    return scorer


def cost(
    graph: PositionGraph,
    dag: DependencyDAG,
    engaged: Collection[int],
    assignment: ZoneAssignment,
    config: HeuristicConfig,
    started: Collection[int] = ()
) -> float:
    """
    Get front layer cost, sum of zone distances plus weighted operand distances of two qubit gates.

    Parameters
    ----------
    graph : Position graph, mapping is evaluated.
    dag : Dependency DAG.
    engaged : Qubits of in-flight operations.
    assignment : Zone assignment, missing targets are assigned.
    config : Heuristic config.
    started : Started gates.

    Returns
    -------
    Cost.
    """

    # Score.
    window = select_window(dag, started, assignment, config, False)
    assign_window(window, dag, graph, assignment, config)
    scorer = build_scorer(window, dag, graph, engaged, assignment, config)
    value = scorer.score()

    return value


def lookahead_score(
    graph: PositionGraph,
    dag: DependencyDAG,
    engaged: Collection[int],
    assignment: ZoneAssignment,
    config: HeuristicConfig,
    started: Collection[int] = ()
) -> float:
    """
    Get cost over front layer plus weighted next level window.

    Parameters
    ----------
    graph : Position graph, mapping is evaluated.
    dag : Dependency DAG.
    engaged : Qubits of in-flight operations.
    assignment : Zone assignment, missing targets are assigned.
    config : Heuristic config.
    started : Started gates.

    Returns
    -------
    Cost.
    """

    # Score.
    window = select_window(dag, started, assignment, config)
    assign_window(window, dag, graph, assignment, config)
    scorer = build_scorer(window, dag, graph, engaged, assignment, config)
    value = scorer.score()

    return value
