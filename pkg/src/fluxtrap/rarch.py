# !/usr/bin/env python
# -*- coding: utf-8 -*-

"""
@Time    : 2025-03-04
@Author  : Rey
@Contact : reyxbo@163.com
@Explain : Architecture methods, junction grid position graph.
"""


from typing import Any, Literal, TYPE_CHECKING
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from enum import StrEnum
from networkx import Graph, single_source_shortest_path_length

from .rbase import Base, InputError, throw
from .rdata import to_json, from_json

if TYPE_CHECKING:
    from .risa import OpTable, JTClass


__all__ = (
    'Leg',
    'LEG_ORDER',
    'ZoneKind',
    'IntraMode',
    'InterMode',
    'GraphMode',
    'HardwareSpec',
    'Position',
    'Trap',
    'Junction',
    'QubitMapping',
    'PositionGraph',
    'load_hardware_spec',
    'dump_hardware_spec',
    'build_grid',
    'distance',
    'nearest_gate_zone',
    'set_mode',
    'enabled_edges'
)


class Leg(StrEnum):
    """
    Junction leg direction.
    """

    NORTH = 'N'
    EAST = 'E'
    SOUTH = 'S'
    WEST = 'W'


LEG_ORDER: tuple[Leg, ...] = (Leg.NORTH, Leg.EAST, Leg.SOUTH, Leg.WEST)


class ZoneKind(StrEnum):
    """
    Position zone kind.
    """

    GATE = 'gate'
    AUX = 'aux'


@dataclass(frozen=True)
class IntraMode(Base):
    """
    Intra trap connectivity mode, only linear trap edges enabled.
    """


@dataclass(frozen=True)
class InterMode(Base):
    """
    Inter trap connectivity mode, only junction edges of one transfer class enabled.
    """

    jt_class: 'JTClass'


type GraphMode = IntraMode | InterMode


@dataclass(frozen=True)
class HardwareSpec(Base):
    """
    Hardware spec type of D x D junction grid.

    Parameters
    ----------
    grid_dim : Junction grid dimension D.
    trap_capacity : Positions per trap L.
    gate_zones_per_trap : Gate zones per trap.
    gate_zone_layout : Gate zone placement.
        - `Literal['even']`: Index `floor((k + 0.5) * L / N)`.
        - `tuple[int, ...]`: Explicit in-trap indices, applied to every trap.
    op_table : Operation table.
        - `None`: Use defaults.
    coherence_time_s : Coherence time seconds.
    """

    grid_dim: int
    trap_capacity: int
    gate_zones_per_trap: int
    gate_zone_layout: Literal['even'] | tuple[int, ...] = 'even'
    op_table: 'OpTable | None' = None
    coherence_time_s: float = 600.0


    def __post_init__(self) -> None:
        """
        Check attributes.
        """

        # Check.
        grid_dim = self.grid_dim
        trap_capacity = self.trap_capacity
        gate_zones_per_trap = self.gate_zones_per_trap
        gate_zone_layout = self.gate_zone_layout
        coherence_time_s = self.coherence_time_s
        if type(grid_dim) != int or grid_dim < 1:
            throw(InputError, grid_dim)
        if type(trap_capacity) != int or trap_capacity < 1:
            throw(InputError, trap_capacity)
        if (
            type(gate_zones_per_trap) != int
            or not 1 <= gate_zones_per_trap <= trap_capacity
        ):
            throw(InputError, gate_zones_per_trap, trap_capacity)
        if coherence_time_s <= 0:
            throw(InputError, coherence_time_s)

        ## Layout.
        if gate_zone_layout != 'even':
            if type(gate_zone_layout) not in (tuple, list):
                throw(InputError, gate_zone_layout)
            layout = tuple(gate_zone_layout)
            if (
                len(layout) != gate_zones_per_trap
                or len(set(layout)) != len(layout)
                or any(
                    type(index) != int or not 0 <= index < trap_capacity
                    for index in layout
                )
            ):
                throw(InputError, gate_zone_layout, gate_zones_per_trap)
            object.__setattr__(self, 'gate_zone_layout', tuple(sorted(layout)))


    @property
    def n_traps(self) -> int:
        """
        Trap count, 2 * D * (D + 1).

        Returns
        -------
        Trap count.
        """

        return 2 * self.grid_dim * (self.grid_dim + 1)


    @property
    def n_positions(self) -> int:
        """
        Position count.

        Returns
        -------
        Position count.
        """

        return self.n_traps * self.trap_capacity


    def gate_zone_indices(self) -> tuple[int, ...]:
        """
        Get in-trap gate zone indices.

        Returns
        -------
        Sorted indices.
        """

        # Explicit.
        if self.gate_zone_layout != 'even':
            return self.gate_zone_layout

        # Even.
        n = self.gate_zones_per_trap
        capacity = self.trap_capacity
        indices = tuple(
            int((k + 0.5) * capacity / n)
            for k in range(n)
        )

        return indices


    def get_op_table(self) -> 'OpTable':
        """
        Get operation table, default when not set.

        Returns
        -------
        Operation table.
        """

        # Import.
        from .risa import OpTable

        # Get.
        table = self.op_table or OpTable()

        return table


    def to_dict(self) -> dict[str, Any]:
        """
        Convert to hardware description dictionary.

        Returns
        -------
        Dictionary.
        """

        # Convert.
        data = {
            'grid_dim': self.grid_dim,
            'trap_capacity': self.trap_capacity,
            'gate_zones_per_trap': self.gate_zones_per_trap,
            'gate_zone_layout': (
                self.gate_zone_layout
                if self.gate_zone_layout == 'even'
                else list(self.gate_zone_layout)
            ),
            'coherence_time_s': self.coherence_time_s
        }
        if self.op_table is not None:
            data['op_table'] = self.op_table.to_dict()

        return data


    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> 'HardwareSpec':
        """
        Build from hardware description dictionary.

        Parameters
        ----------
        data : Dictionary.

        Returns
        -------
        Instance.
        """

        # Import.
        from .risa import OpTable

        # Check.
        if not isinstance(data, Mapping):
            throw(InputError, text='hardware description must be an object')
        keys = {'grid_dim', 'trap_capacity', 'gate_zones_per_trap', 'gate_zone_layout', 'coherence_time_s', 'op_table'}
        unknown = set(data) - keys
        if unknown:
            throw(InputError, text='unknown hardware keys %s' % sorted(unknown))
        for key in ('grid_dim', 'trap_capacity', 'gate_zones_per_trap'):
            if key not in data:
                throw(InputError, text='missing hardware key "%s"' % key)

        # Build.
        layout = data.get('gate_zone_layout', 'even')
        if type(layout) == list:
            layout = tuple(layout)
        op_table = data.get('op_table')
        if op_table is not None:
            op_table = OpTable.from_dict(op_table)
        spec = cls(
            data['grid_dim'],
            data['trap_capacity'],
            data['gate_zones_per_trap'],
            layout,
            op_table,
            float(data.get('coherence_time_s', 600.0))
        )

        return spec


def load_hardware_spec(text: str) -> HardwareSpec:
    """
    Load hardware spec from JSON text.

    Parameters
    ----------
    text : JSON text.

    Returns
    -------
    Hardware spec.
    """

    # Load.
    data = from_json(text)
    spec = HardwareSpec.from_dict(data)

    return spec


def dump_hardware_spec(spec: HardwareSpec) -> str:
    """
    Dump hardware spec to JSON text.

    Parameters
    ----------
    spec : Hardware spec.

    Returns
    -------
    JSON text.
    """

    # Dump.
    text = to_json(spec.to_dict(), False)

    return text


@dataclass(frozen=True)
class Position(Base):
    """
    Position type, one physical ion slot.
    """

    id: int
    trap: int
    index: int
    kind: ZoneKind


@dataclass(frozen=True)
class Trap(Base):
    """
    Trap type, one linear segment.
    """

    id: int
    orientation: Literal['h', 'v']
    row: int
    col: int
    positions: tuple[int, ...]


@dataclass(frozen=True)
class Junction(Base):
    """
    Junction type, legs map to trap end positions.
    """

    id: int
    row: int
    col: int
    legs: dict[Leg, tuple[int, int]] = field(hash=False)
    leg_positions: dict[Leg, int] = field(hash=False)


class QubitMapping(Base):
    """
    Qubit mapping type, partial bijection of qubits and positions.
    """


    def __init__(self, qubit_pos: Mapping[int, int] | None = None) -> None:
        """
        Build instance attributes.

        Parameters
        ----------
        qubit_pos : Qubit to position.
        """

        # Set attribute.
        self.qubit_pos: dict[int, int] = {}
        self.pos_qubit: dict[int, int] = {}

        # Place.
        for qubit, pos in (qubit_pos or {}).items():
            self.place(qubit, pos)


    def place(self, qubit: int, pos: int) -> None:
        """
        Place qubit to vacant position.

        Parameters
        ----------
        qubit : Qubit.
        pos : Position ID.
        """

        # Check.
        if qubit in self.qubit_pos:
            throw(InputError, qubit, text='qubit placed twice')
        if pos in self.pos_qubit:
            throw(InputError, pos, text='position occupied twice')

        # Place.
        self.qubit_pos[qubit] = pos
        self.pos_qubit[pos] = qubit


    def occupant(self, pos: int) -> int | None:
        """
        Get occupant qubit of position.

        Parameters
        ----------
        pos : Position ID.

        Returns
        -------
        Qubit or `None` when vacant.
        """

        return self.pos_qubit.get(pos)


    def move(self, src: int, dst: int) -> None:
        """
        Move occupant of source position to vacant destination.

        Parameters
        ----------
        src : Source position ID.
        dst : Destination position ID.
        """

        # Move.
        qubit = self.pos_qubit.pop(src)
        self.pos_qubit[dst] = qubit
        self.qubit_pos[qubit] = dst


    def exchange(self, pos_a: int, pos_b: int) -> None:
        """
        Exchange occupants of two positions, either may be vacant.

        Parameters
        ----------
        pos_a : Position ID.
        pos_b : Position ID.
        """

        # Exchange.
        qubit_a = self.pos_qubit.pop(pos_a, None)
        qubit_b = self.pos_qubit.pop(pos_b, None)
        if qubit_a is not None:
            self.pos_qubit[pos_b] = qubit_a
            self.qubit_pos[qubit_a] = pos_b
        if qubit_b is not None:
            self.pos_qubit[pos_a] = qubit_b
            self.qubit_pos[qubit_b] = pos_a


    def copy(self) -> 'QubitMapping':
        """
        Copy mapping.

        Returns
        -------
        New mapping.
        """

        # Copy.
        mapping = QubitMapping()
        mapping.qubit_pos = self.qubit_pos.copy()
        mapping.pos_qubit = self.pos_qubit.copy()

        return mapping


    def to_dict(self) -> dict[int, int]:
        """
        Get qubit to position dictionary, ordered by qubit.

        Returns
        -------
        Dictionary.
        """

        return dict(sorted(self.qubit_pos.items()))


    def __len__(self) -> int:
        """
        Placed qubit count.

        Returns
        -------
        Count.
        """

        return len(self.qubit_pos)


    def __eq__(self, other: object) -> bool:
        """
        Judge equal.

        Returns
        -------
        Result.
        """

        if not isinstance(other, QubitMapping):
            return NotImplemented

        return self.qubit_pos == other.qubit_pos


class PositionGraph(Base):
    """
    Position graph type, static grid structure plus mutable mapping and mode.
    Static structure is shared between copies.
    """


    def __init__(
        self,
        spec: HardwareSpec,
        positions: list[Position],
        traps: list[Trap],
        junctions: list[Junction],
        union: Graph,
        mapping: QubitMapping | None = None,
        mode: GraphMode | None = None
    ) -> None:
        """
        Build instance attributes.

        Parameters
        ----------
        spec : Hardware spec.
        positions : Positions by ID.
        traps : Traps by ID.
        junctions : Junctions by ID.
        union : Static union graph of all intra and junction edges.
        mapping : Qubit mapping.
        mode : Connectivity mode.
        """

        # Set attribute.
        self.spec = spec
        self.positions = positions
        self.traps = traps
        self.junctions = junctions
        self.union = union
        self.mapping = QubitMapping() if mapping is None else mapping
        self.mode: GraphMode = mode or IntraMode()
        self.gate_zones: tuple[int, ...] = tuple(
            position.id
            for position in positions
            if position.kind == ZoneKind.GATE
        )
        self._distances: dict[int, dict[int, int]] = {}

        ## Trap end position to junction legs.
        self.end_legs: dict[int, list[tuple[int, Leg]]] = {}
        for junction in junctions:
            for leg in LEG_ORDER:
                pos = junction.leg_positions[leg]
                self.end_legs.setdefault(pos, []).append((junction.id, leg))


    @property
    def capacity(self) -> int:
        """
        Positions per trap.

        Returns
        -------
        Capacity.
        """

        return self.spec.trap_capacity


    def position_id(self, trap: int, index: int) -> int:
        """
        Get position ID.

        Parameters
        ----------
        trap : Trap ID.
        index : In-trap index.

        Returns
        -------
        Position ID.
        """

        return trap * self.spec.trap_capacity + index


    def trap_of(self, pos: int) -> int:
        """
        Get trap ID of position.

        Parameters
        ----------
        pos : Position ID.

        Returns
        -------
        Trap ID.
        """

        return pos // self.spec.trap_capacity


    def index_of(self, pos: int) -> int:
        """
        Get in-trap index of position.

        Parameters
        ----------
        pos : Position ID.

        Returns
        -------
        In-trap index.
        """

        return pos % self.spec.trap_capacity


    def is_gate_zone(self, pos: int) -> bool:
        """
        Judge position is gate zone.

        Parameters
        ----------
        pos : Position ID.

        Returns
        -------
        Result.
        """

        return self.positions[pos].kind == ZoneKind.GATE


    def occupant(self, pos: int) -> int | None:
        """
        Get occupant qubit of position.

        Parameters
        ----------
        pos : Position ID.

        Returns
        -------
        Qubit or `None` when vacant.
        """

        return self.mapping.pos_qubit.get(pos)


    def vacant_positions(self) -> list[int]:
        """
        Get vacant position IDs in order.

        Returns
        -------
        Position IDs.
        """

        return [
            position.id
            for position in self.positions
            if position.id not in self.mapping.pos_qubit
        ]


    def distances_from(self, pos: int) -> dict[int, int]:
        """
        Get union graph BFS distances from position, cached.

        Parameters
        ----------
        pos : Position ID.

        Returns
        -------
        Target position to distance.
        """

        # Cache.
        lengths = self._distances.get(pos)
        if lengths is None:
            lengths = single_source_shortest_path_length(self.union, pos)
            self._distances[pos] = lengths

        return lengths


    def copy(self, mapping: QubitMapping | None = None) -> 'PositionGraph':
        """
        Copy graph, share static structure and distance cache.

        Parameters
        ----------
        mapping : Mapping of new graph.
            - `None`: Copy current mapping.

        Returns
        -------
        New graph.
        """

        # Copy.
        graph = object.__new__(PositionGraph)
        graph.__dict__.update(self.__dict__)
        graph.mapping = self.mapping.copy() if mapping is None else mapping

        return graph


def build_grid(spec: HardwareSpec, mapping: QubitMapping | None = None) -> PositionGraph:
    """
    Build position graph of D x D junction grid.
    Horizontal trap `h(r, c)` has ID `r * (D + 1) + c`, vertical trap `v(r, c)` has ID `D * (D + 1) + r * D + c`.

    Parameters
    ----------
    spec : Hardware spec.
    mapping : Initial qubit mapping.

    Returns
    -------
    Position graph in intra mode.
    """

    # Parameter.
    dim = spec.grid_dim
    capacity = spec.trap_capacity
    gate_indices = set(spec.gate_zone_indices())
    horizontal = lambda row, col: row * (dim + 1) + col
    vertical = lambda row, col: dim * (dim + 1) + row * dim + col

    # Traps.
    traps: list[Trap] = []
    for row in range(dim):
        for col in range(dim + 1):
            trap_id = horizontal(row, col)
            traps.append(Trap(trap_id, 'h', row, col, tuple(range(trap_id * capacity, (trap_id + 1) * capacity))))
    for row in range(dim + 1):
        for col in range(dim):
            trap_id = vertical(row, col)
            traps.append(Trap(trap_id, 'v', row, col, tuple(range(trap_id * capacity, (trap_id + 1) * capacity))))

    # Positions.
    positions = [
        Position(
            trap.id * capacity + index,
            trap.id,
            index,
            ZoneKind.GATE if index in gate_indices else ZoneKind.AUX
        )
        for trap in traps
        for index in range(capacity)
    ]

    # Junctions.
    junctions: list[Junction] = []
    last = capacity - 1
    for row in range(dim):
        for col in range(dim):
            legs = {
                Leg.NORTH: (vertical(row, col), last),
                Leg.EAST: (horizontal(row, col + 1), 0),
                Leg.SOUTH: (vertical(row + 1, col), 0),
                Leg.WEST: (horizontal(row, col), last)
            }
            leg_positions = {
                leg: trap_id * capacity + index
                for leg, (trap_id, index) in legs.items()
            }
            junctions.append(Junction(row * dim + col, row, col, legs, leg_positions))

    # Union graph.
    union = Graph()
    union.add_nodes_from(range(len(positions)))
    for trap in traps:
        union.add_edges_from(zip(trap.positions, trap.positions[1:]))
    for junction in junctions:
        ends = [junction.leg_positions[leg] for leg in LEG_ORDER]
        for i, pos_a in enumerate(ends):
            for pos_b in ends[i + 1:]:
                union.add_edge(pos_a, pos_b)

    # Build.
    graph = PositionGraph(spec, positions, traps, junctions, union, mapping)

    ## Check mapping.
    for qubit, pos in graph.mapping.qubit_pos.items():
        if not 0 <= pos < len(positions):
            throw(InputError, qubit, pos, text='qubit placed out of grid')

    return graph


def distance(graph: PositionGraph, a: int, b: int) -> int:
    """
    Get static union graph step distance, ignore occupancy and mode.

    Parameters
    ----------
    graph : Position graph.
    a : Position ID.
    b : Position ID.

    Returns
    -------
    Step distance.
    """

    # Get.
    if a == b:
        return 0
    if a > b:
        a, b = b, a
    steps = graph.distances_from(a)[b]

    return steps


def nearest_gate_zone(
    graph: PositionGraph,
    pos: int,
    load: Mapping[int, int] | None = None,
    beta: float = 2.0,
    zones: Iterable[int] | None = None
) -> int:
    """
    Get gate zone minimizing distance plus load penalty, ties by lowest position ID.

    Parameters
    ----------
    graph : Position graph.
    pos : Position ID.
    load : Outstanding assignments per zone.
    beta : Penalty per outstanding assignment.
    zones : Candidate zones.
        - `None`: All gate zones.

    Returns
    -------
    Gate zone position ID.
    """

    # Parameter.
    load = load or {}
    zones = graph.gate_zones if zones is None else tuple(zones)
    lengths = graph.distances_from(pos)

    # Check.
    if len(zones) == 0:
        throw(InputError, text='graph has no gate zone')

    # Select.
    zone = min(
        zones,
        key=lambda zone: (lengths[zone] + beta * load.get(zone, 0), zone)
    )

    return zone


def set_mode(graph: PositionGraph, mode: GraphMode) -> PositionGraph:
    """
    Set connectivity mode.

    Parameters
    ----------
    graph : Position graph.
    mode : New mode.

    Returns
    -------
    Same graph.
    """

    # Set.
    graph.mode = mode

    return graph


def enabled_edges(graph: PositionGraph) -> set[tuple[int, int]]:
    """
    Get directed edges enabled by current mode.

    Parameters
    ----------
    graph : Position graph.

    Returns
    -------
    Directed position pairs.
    """

    # Parameter.
    edges: set[tuple[int, int]] = set()

    # Get.
    match graph.mode:

        ## Intra.
        case IntraMode():
            for trap in graph.traps:
                for pos_a, pos_b in zip(trap.positions, trap.positions[1:]):
                    edges.add((pos_a, pos_b))
                    edges.add((pos_b, pos_a))

        ## Inter.
        case InterMode(jt_class=jt_class):
            for junction in graph.junctions:
                src = junction.leg_positions[jt_class.from_leg]
                dst = junction.leg_positions[jt_class.to_leg]
                edges.add((src, dst))
                if jt_class.kind == 'swap':
                    edges.add((dst, src))

    return edges
