# !/usr/bin/env python
# -*- coding: utf-8 -*-

"""
@Time    : 2025-03-10
@Author  : Rey
@Contact : reyxbo@163.com
@Explain : Metrics methods, operation counts, busy time breakdown and fidelity model.
"""


from typing import Any, TYPE_CHECKING
from dataclasses import dataclass, asdict
from math import exp as math_exp

from .rarch import HardwareSpec
from .rbase import Base, InputError, throw
from .risa import OpTable

if TYPE_CHECKING:
    from .rscheduler import Schedule


__all__ = (
    'Counts',
    'Breakdown',
    'Fidelity',
    'Metrics',
    'fidelity',
    'count_schedule',
    'compute_metrics',
    'metrics_to_dict'
)


@dataclass(frozen=True)
class Counts(Base):
    """
    Operation counts, shifts per moved ion and swaps per operation.
    """

    n_1q: int = 0
    n_2q: int = 0
    n_meas: int = 0
    n_intra_shift: int = 0
    n_intra_swap: int = 0
    n_inter_shift: int = 0
    n_inter_swap: int = 0


@dataclass(frozen=True)
class Breakdown(Base):
    """
    Busy time microseconds per category, union of event intervals.
    """

    gate_us: int = 0
    intra_us: int = 0
    inter_us: int = 0


@dataclass(frozen=True)
class Fidelity(Base):
    """
    Fidelity components and product.
    """

    f_1q: float = 1.0
    f_2q: float = 1.0
    f_meas: float = 1.0
    f_transport: float = 1.0
    f_decoh: float = 1.0
    f_total: float = 1.0


@dataclass(frozen=True)
class Metrics(Base):
    """
    Metrics of one schedule.
    """

    t_exe_us: int
    counts: Counts
    breakdown: Breakdown
    fidelity: Fidelity


def fidelity(
    counts: Counts,
    t_exe_us: int,
    n_qubits: int,
    table: OpTable | None = None,
    coherence_time_s: float = 600.0
) -> Fidelity:
    """
    Get multiplicative fidelity, each component is operation fidelity raised to its count.

    Parameters
    ----------
    counts : Operation counts.
    t_exe_us : Execution time microseconds.
    n_qubits : Circuit qubit count.
    table : Operation table.
        - `None`: Use defaults.
    coherence_time_s : Coherence time seconds.

    Returns
    -------
    Fidelity.
    """

    # Check.
    if t_exe_us < 0:
        throw(InputError, t_exe_us)
    if coherence_time_s <= 0:
        throw(InputError, coherence_time_s)
    for name, value in asdict(counts).items():
        if value < 0:
            throw(InputError, value, text='count "%s" is negative' % name)

    # Parameter.
    table = table or OpTable()

    # Component.
    f_1q = table.gate1q.fidelity ** counts.n_1q
    f_2q = table.gate2q.fidelity ** counts.n_2q
    f_meas = table.measure.fidelity ** counts.n_meas
    f_transport = (
        table.intra_shift.fidelity ** counts.n_intra_shift
        * table.intra_swap.fidelity ** counts.n_intra_swap
        * table.inter_shift.fidelity ** counts.n_inter_shift
        * table.inter_swap.fidelity ** counts.n_inter_swap
    )
    f_decoh = math_exp(-n_qubits * t_exe_us * 1e-6 / coherence_time_s)
    f_total = f_1q * f_2q * f_meas * f_transport * f_decoh
    result = Fidelity(f_1q, f_2q, f_meas, f_transport, f_decoh, f_total)

    return result


def _union_length(intervals: list[tuple[int, int]]) -> int:
    """
    Get measure of union of half open intervals.

    Parameters
    ----------
    intervals : Start and end pairs.

    Returns
    -------
    Length.
    """

    # Sweep.
    length = 0
    current_start = current_end = None
    for start, end in sorted(intervals):
        if current_end is None or start > current_end:
            if current_end is not None:
                length += current_end - current_start
            current_start, current_end = start, end
        else:
            current_end = max(current_end, end)
    if current_end is not None:
        length += current_end - current_start

    return length


def count_schedule(schedule: 'Schedule') -> tuple[Counts, Breakdown]:
    """
    Count operations and busy time of schedule.

    Parameters
    ----------
    schedule : Schedule.

    Returns
    -------
    Counts and breakdown.
    """

    # Parameter.
    counts = dict.fromkeys(('n_1q', 'n_2q', 'n_meas', 'n_intra_shift', 'n_intra_swap', 'n_inter_shift', 'n_inter_swap'), 0)
    intervals = {'gate': [], 'intra': [], 'inter': []}

    # Count.
    for event in schedule.events:
        intervals[event.category].append((event.t, event.end))
        match event.kind:
            case 'gate1q':
                counts['n_1q'] += 1
            case 'gate2q':
                counts['n_2q'] += 1
                if event.form == 'adjacent':
                    counts['n_intra_shift'] += 2
            case 'measure':
                counts['n_meas'] += 1
            case 'intra_shift':
                counts['n_intra_shift'] += 1
            case 's3':
                counts['n_intra_shift'] += len(event.indices)
            case 'intra_swap':
                counts['n_intra_swap'] += 1
            case 'jt_simd':
                if event.jt_class.startswith('shift'):
                    counts['n_inter_shift'] += len(event.junctions)
                else:
                    counts['n_inter_swap'] += len(event.junctions)

    # Build.
    breakdown = Breakdown(
        _union_length(intervals['gate']),
        _union_length(intervals['intra']),
        _union_length(intervals['inter'])
    )

    return Counts(**counts), breakdown


def compute_metrics(schedule: 'Schedule', n_qubits: int, spec: HardwareSpec | None = None) -> Metrics:
    """
    Compute metrics of schedule.

    Parameters
    ----------
    schedule : Schedule.
    n_qubits : Circuit qubit count.
    spec : Hardware spec, give operation table and coherence time.
        - `None`: Use defaults.

    Returns
    -------
    Metrics.
    """

    # Parameter.
    if spec is None:
        table = OpTable()
        coherence_time_s = 600.0
    else:
        table = spec.get_op_table()
        coherence_time_s = spec.coherence_time_s

    # Compute.
    counts, breakdown = count_schedule(schedule)
    result = fidelity(counts, schedule.total_time_us, n_qubits, table, coherence_time_s)
    metrics = Metrics(schedule.total_time_us, counts, breakdown, result)

    return metrics


def metrics_to_dict(metrics: Metrics) -> dict[str, Any]:
    """
    Convert metrics to nested dictionary.

    Parameters
    ----------
    metrics : Metrics.

    Returns
    -------
    Dictionary.
    """

    return asdict(metrics)
