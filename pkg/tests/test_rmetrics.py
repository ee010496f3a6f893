# !/usr/bin/env python
# -*- coding: utf-8 -*-

"""
@Time    : 2025-03-13
@Author  : Rey
@Contact : reyxbo@163.com
@Explain : Metrics tests.
"""


from math import exp as math_exp, log as math_log
from pytest import raises, approx

from fluxtrap.rarch import HardwareSpec
from fluxtrap.rbase import InputError
from fluxtrap.risa import OpTable
from fluxtrap.rmetrics import Counts, Breakdown, fidelity, count_schedule, compute_metrics, metrics_to_dict
from fluxtrap.rscheduler import Event, Schedule


def make_schedule() -> Schedule:
    """
    Hand built schedule of every counted kind.
    """

    events = [
        Event(0, 58, 's3', [0, 1, 2], [0, 1, 2, 3], trap=0, direction='right', indices=[0, 1, 2]),
        Event(0, 200, 'intra_swap', [3, 4], [10, 11], trap=1, indices=[2, 3]),
        Event(200, 250, 'jt_simd', [0, 5], [3, 8, 20, 30], jt_class='shift_W_E', junctions=[0, 1]),
        Event(450, 500, 'jt_simd', [1, 6], [4, 9], jt_class='swap_N_S', junctions=[2]),
        Event(450, 141, 'gate2q', [3, 4], [10, 11], name='cx', gate=0, form='adjacent'),
        Event(600, 25, 'gate2q', [3, 4], [10, 11], name='cz', gate=1, form='colocated'),
        Event(625, 5, 'gate1q', [3], [10], name='h', gate=2),
        Event(630, 120, 'measure', [3], [10], name='measure', gate=3)
    ]

    return Schedule(events)


def test_count_schedule() -> None:
    counts, breakdown = count_schedule(make_schedule())
    assert counts == Counts(
        n_1q=1,
        n_2q=2,
        n_meas=1,
        n_intra_shift=3 + 2,
        n_intra_swap=1,
        n_inter_shift=2,
        n_inter_swap=1
    )
    assert breakdown == Breakdown(gate_us=141 + 150, intra_us=200, inter_us=750)


def test_empty_schedule() -> None:
    counts, breakdown = count_schedule(Schedule())
    assert counts == Counts()
    assert breakdown == Breakdown()
    metrics = compute_metrics(Schedule(), 0)
    assert metrics.t_exe_us == 0
    assert metrics.fidelity.f_total == 1.0


def test_decoherence() -> None:
    result = fidelity(Counts(), 60 * 10 ** 6, 20)
    assert result.f_decoh == approx(math_exp(-2))
    assert result.f_total == approx(math_exp(-2))
    assert fidelity(Counts(), 60 * 10 ** 6, 20, coherence_time_s=1200).f_decoh == approx(math_exp(-1))


def test_gate_fidelity() -> None:
    result = fidelity(Counts(n_2q=100), 0, 5)
    assert result.f_2q == approx(0.9982 ** 100)
    assert result.f_decoh == 1.0
    result = fidelity(Counts(n_2q=100), 0, 5, OpTable.from_dict({'gate2q': {'fidelity': 0.99}}))
    assert result.f_2q == approx(0.99 ** 100)


def test_product() -> None:
    counts = Counts(10, 20, 5, 30, 4, 6, 2)
    result = fidelity(counts, 12345, 8)
    assert result.f_transport == approx(0.99978 ** 34 * 0.99956 ** 6 * 0.99912 ** 2)
    logs = sum(
        math_log(value)
        for value in (result.f_1q, result.f_2q, result.f_meas, result.f_transport, result.f_decoh)
    )
    assert math_log(result.f_total) == approx(logs)


def test_fidelity_check() -> None:
    with raises(InputError):
        fidelity(Counts(n_1q=-1), 0, 1)
    with raises(InputError):
        fidelity(Counts(), -1, 1)
    with raises(InputError):
        fidelity(Counts(), 0, 1, coherence_time_s=0)


def test_compute_metrics() -> None:
    schedule = make_schedule()
    spec = HardwareSpec(2, 5, 1, coherence_time_s=300.0)
    metrics = compute_metrics(schedule, 7, spec)
    assert metrics.t_exe_us == 950
    assert metrics.fidelity.f_decoh == approx(math_exp(-7 * 950e-6 / 300))
    data = metrics_to_dict(metrics)
    assert data['counts']['n_inter_shift'] == 2
    assert data['breakdown']['inter_us'] == 750
    assert set(data['fidelity']) == {'f_1q', 'f_2q', 'f_meas', 'f_transport', 'f_decoh', 'f_total'}
