# !/usr/bin/env python
# -*- coding: utf-8 -*-

"""
@Time    : 2025-03-13
@Author  : Rey
@Contact : reyxbo@163.com
@Explain : Command line tests.
"""


from pathlib import Path
from pandas import read_csv
from pytest import raises

from fluxtrap.rcli import FluxConfig, SWEEP_COLUMNS, main
from fluxtrap.rcircuit import parse_circuit
from fluxtrap.rdata import from_json, to_json


def gen_inputs(tmp_path: Path) -> tuple[str, str]:
    arch = str(tmp_path / 'arch.json')
    circuit = str(tmp_path / 'bv.qasm')
    assert main(['gen-arch', '--grid', '1', '--trap-capacity', '6', '--gate-zones', '2', '--out', arch]) == 0
    assert main(['gen-bench', '--kind', 'bv', '--qubits', '5', '--seed', '1', '--out', circuit]) == 0

    return arch, circuit


def test_gen(tmp_path: Path) -> None:
    arch, circuit = gen_inputs(tmp_path)
    data = from_json(Path(arch).read_text())
    assert data['grid_dim'] == 1
    assert data['gate_zones_per_trap'] == 2
    assert parse_circuit(Path(circuit).read_text(), 'qasm').n_qubits == 5
    out = str(tmp_path / 'vqe.json')
    assert main(['gen-bench', '--kind', 'vqe', '--qubits', '3', '--layers', '2', '--out', out]) == 0
    assert parse_circuit(Path(out).read_text(), 'json').count('cx') == 6


def test_compile(tmp_path: Path, capsys) -> None:
    arch, circuit = gen_inputs(tmp_path)
    schedule = tmp_path / 'out' / 'schedule.json'
    metrics = tmp_path / 'out' / 'metrics.json'
    dump = tmp_path / 'out' / 'dump.jsonl'
    code = main([
        'compile',
        '--arch', arch,
        '--circuit', circuit,
        '--policy', 'depth-sync',
        '--out-schedule', str(schedule),
        '--out-metrics', str(metrics),
        '--gantt',
        '--dump-candidates', str(dump)
    ])
    assert code == FluxConfig.exit_ok
    schedule_data = from_json(schedule.read_text())
    metrics_data = from_json(metrics.read_text())
    assert schedule_data['total_time_us'] == metrics_data['t_exe_us']
    assert metrics_data['counts']['n_2q'] == 2
    assert all('decision' in from_json(line) for line in dump.read_text().splitlines())
    assert '%s us' % schedule_data['total_time_us'] in capsys.readouterr().out


def test_compile_config(tmp_path: Path) -> None:
    arch, circuit = gen_inputs(tmp_path)
    config = tmp_path / 'scheduler.toml'
    config.write_text('inter_gain_factor = 1.0\n\n[heuristic]\nlookahead_gates = 4\n')
    code = main([
        'compile',
        '--arch', arch,
        '--circuit', circuit,
        '--config', str(config),
        '--alpha', '0.5',
        '--mapping', 'random',
        '--out-schedule', str(tmp_path / 'schedule.json'),
        '--out-metrics', str(tmp_path / 'metrics.json')
    ])
    assert code == FluxConfig.exit_ok


def test_input_error(tmp_path: Path) -> None:
    _, circuit = gen_inputs(tmp_path)
    arch = tmp_path / 'broken.json'
    arch.write_text('{"grid_dim": 1')
    code = main([
        'compile',
        '--arch', str(arch),
        '--circuit', circuit,
        '--out-schedule', str(tmp_path / 'schedule.json'),
        '--out-metrics', str(tmp_path / 'metrics.json')
    ])
    assert code == FluxConfig.exit_input
    bad = tmp_path / 'bad.qasm'
    bad.write_text('qreg q[1];\nfoo q[0];\n')
    code = main([
        'compile',
        '--arch', str(tmp_path / 'arch.json'),
        '--circuit', str(bad),
        '--out-schedule', str(tmp_path / 'schedule.json'),
        '--out-metrics', str(tmp_path / 'metrics.json')
    ])
    assert code == FluxConfig.exit_input


def test_sweep(tmp_path: Path) -> None:
    config = tmp_path / 'sweep.json'
    config.write_text(to_json({
        'specs': [{'grid_dim': 1, 'trap_capacity': 6, 'gate_zones_per_trap': 1}],
        'gate_zones': [1, 2],
        'benchmarks': [{'kind': 'bv', 'qubits': 4}],
        'policies': ['fluxtrap', 'eager-jt'],
        'workers': 2
    }))
    out = tmp_path / 'sweep.csv'
    assert main(['sweep', '--config', str(config), '--out', str(out)]) == 0
    df = read_csv(out)
    assert tuple(df.columns) == SWEEP_COLUMNS
    assert len(df) == 4
    assert list(df['gate_zones_per_trap']) == [1, 1, 2, 2]
    assert list(df['policy']) == ['fluxtrap', 'eager-jt'] * 2
    assert set(df['status']) == {'ok'}


def test_sweep_point_error(tmp_path: Path) -> None:
    config = tmp_path / 'sweep.toml'
    config.write_text(
        '[[specs]]\ngrid_dim = 1\ntrap_capacity = 6\ngate_zones_per_trap = 1\n\n'
        '[[benchmarks]]\nkind = "qaoa"\nqubits = 5\n'
    )
    out = tmp_path / 'sweep.csv'
    assert main(['sweep', '--config', str(config), '--out', str(out)]) == 0
    df = read_csv(out)
    assert list(df['status']) == ['input error']


def test_sweep_empty(tmp_path: Path) -> None:
    config = tmp_path / 'sweep.json'
    config.write_text('{"specs": [], "benchmarks": []}')
    out = tmp_path / 'sweep.csv'
    assert main(['sweep', '--config', str(config), '--out', str(out)]) == 0
    assert out.read_text().strip() == ','.join(SWEEP_COLUMNS)


def test_sweep_policy(tmp_path: Path) -> None:
    config = tmp_path / 'sweep.json'
    config.write_text('{"policies": ["greedy"]}')
    assert main(['sweep', '--config', str(config), '--out', str(tmp_path / 'sweep.csv')]) == FluxConfig.exit_input


def test_compile_deterministic(tmp_path: Path) -> None:
    arch, circuit = gen_inputs(tmp_path)
    outputs = set()
    for i in range(5):
        schedule = tmp_path / ('schedule_%s.json' % i)
        metrics = tmp_path / ('metrics_%s.json' % i)
        code = main([
            'compile',
            '--arch', arch,
            '--circuit', circuit,
            '--out-schedule', str(schedule),
            '--out-metrics', str(metrics)
        ])
        assert code == FluxConfig.exit_ok
        outputs.add((schedule.read_bytes(), metrics.read_bytes()))
    assert len(outputs) == 1


def test_circuit_param_error(tmp_path: Path) -> None:
    arch, _ = gen_inputs(tmp_path)
    for param in ('"abc"', '[1]', 'true'):
        circuit = tmp_path / 'bad.json'
        circuit.write_text('{"n": 1, "ops": [{"kind": "rz", "q": [0], "param": %s}]}' % param)
        code = main([
            'compile',
            '--arch', arch,
            '--circuit', str(circuit),
            '--out-schedule', str(tmp_path / 'schedule.json'),
            '--out-metrics', str(tmp_path / 'metrics.json')
        ])
        assert code == FluxConfig.exit_input


def test_config_static() -> None:
    with raises(TypeError):
        FluxConfig()
