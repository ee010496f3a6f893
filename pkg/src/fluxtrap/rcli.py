# !/usr/bin/env python
# -*- coding: utf-8 -*-

"""
@Time    : 2025-03-11
@Author  : Rey
@Contact : reyxbo@163.com
@Explain : Command line methods.
"""


from typing import Any, Final
from collections.abc import Sequence, Mapping
from argparse import ArgumentParser, Namespace
from sys import exit as sys_exit

from .rarch import HardwareSpec, build_grid, load_hardware_spec, dump_hardware_spec
from .rbase import Config, InputError, ValidationError, DeadlockError, throw
from .rcircuit import Circuit, parse_circuit, circuit_to_json, circuit_to_qasm, gen_benchmark, gen_vqe
from .rdata import to_json
from .rlog import get_log
from .rmetrics import metrics_to_dict
from .ros import File, read_config
from .rscheduler import (
    Policy,
    SchedulerConfig,
    compile,
    initial_mapping,
    validate_schedule,
    schedule_to_json,
    render_gantt
)
from .rtable import Table
from .rtask import ThreadPool
from .rtime import TimeMark


__all__ = (
    'FluxConfig',
    'SWEEP_COLUMNS',
    'build_parser',
    'read_circuit',
    'cmd_gen_arch',
    'cmd_gen_bench',
    'cmd_compile',
    'run_point',
    'cmd_sweep',
    'main'
)


class FluxConfig(Config):
    """
    Command line config type.
    """

    # Exit code of success.
    exit_ok: Final[int] = 0

    # Exit code of schedule validation violation.
    exit_violation: Final[int] = 1

    # Exit code of input error.
    exit_input: Final[int] = 2

    # Exit code of deadlock abort.
    exit_deadlock: Final[int] = 3

    # Gantt time axis characters.
    gantt_width: int = 80


SWEEP_COLUMNS = (
    'grid_dim',
    'trap_capacity',
    'gate_zones_per_trap',
    'benchmark',
    'qubits',
    'policy',
    'status',
    't_exe_us',
    'f_total',
    'f_2q',
    'f_transport',
    'f_decoh',
    'gate_us',
    'intra_us',
    'inter_us',
    'n_2q',
    'n_intra_shift',
    'n_intra_swap',
    'n_inter_shift',
    'n_inter_swap'
)


def build_parser() -> ArgumentParser:
    """
    Build command line parser.

    Returns
    -------
    Parser.
    """

    # Parser.
    parser = ArgumentParser('fluxtrap', description='trapped ion junction grid SIMD compiler')
    parser.add_argument('--log-file', default=None, help='also record log to file')
    parser.add_argument('--log-mb', type=float, default=None, help='log file split size in megabyte')
    subparsers = parser.add_subparsers(dest='command', required=True)

    ## Architecture.
    sub = subparsers.add_parser('gen-arch', help='write hardware description JSON')
    sub.add_argument('--grid', type=int, required=True, help='junction grid dimension')
    sub.add_argument('--trap-capacity', type=int, required=True, help='positions per trap')
    sub.add_argument('--gate-zones', type=int, default=1, help='gate zones per trap')
    sub.add_argument('--out', required=True, help='output path')

    ## Benchmark.
    sub = subparsers.add_parser('gen-bench', help='write benchmark circuit')
    sub.add_argument('--kind', choices=('qaoa', 'rca', 'bv', 'vqe'), required=True)
    sub.add_argument('--qubits', type=int, required=True)
    sub.add_argument('--seed', type=int, default=0)
    sub.add_argument('--layers', type=int, default=1, help='VQE layer count')
    sub.add_argument('--out', required=True, help='output path, suffix .qasm writes OpenQASM')

    ## Compile.
    sub = subparsers.add_parser('compile', help='compile circuit to schedule')
    sub.add_argument('--arch', required=True, help='hardware description JSON')
    sub.add_argument('--circuit', required=True, help='circuit JSON or .qasm')
    sub.add_argument('--policy', choices=[policy.value for policy in Policy], default=Policy.FLUXTRAP.value)
    sub.add_argument('--seed', type=int, default=0)
    sub.add_argument('--alpha', type=float, default=None)
    sub.add_argument('--mapping', choices=('packed', 'random'), default='packed')
    sub.add_argument('--config', default=None, help='scheduler config TOML or JSON')
    sub.add_argument('--out-schedule', required=True)
    sub.add_argument('--out-metrics', required=True)
    sub.add_argument('--gantt', action='store_true', help='print text chart')
    sub.add_argument('--dump-candidates', default=None, help='JSON lines of per cycle candidates')

    ## Sweep.
    sub = subparsers.add_parser('sweep', help='run config matrix to CSV')
    sub.add_argument('--config', required=True, help='sweep config TOML or JSON')
    sub.add_argument('--out', required=True, help='output CSV path')

    return parser


def read_circuit(path: str) -> Circuit:
    """
    Read circuit file, suffix `.qasm` is OpenQASM, otherwise circuit JSON.

    Parameters
    ----------
    path : File path.

    Returns
    -------
    Circuit.
    """

    # Read.
    file = File(path)
    format_ = 'qasm' if file.suffix == '.qasm' else 'json'
    circuit = parse_circuit(file.read('str'), format_)

    return circuit


def cmd_gen_arch(args: Namespace) -> int:
    """
    Write hardware description.

    Parameters
    ----------
    args : Command arguments.

    Returns
    -------
    Exit code.
    """

    # Write.
    spec = HardwareSpec(args.grid, args.trap_capacity, args.gate_zones)
    File(args.out).write(dump_hardware_spec(spec))

    return FluxConfig.exit_ok


def cmd_gen_bench(args: Namespace) -> int:
    """
    Write benchmark circuit.

    Parameters
    ----------
    args : Command arguments.

    Returns
    -------
    Exit code.
    """

    # Generate.
    if args.kind == 'vqe':
        circuit = gen_vqe(args.qubits, args.layers, args.seed)
    else:
        circuit = gen_benchmark(args.kind, args.qubits, args.seed)

    # Write.
    file = File(args.out)
    if file.suffix == '.qasm':
        file.write(circuit_to_qasm(circuit))
    else:
        file.write(circuit_to_json(circuit, False))

    return FluxConfig.exit_ok


def cmd_compile(args: Namespace) -> int:
    """
    Compile circuit, validate schedule and write outputs.

    Parameters
    ----------
    args : Command arguments.

    Returns
    -------
    Exit code.
    """

    # Parameter.
    log = get_log()
    timemark = TimeMark()
    timemark.mark('start')

    # Load.
    spec = load_hardware_spec(File(args.arch).read('str'))
    circuit = read_circuit(args.circuit)
    config_data = {} if args.config is None else read_config(args.config)
    config = SchedulerConfig.from_dict(config_data)
    if args.alpha is not None:
        heuristic = config.heuristic.to_dict()
        heuristic['alpha'] = args.alpha
        config = SchedulerConfig.from_dict({**config.to_dict(), 'heuristic': heuristic})
    graph = build_grid(spec)
    mapping = initial_mapping(circuit, graph, args.mapping, args.seed)
    timemark.mark('load')

    ## Dump.
    dump = None
    if args.dump_candidates is not None:
        dump_file = File(args.dump_candidates)
        dump_file.write('')
        dump = lambda record: dump_file.write(to_json(record) + '\n', True)

    # Compile.
    schedule, metrics = compile(circuit, graph, args.policy, config, mapping, args.seed, dump)
    timemark.mark('compile')
    violations = validate_schedule(schedule, graph, circuit, mapping)
    timemark.mark('validate')

    # Write.
    File(args.out_schedule).write(schedule_to_json(schedule))
    File(args.out_metrics).write(metrics_to_dict(metrics))
    if args.gantt:
        print(render_gantt(schedule, graph, FluxConfig.gantt_width))
    timemark.mark('write')
    log.debug('compile stages\n%s' % timemark)

    # Check.
    if violations:
        raise ValidationError(
            'schedule has %s violations' % len(violations),
            violations
        )

    return FluxConfig.exit_ok


def run_point(
    spec_data: Mapping[str, Any],
    benchmark: Mapping[str, Any],
    policy: str,
    config: SchedulerConfig,
    seed: int,
    strategy: str
) -> dict[str, Any]:
    """
    Compile one sweep point to CSV row, errors become row status.

    Parameters
    ----------
    spec_data : Hardware description.
    benchmark : Benchmark with keys `kind`, `qubits` and optional `seed`.
    policy : Scheduling policy.
    config : Scheduler config.
    seed : Mapping seed.
    strategy : Mapping strategy.

    Returns
    -------
    Row.
    """

    # Parameter.
    row = dict.fromkeys(SWEEP_COLUMNS)
    row.update({
        'grid_dim': spec_data.get('grid_dim'),
        'trap_capacity': spec_data.get('trap_capacity'),
        'gate_zones_per_trap': spec_data.get('gate_zones_per_trap'),
        'benchmark': benchmark.get('kind'),
        'qubits': benchmark.get('qubits'),
        'policy': policy
    })

    # Compile.
    try:
        spec = HardwareSpec.from_dict(spec_data)
        circuit = gen_benchmark(benchmark['kind'], benchmark['qubits'], benchmark.get('seed', seed))
        graph = build_grid(spec)
        mapping = initial_mapping(circuit, graph, strategy, seed)
        schedule, metrics = compile(circuit, graph, policy, config, mapping, seed)
        violations = validate_schedule(schedule, graph, circuit, mapping)
    except (InputError, KeyError, ValueError) as exc:
        row['status'] = 'input error'
        get_log().warning('sweep point %s failed: %s' % (row, exc))
        return row
    except DeadlockError as exc:
        row['status'] = 'deadlock'
        get_log().warning('sweep point %s deadlocked: %s' % (row, exc))
        return row

    # Row.
    row.update({
        'status': 'violation' if violations else 'ok',
        't_exe_us': metrics.t_exe_us,
        'f_total': metrics.fidelity.f_total,
        'f_2q': metrics.fidelity.f_2q,
        'f_transport': metrics.fidelity.f_transport,
        'f_decoh': metrics.fidelity.f_decoh,
        'gate_us': metrics.breakdown.gate_us,
        'intra_us': metrics.breakdown.intra_us,
        'inter_us': metrics.breakdown.inter_us,
        'n_2q': metrics.counts.n_2q,
        'n_intra_shift': metrics.counts.n_intra_shift,
        'n_intra_swap': metrics.counts.n_intra_swap,
        'n_inter_shift': metrics.counts.n_inter_shift,
        'n_inter_swap': metrics.counts.n_inter_swap
    })

    return row


def cmd_sweep(args: Namespace) -> int:
    """
    Run cross product of specs, gate zone and capacity axes, benchmarks and policies to CSV.

    Parameters
    ----------
    args : Command arguments.

    Returns
    -------
    Exit code.
    """

    # Load.
    data = read_config(args.config)
    keys = {'specs', 'benchmarks', 'policies', 'gate_zones', 'trap_capacities', 'scheduler', 'seed', 'mapping', 'workers'}
    unknown = set(data) - keys
    if unknown:
        throw(InputError, text='unknown sweep keys %s' % sorted(unknown))
    specs = data.get('specs', [])
    benchmarks = data.get('benchmarks', [])
    policies = data.get('policies', [Policy.FLUXTRAP.value])
    for policy in policies:
        if policy not in Policy:
            throw(InputError, policy, text='unknown policy')
    config = SchedulerConfig.from_dict(data.get('scheduler', {}))
    seed = data.get('seed', 0)
    strategy = data.get('mapping', 'packed')

    # Points.
    points = []
    for spec_data in specs:
        gate_zones = data.get('gate_zones', [None])
        capacities = data.get('trap_capacities', [None])
        for gate_zone in gate_zones:
            for capacity in capacities:
                point_spec = dict(spec_data)
                if gate_zone is not None:
                    point_spec['gate_zones_per_trap'] = gate_zone
                    point_spec['gate_zone_layout'] = 'even'
                if capacity is not None:
                    point_spec['trap_capacity'] = capacity
                    point_spec['gate_zone_layout'] = 'even'
                for benchmark in benchmarks:
                    for policy in policies:
                        points.append((point_spec, benchmark, policy))

    # Run.
    pool = ThreadPool(run_point, _max_workers=data.get('workers'))
    for point_spec, benchmark, policy in points:
        pool.one(point_spec, benchmark, policy, config, seed, strategy)
    rows = pool.results()

    # Write.
    Table(rows, SWEEP_COLUMNS).to_csv(args.out)

    return FluxConfig.exit_ok


def main(argv: Sequence[str] | None = None) -> int:
    """
    Command line entry.

    Parameters
    ----------
    argv : Arguments.
        - `None`: Use process arguments.

    Returns
    -------
    Exit code.
    """

    # Parameter.
    log = get_log()
    args = build_parser().parse_args(argv)
    handler = None
    if args.log_file is not None:
        handler = log.add_file(args.log_file, args.log_mb)

    # Run.
    try:
        match args.command:
            case 'gen-arch':
                code = cmd_gen_arch(args)
            case 'gen-bench':
                code = cmd_gen_bench(args)
            case 'compile':
                code = cmd_compile(args)
            case 'sweep':
                code = cmd_sweep(args)

    # Exit code.
    except ValidationError as exc:
        log.error(str(exc))
        for violation in exc.violations:
            log.error('%s: %s' % (violation.rule, violation.text))
        code = FluxConfig.exit_violation
    except InputError as exc:
        log.error('input error: %s' % exc)
        code = FluxConfig.exit_input
    except DeadlockError as exc:
        log.error('deadlock: %s' % exc)
        log.debug(exc.state)
        code = FluxConfig.exit_deadlock
    finally:
        if handler is not None:
            log.delete_handler(handler)

    return code


if __name__ == '__main__':
    sys_exit(main())
