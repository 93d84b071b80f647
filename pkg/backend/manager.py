"""
Main manager script for quaydeck.
Provides CLI commands to generate instances, solve them, benchmark the
strategies and validate instance files.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

# Add backend to Python path
sys.path.insert(0, str(Path(__file__).parent))

from dotenv import dotenv_values

from quaydeck import settings
from quaydeck.baselines.strategies import STRATEGY_NAMES, StrategyKind, solve
from quaydeck.bench.harness import BenchmarkHarness, BenchPlan
from quaydeck.core.models import TimingParams, TIMING_PRESETS
from quaydeck.core.validation import validate_instance
from quaydeck.exceptions import QuaydeckError
from quaydeck.ga.engine import GAParams
from quaydeck.reports.csv_reports import history_frame, write_frame, write_trace
from quaydeck.reports.instances import load_instance, save_instance, save_solution, solution_to_json
from quaydeck.scenarios.generator import generate_instance, preset, preset_ids
from quaydeck.simulation.cycle_sim import CycleMode, evaluate

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class UsageError(Exception):
    """Bad command line."""


class DataError(Exception):
    """Input file or instance cannot be used."""


class QuaydeckArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def configure_logging(level: str = None):
    name = (level or settings.LOG_LEVEL).upper()
    if not isinstance(logging.getLevelName(name), int):
        raise UsageError(f"Invalid log level: {name}")
    logging.basicConfig(level=name, format=settings.LOG_FORMAT)


def parse_id_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise UsageError(f"Expected a comma-separated list of integers, got {text!r}")


def parse_name_list(text: str) -> List[str]:
    names = [part.strip() for part in text.split(',') if part.strip()]
    unknown = [n for n in names if n not in STRATEGY_NAMES]
    if unknown:
        raise UsageError(f"Unknown strategies {unknown}; choose from {', '.join(STRATEGY_NAMES)}")
    return names


def resolve_timing(args) -> TimingParams:
    """Preset (or environment defaults) overridden by --alpha/--beta/--gamma."""
    if getattr(args, 'timing', None):
        base = TimingParams.preset(args.timing)
    else:
        base = TimingParams(settings.ALPHA_SECONDS, settings.BETA_SECONDS, settings.GAMMA_SECONDS)
    try:
        return TimingParams(
            args.alpha if args.alpha is not None else base.alpha,
            args.beta if args.beta is not None else base.beta,
            args.gamma if args.gamma is not None else base.gamma,
        )
    except ValueError as e:
        raise UsageError(str(e))


def resolve_ga_params(args) -> GAParams:
    """CLI flag > --ga-config file > QUAYDECK_GA_* environment > defaults."""
    try:
        params = GAParams.from_mapping(settings.ga_environment())
    except ValueError as e:
        raise DataError(f"environment: {e}")

    if args.ga_config:
        path = Path(args.ga_config)
        if not path.is_file():
            raise DataError(f"{path}: GA config file not found")
        try:
            params = GAParams.from_mapping(dotenv_values(path), base=params)
        except ValueError as e:
            raise DataError(f"{path}: {e}")

    overrides = {
        'population_size': args.population,
        'max_generations': args.generations,
        'stagnation_limit': args.stagnation,
        'crossover_rate': args.crossover_rate,
        'mutation_rate': args.mutation_rate,
        'elite_fraction': args.elite_fraction,
        'seed': args.seed,
    }
    try:
        return GAParams.from_mapping({k: v for k, v in overrides.items() if v is not None}, base=params)
    except ValueError as e:
        raise UsageError(str(e))


class QuaydeckManager:
    """Main management class for quaydeck"""

    @staticmethod
    def generate(scenario: int, seed: int, output: str) -> int:
        """Generate a preset scenario instance"""
        print(f"\n{'='*60}")
        print(f"Generating scenario {scenario} (seed {seed})")
        print(f"{'='*60}\n")

        plan, yard = generate_instance(preset(scenario, seed))
        path = save_instance(output, plan, yard)

        print(f"✓ Instance written to {path}")
        print(f"  Ship stacks: {plan.num_stacks}")
        print(f"  Unloads: {plan.total_unloads}")
        print(f"  Loads: {plan.total_loads}")
        print(f"  Yard stacks: {len(yard.stacks)} (cap {yard.cap})\n")
        return EXIT_OK

    @staticmethod
    def validate(instance: str) -> int:
        """Validate an instance file"""
        print(f"\n{'='*60}")
        print(f"Validating: {instance}")
        print(f"{'='*60}\n")

        plan, yard = load_instance(instance)
        violations = validate_instance(plan, yard)
        if violations:
            print(f"✗ {len(violations)} violation(s) in {instance}:")
            for violation in violations:
                print(f"  - {violation}")
            return EXIT_DATA

        print("✓ Instance is valid\n")
        return EXIT_OK

    @staticmethod
    def solve(instance: str, strategy: str, timing: TimingParams, params: GAParams, out_dir: Path) -> int:
        """Solve an instance with one strategy and write solution, trace and history"""
        print(f"\n{'='*60}")
        print(f"Solving {instance} with {strategy}")
        print(f"{'='*60}\n")

        plan, yard = load_instance(instance)
        violations = validate_instance(plan, yard)
        if violations:
            raise DataError(f"{instance}: " + '; '.join(str(v) for v in violations))

        outcome = solve(strategy, plan, yard, params, timing)
        mode = CycleMode.SINGLE if STRATEGY_NAMES[strategy] == StrategyKind.ILSRS_SCENARIO_2 else CycleMode.DUAL
        _, trace = evaluate(outcome.chromosome, plan, timing, mode)

        out_dir = Path(out_dir)
        document = solution_to_json(strategy, outcome.chromosome, outcome.breakdown,
                                    seed=params.seed, termination=outcome.reason)
        save_solution(out_dir / 'solution.json', document)
        write_trace(out_dir / 'trace.csv', trace)
        if outcome.history:
            write_frame(out_dir / 'history.csv', history_frame(outcome.history))

        b = outcome.breakdown
        print(f"✓ Solved")
        print(f"  Unloading sequence: {list(outcome.chromosome.unload_seq)}")
        print(f"  Single cycles: {b.singles}")
        print(f"  Dual cycles: {b.duals}")
        print(f"  Rehandles: {b.rehandles}")
        print(f"  Operation time: {b.total_seconds:.0f} s ({b.total_minutes:.2f} min)")
        print(f"  Output: {out_dir}\n")
        return EXIT_OK

    @staticmethod
    def bench(plan: BenchPlan) -> int:
        """Run the paired benchmark and write its reports"""
        print(f"\n{'='*60}")
        print(f"Benchmark: scenarios {list(plan.scenario_ids)}, strategies {list(plan.strategies)}, "
              f"{plan.repetitions} rep(s)")
        print(f"{'='*60}\n")

        harness = BenchmarkHarness(plan).run()
        paths = harness.write()
        stats = harness.stats_frame()

        print(f"{'SCENARIO':<10} {'STRATEGY':<12} {'MEAN MIN':>10} {'SD':>8} {'t':>8} {'p':>8} {'IMPR %':>8}")
        print(f"{'-'*70}")
        for row in stats.itertuples(index=False):
            print(f"{row.scenario:<10} {row.strategy:<12} {row.mean:>10.2f} {row.sd:>8.2f} "
                  f"{row.t:>8.3f} {row.p:>8.4f} {row.improvement_pct:>8.2f}")
        print()
        for name, path in paths.items():
            print(f"✓ {name}: {path}")
        print()
        return EXIT_OK


def add_timing_arguments(parser: argparse.ArgumentParser):
    parser.add_argument('--timing', choices=sorted(TIMING_PRESETS), help='Timing preset')
    parser.add_argument('--alpha', type=float, help='Seconds per single cycle')
    parser.add_argument('--beta', type=float, help='Seconds per dual cycle')
    parser.add_argument('--gamma', type=float, help='Seconds per yard rehandle')


def add_ga_arguments(parser: argparse.ArgumentParser):
    parser.add_argument('--ga-config', help='key=value file with GA parameters')
    parser.add_argument('--population', type=int, help='Population size')
    parser.add_argument('--generations', type=int, help='Maximum generations')
    parser.add_argument('--stagnation', type=int, help='Generations without improvement before stopping')
    parser.add_argument('--crossover-rate', type=float, help='Crossover probability')
    parser.add_argument('--mutation-rate', type=float, help='Mutation probability')
    parser.add_argument('--elite-fraction', type=float, help='Fraction of the population kept as elite')


def build_parser() -> argparse.ArgumentParser:
    parser = QuaydeckArgumentParser(
        prog='manager.py',
        description='quaydeck - quay crane dual cycling and dockyard rehandle optimization',
        formatter_class=argparse.RawDescriptionHelpFormatter
    )
    parser.add_argument('--log-level', help='Logging level (default from QUAYDECK_LOG_LEVEL)')

    subparsers = parser.add_subparsers(dest='command', help='Available commands')

    # Generate command
    generate_parser = subparsers.add_parser('generate', help='Generate a preset scenario instance')
    generate_parser.add_argument('--scenario', type=int, required=True, choices=preset_ids(),
                                 help='Scenario id')
    generate_parser.add_argument('--seed', type=int, default=0, help='Random seed')
    generate_parser.add_argument('-o', '--output', required=True, help='Instance JSON file')

    # Solve command
    solve_parser = subparsers.add_parser('solve', help='Solve an instance with one strategy')
    solve_parser.add_argument('instance', help='Instance JSON file')
    solve_parser.add_argument('--strategy', choices=list(STRATEGY_NAMES), default='qcdc-dr-ga',
                              help='Strategy')
    solve_parser.add_argument('--seed', type=int, help='GA seed')
    solve_parser.add_argument('-o', '--out-dir', default=str(settings.OUTPUT_DIR), help='Output directory')
    add_timing_arguments(solve_parser)
    add_ga_arguments(solve_parser)

    # Bench command
    bench_parser = subparsers.add_parser('bench', help='Run the paired benchmark')
    bench_parser.add_argument('--scenarios', '--scenario', dest='scenarios', default='6',
                              help='Comma-separated scenario ids')
    bench_parser.add_argument('--strategies', '--strategy', dest='strategies',
                              default=','.join(STRATEGY_NAMES), help='Comma-separated strategies')
    bench_parser.add_argument('--reps', type=int, default=20, help='Repetitions per scenario')
    bench_parser.add_argument('--seed', type=int, default=0, help='Base seed')
    bench_parser.add_argument('--significance', type=float, default=0.05, help='t-test significance level')
    bench_parser.add_argument('-o', '--out-dir', default=str(settings.OUTPUT_DIR), help='Output directory')
    add_timing_arguments(bench_parser)
    add_ga_arguments(bench_parser)

    # Validate command
    validate_parser = subparsers.add_parser('validate', help='Validate an instance file')
    validate_parser.add_argument('instance', help='Instance JSON file')

    return parser


def run_command(args) -> int:
    manager = QuaydeckManager()

    if args.command == 'generate':
        return manager.generate(args.scenario, args.seed, args.output)
    if args.command == 'validate':
        return manager.validate(args.instance)
    if args.command == 'solve':
        return manager.solve(args.instance, args.strategy, resolve_timing(args),
                             resolve_ga_params(args), Path(args.out_dir))
    if args.command == 'bench':
        scenarios = parse_id_list(args.scenarios)
        unknown = [s for s in scenarios if s not in preset_ids()]
        if unknown:
            raise UsageError(f"Unknown scenarios {unknown}; choose from {preset_ids()}")
        params = resolve_ga_params(args)
        try:
            plan = BenchPlan(
                scenario_ids=tuple(scenarios),
                strategies=tuple(parse_name_list(args.strategies)),
                repetitions=args.reps,
                base_seed=args.seed,
                timing=resolve_timing(args),
                ga_params=params,
                out_dir=Path(args.out_dir),
                significance=args.significance,
            )
        except ValueError as e:
            raise UsageError(str(e))
        return manager.bench(plan)
    raise UsageError(f"Unknown command {args.command!r}")


def dispatch(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse and run one command.

    Returns:
        0 on success, 1 on usage errors, 2 on infeasible or invalid input
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        configure_logging(args.log_level)
        if not args.command:
            parser.print_help()
            return EXIT_USAGE
        return run_command(args)
    except UsageError as e:
        print(f"✗ Usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, QuaydeckError, FileNotFoundError) as e:
        logger.error(f"Command failed: {e}")
        print(f"\n✗ {e}")
        return EXIT_DATA


def main():
    sys.exit(dispatch())


if __name__ == '__main__':
    main()
