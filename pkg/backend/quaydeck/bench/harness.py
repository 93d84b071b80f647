"""
Benchmark Harness - paired strategy comparison over seeded scenarios.

Every (scenario, strategy, rep) cell regenerates its instance from
base_seed + rep, so all strategies of one rep see the same instance and
the per-rep samples pair up for the t-test.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import pandas as pd

from quaydeck import settings
from quaydeck.baselines.strategies import PROPOSED, STRATEGY_NAMES, solve
from quaydeck.core.models import TimingParams
from quaydeck.exceptions import ZeroVariance
from quaydeck.ga.engine import GAParams
from quaydeck.reports.csv_reports import (
    HISTORY_COLUMNS, PLOT_COLUMNS, STATS_COLUMNS, history_frame, runs_frame, write_frame,
)
from quaydeck.scenarios.generator import PRESETS, generate_instance, preset
from quaydeck.stats.ttest import (
    PairedSample, describe, improvement_pct, paired_t_test, seconds_to_minutes,
)

logger = logging.getLogger(__name__)

Cell = Tuple[int, str, int]


@dataclass(frozen=True)
class BenchPlan:
    scenario_ids: Tuple[int, ...]
    strategies: Tuple[str, ...]
    repetitions: int = 20
    base_seed: int = 0
    timing: TimingParams = field(default_factory=TimingParams)
    ga_params: GAParams = field(default_factory=GAParams)
    out_dir: Path = settings.OUTPUT_DIR
    significance: float = 0.05

    def __post_init__(self):
        object.__setattr__(self, 'scenario_ids', tuple(self.scenario_ids))
        object.__setattr__(self, 'strategies', tuple(self.strategies))
        object.__setattr__(self, 'out_dir', Path(self.out_dir))
        if not self.strategies:
            raise ValueError("At least one strategy is required")
        if not self.scenario_ids:
            raise ValueError("At least one scenario is required")
        unknown = [s for s in self.strategies if s not in STRATEGY_NAMES]
        if unknown:
            raise ValueError(f"Unknown strategies: {', '.join(unknown)}")
        if self.repetitions < 1:
            raise ValueError(f"repetitions must be >= 1, got {self.repetitions}")

    @property
    def candidate(self) -> str:
        """Strategy the others are compared against."""
        return PROPOSED if PROPOSED in self.strategies else self.strategies[0]

    @property
    def runs_ttest(self) -> bool:
        return self.repetitions >= 2 and len(self.strategies) >= 2

    def seed_for(self, rep: int) -> int:
        return self.base_seed + rep

    def cells(self) -> List[Cell]:
        return [
            (scenario, strategy, rep)
            for scenario in self.scenario_ids
            for strategy in self.strategies
            for rep in range(self.repetitions)
        ]


@dataclass(frozen=True)
class CellResult:
    run: Dict
    history: Tuple[Tuple[int, float, float], ...]


def run_cell(plan: BenchPlan, cell: Cell) -> CellResult:
    """Generate the rep's instance and solve it with one strategy."""
    scenario, strategy, rep = cell
    seed = plan.seed_for(rep)
    config = preset(scenario, seed)
    ship, yard = generate_instance(config)
    outcome = solve(strategy, ship, yard, replace(plan.ga_params, seed=seed), plan.timing)
    b = outcome.breakdown
    logger.info(f"Scenario {scenario} / {strategy} / rep {rep}: {b.total_seconds:.0f}s")
    run = {
        'scenario': scenario,
        'stacks': config.num_stacks,
        'max_height': config.max_ship_height,
        'strategy': strategy,
        'rep': rep,
        'seed': seed,
        'singles': b.singles,
        'duals': b.duals,
        'rehandles': b.rehandles,
        'total_s': b.total_seconds,
        'total_min': b.total_minutes,
    }
    return CellResult(run, outcome.history)


def _run_packed(args: Tuple[BenchPlan, Cell]) -> CellResult:
    return run_cell(*args)


class BenchmarkHarness:
    """
    Runs a BenchPlan and builds its reports.

    Cells fan out to a process pool capped by QUAYDECK_THREADS; outputs
    are sorted so they do not depend on execution order.
    """

    def __init__(self, plan: BenchPlan, workers: Optional[int] = None):
        self.plan = plan
        self.workers = workers if workers is not None else settings.worker_count()
        self.runs: Optional[pd.DataFrame] = None
        self.history: Optional[pd.DataFrame] = None

    def execute(self) -> List[Tuple[Cell, CellResult]]:
        cells = self.plan.cells()
        workers = max(1, min(self.workers, len(cells)))
        logger.info(f"Benchmark: {len(cells)} cell(s) on {workers} worker(s)")

        if workers == 1:
            results = [run_cell(self.plan, cell) for cell in cells]
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(_run_packed, [(self.plan, cell) for cell in cells]))
        return list(zip(cells, results))

    def run(self) -> 'BenchmarkHarness':
        executed = self.execute()
        self.runs = runs_frame([result.run for _, result in executed])

        frames = [
            history_frame(result.history, strategy=strategy, scenario=scenario, rep=rep)
            for (scenario, strategy, rep), result in executed
            if result.history
        ]
        columns = ['strategy', 'scenario', 'rep'] + HISTORY_COLUMNS
        self.history = (
            pd.concat(frames, ignore_index=True)
            .sort_values(['strategy', 'scenario', 'rep', 'generation'], kind='mergesort')
            .reset_index(drop=True)
            if frames else pd.DataFrame(columns=columns)
        )
        return self

    def _minutes(self, runs: pd.DataFrame, scenario: int, strategy: str) -> List[float]:
        rows = runs[(runs['scenario'] == scenario) & (runs['strategy'] == strategy)].sort_values('rep')
        return [seconds_to_minutes(s) for s in rows['total_s']]

    def stats_frame(self) -> pd.DataFrame:
        """One row per (scenario, strategy); t-test columns compare against the candidate."""
        plan, runs = self.plan, self.runs
        candidate = plan.candidate
        rows = []
        for scenario in sorted(plan.scenario_ids):
            stacks, height = PRESETS[scenario]
            cand = self._minutes(runs, scenario, candidate)
            for strategy in sorted(plan.strategies):
                values = self._minutes(runs, scenario, strategy)
                row = {'scenario': scenario, 'stacks': stacks, 'max_height': height, 'strategy': strategy}
                row.update(describe(values))
                row.update({'r': math.nan, 't': math.nan, 'p': math.nan,
                            'significant': False, 'improvement_pct': math.nan})
                if strategy != candidate:
                    baseline_mean = row['mean']
                    if baseline_mean > 0:
                        row['improvement_pct'] = improvement_pct(baseline_mean, float(pd.Series(cand).mean()))
                    if plan.runs_ttest:
                        try:
                            result = paired_t_test(PairedSample(cand, values), plan.significance)
                            row.update({'r': result.pearson_r, 't': result.t_statistic,
                                        'p': result.p_value, 'significant': result.significant})
                        except ZeroVariance as e:
                            logger.warning(f"Scenario {scenario}, {strategy}: {e}")
                rows.append(row)
        return pd.DataFrame(rows, columns=STATS_COLUMNS)

    def plot_frame(self) -> pd.DataFrame:
        """Mean operation time (minutes) against ship stack count, per strategy."""
        df = (self.runs.groupby(['strategy', 'stacks'], as_index=False)['total_min'].mean()
              .rename(columns={'total_min': 'mean_minutes'}))
        return df.sort_values(['strategy', 'stacks']).reset_index(drop=True)[PLOT_COLUMNS]

    def write(self, out_dir: Optional[Path] = None) -> Dict[str, Path]:
        out_dir = Path(out_dir or self.plan.out_dir)
        return {
            'runs': write_frame(out_dir / 'runs.csv', self.runs),
            'stats': write_frame(out_dir / 'stats.csv', self.stats_frame()),
            'history': write_frame(out_dir / 'history.csv', self.history),
            'plot': write_frame(out_dir / 'plot.csv', self.plot_frame()),
        }


def run_benchmark(plan: BenchPlan, workers: Optional[int] = None) -> Dict[str, Path]:
    return BenchmarkHarness(plan, workers).run().write()
