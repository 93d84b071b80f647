"""
Long-running reproductions: small-instance optimality against exhaustive
search and the paired benchmark comparisons. Run with `pytest -m slow`.
"""

import itertools
import math

import pytest

from quaydeck.bench.harness import BenchmarkHarness, BenchPlan
from quaydeck.core.models import Chromosome, TimingParams
from quaydeck.ga.engine import GAParams, GeneticSearch
from quaydeck.scenarios.generator import ScenarioConfig, generate_instance
from quaydeck.simulation import evaluate

pytestmark = pytest.mark.slow


def clear_stacks(template):
    """Stacks where no foreign container can end up above a ship-bound tag."""
    return [i for i, offsets in enumerate(template.foreign_offsets()) if all(k == 0 for k in offsets)]


def rehandle_free_yard(plan, template, seq):
    """
    Yard whose stacks hold consecutive runs of the loading order, earliest
    on top, or None when the clear stacks lack room.
    """
    order = [t for c in seq for t in plan.stack(c).load]
    foreign = template.foreign_counts()
    rows = [[] for _ in template.stacks]
    for i in clear_stacks(template):
        room = template.cap - foreign[i]
        chunk, order = order[:room], order[room:]
        rows[i] = chunk[::-1]
    if order:
        return None
    return template.with_tag_rows(rows)


def exhaustive_optimum(plan, template, timing):
    """
    Best cost over every sequence, or None when no rehandle-free yard exists.

    Single and dual counts do not depend on the yard, so a rehandle-free
    yard for the best sequence is a global optimum.
    """
    best = math.inf
    for seq in itertools.permutations(range(1, plan.num_stacks + 1)):
        yard = rehandle_free_yard(plan, template, seq)
        if yard is None:
            return None
        breakdown, _ = evaluate(Chromosome(seq, yard), plan, timing, trace=False)
        assert breakdown.rehandles == 0
        best = min(best, breakdown.total_seconds)
    return best


def small_instances(count):
    seed = 0
    while count:
        config = ScenarioConfig(num_stacks=3 + seed % 3, max_ship_height=3, fill_density=0.6, seed=seed)
        seed += 1
        plan, template = generate_instance(config)
        if plan.total_loads > 8:
            continue
        yield plan, template
        count -= 1


def test_small_instances_reach_exhaustive_optimum():
    timing = TimingParams()
    checked = hits = 0
    for seed, (plan, template) in enumerate(small_instances(80)):
        optimum = exhaustive_optimum(plan, template, timing)
        if optimum is None:
            continue
        result = GeneticSearch(plan, template, GAParams(seed=seed), timing).run()
        checked += 1
        hits += result.cost == optimum
        if checked == 50:
            break
    assert checked == 50
    assert hits >= 48


def run_bench(scenarios, strategies, tmp_path):
    plan = BenchPlan(scenario_ids=scenarios, strategies=strategies, repetitions=20, base_seed=1,
                     out_dir=tmp_path)
    harness = BenchmarkHarness(plan).run()
    harness.write()
    return harness.stats_frame().set_index(['scenario', 'strategy'])


@pytest.mark.parametrize('scenario, minimum', [(6, 8.0), (3, 12.0)])
def test_improvement_over_greedy(scenario, minimum, tmp_path):
    stats = run_bench((scenario,), ('qcdc-dr-ga', 'greedy'), tmp_path)
    greedy = stats.loc[(scenario, 'greedy')]
    assert greedy['improvement_pct'] >= minimum
    assert bool(greedy['significant'])
    assert greedy['t'] > 0


def test_strategy_ordering(tmp_path):
    stats = run_bench((4,), ('qcdc-dr-ga', 'ilsrs1', 'bilevel', 'ilsrs2'), tmp_path)
    mean = {strategy: stats.loc[(4, strategy)]['mean'] for strategy in ('qcdc-dr-ga', 'ilsrs1', 'bilevel', 'ilsrs2')}
    assert mean['qcdc-dr-ga'] <= mean['ilsrs1'] <= mean['bilevel']
    assert mean['qcdc-dr-ga'] <= mean['ilsrs2']
