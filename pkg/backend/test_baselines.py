"""
Comparison strategy tests
"""

import pytest

from quaydeck.baselines import (
    PROPOSED, STRATEGY_NAMES, StrategyKind, greedy_sequence, relocation_local_search, solve,
    solve_baseline,
)
from quaydeck.core.models import Chromosome, ContainerTag, ShipRowPlan, ShipStackPlan, YardState
from quaydeck.ga.engine import GAParams, GeneticSearch
from quaydeck.simulation import evaluate

SMALL = GAParams(population_size=16, max_generations=15, stagnation_limit=10, seed=3)


def plan_with_unloads(*counts):
    return ShipRowPlan(tuple(ShipStackPlan(stay=0, unload=u) for u in counts), max_height=6)


@pytest.fixture
def spread_instance():
    """Every tag alone in its own yard stack, so no sequence causes a rehandle."""
    plan = ShipRowPlan((
        ShipStackPlan(stay=0, unload=2, load=(ContainerTag(1, 1),)),
        ShipStackPlan(stay=1, unload=3, load=(ContainerTag(2, 1),)),
        ShipStackPlan(stay=0, unload=1, load=(ContainerTag(3, 1),)),
    ), max_height=4)
    yard = YardState.from_labels([['b', '1A'], ['2A'], ['b', 'b', '3A']], cap=3)
    return plan, yard


class TestGreedy:

    def test_descending_unloads(self):
        assert greedy_sequence(plan_with_unloads(2, 5, 3)) == [2, 3, 1]

    def test_ties_keep_index_order(self):
        assert greedy_sequence(plan_with_unloads(4, 4, 4)) == [1, 2, 3]

    def test_scored_on_template(self, worked_instance, timing):
        plan, template = worked_instance
        outcome = solve_baseline(StrategyKind.GREEDY_UPPER_BOUND, plan, template, SMALL, timing)
        expected, _ = evaluate(Chromosome(tuple(greedy_sequence(plan)), template), plan, timing)
        assert outcome.chromosome.yard == template
        assert outcome.breakdown == expected
        assert outcome.history == ()


class TestGABaselines:

    def test_ilsrs2_is_single_cycle_over_identity(self, worked_instance, timing):
        plan, template = worked_instance
        outcome = solve_baseline(StrategyKind.ILSRS_SCENARIO_2, plan, template, SMALL, timing)
        assert outcome.chromosome.unload_seq == (1, 2, 3, 4)
        assert outcome.breakdown.duals == 0
        assert outcome.breakdown.singles == plan.total_unloads + plan.total_loads

    def test_sequence_only_strategies_keep_template(self, worked_instance, timing):
        plan, template = worked_instance
        for kind in (StrategyKind.BILEVEL_QCDC, StrategyKind.ILSRS_SCENARIO_1):
            outcome = solve_baseline(kind, plan, template, SMALL, timing)
            assert outcome.chromosome.yard == template
            assert sorted(outcome.chromosome.unload_seq) == [1, 2, 3, 4]

    def test_bilevel_matches_ilsrs1_without_rehandles(self, spread_instance, timing):
        plan, yard = spread_instance
        bilevel = solve_baseline(StrategyKind.BILEVEL_QCDC, plan, yard, SMALL, timing)
        ilsrs1 = solve_baseline(StrategyKind.ILSRS_SCENARIO_1, plan, yard, SMALL, timing)
        assert bilevel.breakdown.rehandles == 0
        assert bilevel.breakdown == ilsrs1.breakdown

    def test_bilevel_reports_full_cost(self, worked_instance, timing):
        plan, template = worked_instance
        outcome = solve_baseline(StrategyKind.BILEVEL_QCDC, plan, template, SMALL, timing)
        b = outcome.breakdown
        assert b.total_seconds == 90 * b.singles + 170 * b.duals + 60 * b.rehandles


class TestRelocationSearch:

    def test_never_worsens(self, worked_instance, timing):
        plan, template = worked_instance
        search = GeneticSearch(plan, template, SMALL, timing)
        start = Chromosome((1, 2, 3, 4), template)
        improved = relocation_local_search(start, search.score, budget=200)
        assert search.score(improved) <= search.score(start)
        assert sorted(improved.yard.tags()) == sorted(template.tags())
        assert max(improved.yard.heights) <= template.cap

    def test_respects_budget(self, worked_instance, timing):
        plan, template = worked_instance
        search = GeneticSearch(plan, template, SMALL, timing)
        calls = []

        def score(chromosome):
            calls.append(chromosome)
            return search.score(chromosome)

        relocation_local_search(Chromosome((1, 2, 3, 4), template), score, budget=5)
        assert len(calls) <= 6

    def test_nothing_to_improve(self, spread_instance, timing):
        plan, yard = spread_instance
        search = GeneticSearch(plan, yard, SMALL, timing)
        start = Chromosome((1, 2, 3), yard)
        assert search.score(relocation_local_search(start, search.score)) == search.score(start)


class TestSolve:

    def test_names(self):
        assert set(STRATEGY_NAMES) == {PROPOSED, 'greedy', 'bilevel', 'ilsrs1', 'ilsrs2'}

    def test_unknown_strategy(self, worked_instance):
        with pytest.raises(ValueError):
            solve('simulated-annealing', *worked_instance)

    def test_proposed(self, worked_instance, timing):
        plan, template = worked_instance
        outcome = solve(PROPOSED, plan, template, SMALL, timing)
        assert outcome.name == PROPOSED
        assert outcome.history
        assert outcome.reason in ('max-generations', 'stagnation')
        assert outcome.breakdown.total_seconds == evaluate(outcome.chromosome, plan, timing)[0].total_seconds
