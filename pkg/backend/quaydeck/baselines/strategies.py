"""
Comparison strategies scored by the same cycle simulator as the proposed GA.

- greedy:  stacks unloaded by descending unload count, template yard
- bilevel: sequence-only GA on the rehandle-free objective
- ilsrs1:  sequence-only GA with dual cycling, yard fixed
- ilsrs2:  yard-only GA with single cycling and an elite relocation search
"""

import enum
import logging
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

from quaydeck.core.models import Chromosome, CostBreakdown, ShipRowPlan, TimingParams, YardState
from quaydeck.ga.engine import GAParams, GAResult, GeneticSearch, Objective
from quaydeck.simulation.cycle_sim import CycleMode, evaluate

logger = logging.getLogger(__name__)

PROPOSED = 'qcdc-dr-ga'

# Scores tried per elite by the relocation local search
RELOCATION_BUDGET = 12


class StrategyKind(enum.Enum):
    GREEDY_UPPER_BOUND = 'greedy'
    BILEVEL_QCDC = 'bilevel'
    ILSRS_SCENARIO_1 = 'ilsrs1'
    ILSRS_SCENARIO_2 = 'ilsrs2'


# CLI value -> strategy; None is the proposed method
STRATEGY_NAMES = {kind.value: kind for kind in StrategyKind}
STRATEGY_NAMES[PROPOSED] = None


@dataclass(frozen=True)
class StrategyOutcome:
    name: str
    chromosome: Chromosome
    breakdown: CostBreakdown
    history: Tuple[Tuple[int, float, float], ...] = ()
    reason: Optional[str] = None

    @classmethod
    def from_ga(cls, name: str, result: GAResult) -> 'StrategyOutcome':
        return cls(name, result.best, result.breakdown, result.history, result.reason)


def greedy_sequence(plan: ShipRowPlan) -> List[int]:
    """Ship stacks by descending unload count; ties by lower index."""
    return sorted(range(1, plan.num_stacks + 1), key=lambda c: (-plan.stack(c).unload, c))


def relocation_local_search(chromosome: Chromosome, score: Callable[[Chromosome], float],
                            budget: int = RELOCATION_BUDGET) -> Chromosome:
    """
    First-improvement search over single-tag relocations.

    A move lifts one ship-bound tag to the top of another yard stack with
    room. The first improving move is taken and the scan restarts, until no
    move improves or `budget` candidates have been scored.
    """
    current = chromosome
    current_cost = score(current)
    tried = 0

    improved = True
    while improved and tried < budget:
        improved = False
        yard = current.yard
        rows = yard.tag_rows()
        foreign = yard.foreign_counts()
        for src, row in enumerate(rows):
            for k in range(len(row)):
                for dest in range(len(rows)):
                    if dest == src or foreign[dest] + len(rows[dest]) >= yard.cap:
                        continue
                    moved = [list(r) for r in rows]
                    moved[dest].append(moved[src].pop(k))
                    candidate = Chromosome(current.unload_seq, yard.with_tag_rows(moved))
                    cost = score(candidate)
                    tried += 1
                    if cost < current_cost:
                        current, current_cost = candidate, cost
                        improved = True
                        break
                    if tried >= budget:
                        return current
                if improved:
                    break
            if improved:
                break
    return current


def _search(kind: Optional[StrategyKind], plan: ShipRowPlan, template: YardState,
            params: GAParams, timing: TimingParams) -> GeneticSearch:
    if kind is None:
        return GeneticSearch(plan, template, params, timing)
    if kind == StrategyKind.BILEVEL_QCDC:
        return GeneticSearch(plan, template, params, timing, evolve_yard=False,
                             objective=Objective.OPERATION)
    if kind == StrategyKind.ILSRS_SCENARIO_1:
        return GeneticSearch(plan, template, params, timing, evolve_yard=False)
    if kind == StrategyKind.ILSRS_SCENARIO_2:
        return GeneticSearch(plan, template, params, timing, evolve_sequence=False,
                             fixed_sequence=range(1, plan.num_stacks + 1),
                             mode=CycleMode.SINGLE, local_search=relocation_local_search)
    raise ValueError(f"{kind} is not a GA strategy")


def solve_baseline(kind: StrategyKind, plan: ShipRowPlan, yard_template: YardState,
                   params: GAParams = GAParams(), timing: TimingParams = TimingParams()) -> StrategyOutcome:
    """
    Run one comparison strategy.

    Returns:
        StrategyOutcome whose breakdown is the full cost, rehandles included
    """
    if kind == StrategyKind.GREEDY_UPPER_BOUND:
        chromosome = Chromosome(tuple(greedy_sequence(plan)), yard_template)
        breakdown, _ = evaluate(chromosome, plan, timing, trace=False)
        logger.info(f"Greedy upper bound: {breakdown.total_seconds:.1f}s")
        return StrategyOutcome(kind.value, chromosome, breakdown)

    result = _search(kind, plan, yard_template, params, timing).run()
    return StrategyOutcome.from_ga(kind.value, result)


def solve(strategy_name: str, plan: ShipRowPlan, yard_template: YardState,
          params: GAParams = GAParams(), timing: TimingParams = TimingParams()) -> StrategyOutcome:
    """Dispatch a CLI strategy name, the proposed method included."""
    if strategy_name not in STRATEGY_NAMES:
        raise ValueError(f"Unknown strategy {strategy_name!r}; choose from {', '.join(STRATEGY_NAMES)}")
    kind = STRATEGY_NAMES[strategy_name]
    if kind is None:
        return StrategyOutcome.from_ga(PROPOSED, _search(None, plan, yard_template, params, timing).run())
    return solve_baseline(kind, plan, yard_template, params, timing)
