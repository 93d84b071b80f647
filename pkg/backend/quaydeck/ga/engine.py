"""
Genetic Search - hybrid 1D/2D genetic algorithm over composite chromosomes.

Population flow per generation: keep the elite, fill the rest with
roulette-selected parents that go through crossover and mutation, evaluate
the children with the cycle simulator and re-rank.
"""

import enum
import logging
import math
from dataclasses import dataclass, field, fields, replace
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from quaydeck.core.models import Chromosome, CostBreakdown, ShipRowPlan, TimingParams, YardState
from quaydeck.exceptions import AllInfeasible
from quaydeck.ga import operators
from quaydeck.simulation.cycle_sim import CycleMode, evaluate_or_inf

logger = logging.getLogger(__name__)

# Evaluations kept before the memo is flushed
CACHE_LIMIT = 50_000

# Reciprocal-cost fitness is undefined at zero cost
MIN_COST = 1e-9


@dataclass(frozen=True)
class GAParams:
    """GA control parameters."""

    population_size: int = 200
    crossover_rate: float = 0.8
    mutation_rate: float = 0.3
    elite_fraction: float = 0.2
    max_generations: int = 2000
    stagnation_limit: int = 100
    seed: int = 0

    def __post_init__(self):
        if self.population_size < 1:
            raise ValueError(f"population_size must be >= 1, got {self.population_size}")
        if not 0.0 < self.elite_fraction < 1.0:
            raise ValueError(f"elite_fraction must lie in (0, 1), got {self.elite_fraction}")
        for name in ('crossover_rate', 'mutation_rate'):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")
        if self.max_generations < 0:
            raise ValueError(f"max_generations must be >= 0, got {self.max_generations}")
        if self.stagnation_limit < 1:
            raise ValueError(f"stagnation_limit must be >= 1, got {self.stagnation_limit}")

    @property
    def elite_count(self) -> int:
        # round() keeps 0.2 * 200 from ceiling to 41
        return min(self.population_size, math.ceil(round(self.elite_fraction * self.population_size, 9)))

    @classmethod
    def from_mapping(cls, values: Mapping[str, object], base: Optional['GAParams'] = None) -> 'GAParams':
        """
        Build parameters from string-valued key=value pairs.

        Args:
            values: mapping such as the one returned by dotenv_values
            base: parameters to start from (defaults when None)

        Raises:
            ValueError: on unknown keys or unparsable values
        """
        types = {f.name: f.type for f in fields(cls)}
        updates = {}
        for key, raw in values.items():
            name = key.strip().lower()
            if name not in types:
                raise ValueError(f"Unknown GA parameter {key!r}")
            if raw is None or str(raw).strip() == '':
                continue
            caster = float if types[name] in (float, 'float') else int
            try:
                updates[name] = caster(str(raw).strip())
            except ValueError:
                raise ValueError(f"GA parameter {key!r} has invalid value {raw!r}")
        return replace(base or cls(), **updates)

    def as_dict(self) -> Dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


class Objective(enum.Enum):
    FULL = 'full'               # alpha*w_s + beta*w_d + gamma*R
    OPERATION = 'operation'     # rehandles ignored


@dataclass(frozen=True)
class Member:
    chromosome: Chromosome
    breakdown: Optional[CostBreakdown]
    cost: float

    @property
    def feasible(self) -> bool:
        return math.isfinite(self.cost)


@dataclass(frozen=True)
class RankedPopulation:
    """
    Members sorted by ascending cost plus the cumulative fitness ladder.

    Fitness is 1 / cost; infeasible members get zero fitness.
    """

    members: Tuple[Member, ...]
    ladder: np.ndarray = field(compare=False, repr=False)

    @classmethod
    def rank(cls, members: Sequence[Member]) -> 'RankedPopulation':
        ordered = tuple(sorted(members, key=lambda m: m.cost))
        fitness = np.array([1.0 / max(m.cost, MIN_COST) if m.feasible else 0.0 for m in ordered])
        return cls(ordered, np.cumsum(fitness))

    def __len__(self) -> int:
        return len(self.members)

    @property
    def best(self) -> Member:
        return self.members[0]

    @property
    def total_fitness(self) -> float:
        return float(self.ladder[-1]) if len(self.ladder) else 0.0

    def mean_cost(self) -> float:
        finite = [m.cost for m in self.members if m.feasible]
        return float(np.mean(finite)) if finite else math.inf


def roulette_index(pop: RankedPopulation, rng: np.random.Generator) -> int:
    total = pop.total_fitness
    if not total > 0.0:
        raise AllInfeasible("Every member of the population has infinite cost")
    r = rng.uniform(0.0, total)
    return min(int(np.searchsorted(pop.ladder, r, side='right')), len(pop) - 1)


def roulette_select(pop: RankedPopulation, rng: np.random.Generator) -> Chromosome:
    """
    Fitness-proportional selection on the cumulative ladder.

    Raises:
        AllInfeasible: no member has finite cost
    """
    return pop.members[roulette_index(pop, rng)].chromosome


@dataclass(frozen=True)
class GAResult:
    best: Chromosome
    breakdown: CostBreakdown
    cost: float
    history: Tuple[Tuple[int, float, float], ...]
    generations: int
    reason: str


# Elite improvement hook: (chromosome, scorer) -> chromosome
LocalSearch = Callable[[Chromosome, Callable[[Chromosome], float]], Chromosome]


class GeneticSearch:
    """
    Configurable GA engine.

    The proposed method evolves both chromosome parts against the full
    cost; baselines freeze one part, change the objective, force the
    single-cycle simulator or add an elite local search.
    """

    def __init__(self, plan: ShipRowPlan, template: YardState, params: GAParams = GAParams(),
                 timing: TimingParams = TimingParams(), evolve_sequence: bool = True,
                 evolve_yard: bool = True, fixed_sequence: Optional[Sequence[int]] = None,
                 objective: Objective = Objective.FULL, mode: CycleMode = CycleMode.DUAL,
                 local_search: Optional[LocalSearch] = None,
                 rng: Optional[np.random.Generator] = None):
        self.plan = plan
        self.template = template
        self.params = params
        self.timing = timing
        self.evolve_sequence = evolve_sequence
        self.evolve_yard = evolve_yard
        self.fixed_sequence = tuple(fixed_sequence) if fixed_sequence is not None else None
        self.objective = objective
        self.mode = mode
        self.local_search = local_search
        self.rng = rng if rng is not None else np.random.default_rng(params.seed)
        self._cache: Dict[Tuple, Tuple[Optional[CostBreakdown], float]] = {}
        self.evaluations = 0

    def score(self, chromosome: Chromosome) -> float:
        return self.member(chromosome).cost

    def member(self, chromosome: Chromosome) -> Member:
        key = chromosome.key
        cached = self._cache.get(key)
        if cached is None:
            breakdown, cost = evaluate_or_inf(chromosome, self.plan, self.timing, self.mode)
            if breakdown is not None and self.objective == Objective.OPERATION:
                cost = breakdown.operation_seconds(self.timing)
            if len(self._cache) >= CACHE_LIMIT:
                self._cache.clear()
            cached = self._cache[key] = (breakdown, cost)
            self.evaluations += 1
        return Member(chromosome, cached[0], cached[1])

    def _new_chromosome(self) -> Chromosome:
        seq = self.fixed_sequence
        if seq is None and not self.evolve_sequence:
            seq = tuple(range(1, self.plan.num_stacks + 1))
        return operators.random_chromosome(
            self.plan.num_stacks, self.template, self.rng,
            fixed_sequence=seq, fixed_yard=not self.evolve_yard,
        )

    def init_population(self) -> RankedPopulation:
        """
        Random sequences and random yard redistributions, evaluated and ranked.

        Raises:
            InfeasibleTemplate: the template's tags cannot fit under the cap
        """
        members = [self.member(self._new_chromosome()) for _ in range(self.params.population_size)]
        return RankedPopulation.rank(members)

    def crossover(self, a: Chromosome, b: Chromosome) -> Tuple[Chromosome, Chromosome]:
        seq_a, seq_b = a.unload_seq, b.unload_seq
        yard_a, yard_b = a.yard, b.yard
        if self.evolve_sequence:
            seq_a, seq_b = operators.crossover_1d(seq_a, seq_b, self.rng)
        if self.evolve_yard:
            yard_a, yard_b = operators.crossover_2d(yard_a, yard_b, self.rng)
        return Chromosome(tuple(seq_a), yard_a), Chromosome(tuple(seq_b), yard_b)

    def mutate(self, chromosome: Chromosome) -> Chromosome:
        seq, yard = chromosome.unload_seq, chromosome.yard
        if self.evolve_sequence:
            seq = operators.mutate_1d(seq, self.rng)
        if self.evolve_yard:
            yard = operators.mutate_2d(yard, self.rng)
        return Chromosome(tuple(seq), yard)

    def _polish(self, member: Member) -> Member:
        if self.local_search is None or not member.feasible:
            return member
        improved = self.local_search(member.chromosome, self.score)
        return self.member(improved)

    def evolve_generation(self, pop: RankedPopulation) -> RankedPopulation:
        params = self.params
        elites = [self._polish(m) for m in pop.members[:params.elite_count]]

        children: List[Chromosome] = []
        needed = params.population_size - len(elites)
        while len(children) < needed:
            parent_a = roulette_select(pop, self.rng)
            parent_b = roulette_select(pop, self.rng)
            if self.rng.random() < params.crossover_rate:
                offspring = self.crossover(parent_a, parent_b)
            else:
                offspring = (parent_a, parent_b)
            for child in offspring:
                if self.rng.random() < params.mutation_rate:
                    child = self.mutate(child)
                children.append(child)

        members = elites + [self.member(c) for c in children[:needed]]
        return RankedPopulation.rank(members)

    def run(self) -> GAResult:
        """
        Evolve until max_generations or until the best cost has not improved
        for stagnation_limit consecutive generations.
        """
        params = self.params
        logger.info(f"GA start: {self.plan.num_stacks} stacks, population {params.population_size}, "
                    f"objective {self.objective.value}, mode {self.mode.value}")

        pop = self.init_population()
        best = pop.best
        history = [(0, best.cost, pop.mean_cost())]
        stagnant = 0
        generation = 0
        reason = 'max-generations'

        while generation < params.max_generations:
            pop = self.evolve_generation(pop)
            generation += 1
            if pop.best.cost < best.cost:
                best = pop.best
                stagnant = 0
            else:
                stagnant += 1
            history.append((generation, best.cost, pop.mean_cost()))
            logger.debug(f"Generation {generation}: best {best.cost:.1f}s, stagnant {stagnant}")
            if stagnant >= params.stagnation_limit:
                reason = 'stagnation'
                break

        if not best.feasible:
            raise AllInfeasible("No feasible chromosome was found")

        logger.info(f"GA finished after {generation} generation(s) ({reason}): best {best.cost:.1f}s, "
                    f"{self.evaluations} evaluations")
        return GAResult(best.chromosome, best.breakdown, best.cost, tuple(history), generation, reason)


def init_population(plan: ShipRowPlan, yard_template: YardState, params: GAParams,
                    timing: TimingParams = TimingParams()) -> RankedPopulation:
    return GeneticSearch(plan, yard_template, params, timing).init_population()


def evolve_generation(pop: RankedPopulation, plan: ShipRowPlan, params: GAParams,
                      rng: np.random.Generator, timing: TimingParams = TimingParams()) -> RankedPopulation:
    template = pop.best.chromosome.yard
    return GeneticSearch(plan, template, params, timing, rng=rng).evolve_generation(pop)


def run(plan: ShipRowPlan, yard_template: YardState, params: GAParams,
        timing: TimingParams = TimingParams()) -> Tuple[Chromosome, CostBreakdown, Tuple]:
    """Full-cost GA over both chromosome parts; returns (best, breakdown, history)."""
    result = GeneticSearch(plan, yard_template, params, timing).run()
    return result.best, result.breakdown, result.history
