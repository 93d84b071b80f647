from quaydeck.ga.engine import (
    GAParams, GAResult, GeneticSearch, Member, Objective, RankedPopulation,
    evolve_generation, init_population, roulette_select, run,
)
from quaydeck.ga.operators import (
    crossover_1d, crossover_2d, mutate_1d, mutate_2d, random_yard,
    substring_exchange, swap_tags, two_point_exchange,
)

__all__ = [
    'GAParams', 'GAResult', 'GeneticSearch', 'Member', 'Objective', 'RankedPopulation',
    'evolve_generation', 'init_population', 'roulette_select', 'run',
    'crossover_1d', 'crossover_2d', 'mutate_1d', 'mutate_2d', 'random_yard',
    'substring_exchange', 'swap_tags', 'two_point_exchange',
]
