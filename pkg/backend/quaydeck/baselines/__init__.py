from quaydeck.baselines.strategies import (
    PROPOSED, STRATEGY_NAMES, StrategyKind, StrategyOutcome,
    greedy_sequence, relocation_local_search, solve, solve_baseline,
)

__all__ = [
    'PROPOSED', 'STRATEGY_NAMES', 'StrategyKind', 'StrategyOutcome',
    'greedy_sequence', 'relocation_local_search', 'solve', 'solve_baseline',
]
