from quaydeck.simulation.cycle_sim import (
    CycleMode, CycleSimulator, EventKind, ShipState, SimEvent, SimTrace,
    calculate_rehandles, evaluate, evaluate_or_inf, nearest_lowest_stack, unload_first_stack,
)

__all__ = [
    'CycleMode', 'CycleSimulator', 'EventKind', 'ShipState', 'SimEvent', 'SimTrace',
    'calculate_rehandles', 'evaluate', 'evaluate_or_inf', 'nearest_lowest_stack',
    'unload_first_stack',
]
