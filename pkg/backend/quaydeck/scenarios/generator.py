"""
Scenario Generator - seeded ship row plans and dockyard arrangements

Generates the six benchmark configurations and custom instances from a
single numpy random stream, so a (config, seed) pair always yields the
same instance.
"""

import logging
import math
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Tuple

import numpy as np

from quaydeck.core.models import ContainerTag, ShipRowPlan, ShipStackPlan, Slot, YardState
from quaydeck.exceptions import GenerationInfeasible, UnknownScenario

logger = logging.getLogger(__name__)

# scenario id -> (ship stacks, max ship stack height)
PRESETS: Dict[int, Tuple[int, int]] = {
    1: (30, 10),
    2: (25, 10),
    3: (20, 10),
    4: (15, 8),
    5: (10, 5),
    6: (5, 4),
}

DEFAULT_YARD_CAP = 6
MAX_STAY = 2
MAX_FOREIGN_PER_STACK = 2


@dataclass(frozen=True)
class ScenarioConfig:
    num_stacks: int
    max_ship_height: int
    yard_cap: int = DEFAULT_YARD_CAP
    yard_stacks: Optional[int] = None
    stay_probability: float = 0.3
    fill_density: float = 0.8
    seed: int = 0
    scenario_id: Optional[int] = None

    def __post_init__(self):
        if self.num_stacks < 1 or self.max_ship_height < 1:
            raise ValueError(f"Ship row must have stacks and height, got {self.num_stacks}x{self.max_ship_height}")
        if self.yard_cap < 1:
            raise ValueError(f"yard_cap must be >= 1, got {self.yard_cap}")
        if self.yard_stacks is not None and self.yard_stacks < 2:
            raise ValueError(f"yard_stacks must be >= 2, got {self.yard_stacks}")
        for name in ('stay_probability', 'fill_density'):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")

    def with_seed(self, seed: int) -> 'ScenarioConfig':
        return replace(self, seed=seed)


def preset_ids() -> List[int]:
    return sorted(PRESETS)


def preset(scenario_id: int, seed: int = 0) -> ScenarioConfig:
    """
    Benchmark configuration `scenario_id` (1..6).

    Raises:
        UnknownScenario: id outside the preset table
    """
    if scenario_id not in PRESETS:
        raise UnknownScenario(f"Unknown scenario {scenario_id}; choose from {preset_ids()}")
    stacks, height = PRESETS[scenario_id]
    return ScenarioConfig(stacks, height, seed=seed, scenario_id=scenario_id)


def _ship_plan(config: ScenarioConfig, rng: np.random.Generator) -> ShipRowPlan:
    height = config.max_ship_height
    stacks = []
    for c in range(1, config.num_stacks + 1):
        stay = 0
        if rng.random() < config.stay_probability:
            stay = min(int(rng.integers(1, MAX_STAY + 1)), height - 1)
        free = height - stay
        unload = int(rng.binomial(free, config.fill_density))
        load = int(rng.binomial(free, config.fill_density))
        stacks.append(ShipStackPlan(stay, unload, tuple(ContainerTag(c, k) for k in range(1, load + 1))))
    return ShipRowPlan(tuple(stacks), height)


def _yard(config: ScenarioConfig, tags: List[ContainerTag], rng: np.random.Generator) -> YardState:
    width = config.yard_stacks or math.ceil(len(tags) / 3) + 2
    # One slot per stack stays free so relocations always find room
    per_stack = config.yard_cap - 1
    if per_stack * width < len(tags):
        raise GenerationInfeasible(
            f"{len(tags)} tags do not fit in {width} yard stacks under cap {config.yard_cap}"
        )

    rows: List[List[Slot]] = [[] for _ in range(width)]
    for k in rng.permutation(len(tags)):
        open_stacks = [i for i, row in enumerate(rows) if len(row) < per_stack]
        rows[open_stacks[int(rng.integers(len(open_stacks)))]].append(tags[int(k)])

    for row in rows:
        spare = config.yard_cap - len(row) - 1
        for _ in range(int(rng.integers(0, min(MAX_FOREIGN_PER_STACK, spare) + 1))):
            row.insert(int(rng.integers(0, len(row) + 1)), None)

    return YardState(tuple(tuple(row) for row in rows), config.yard_cap)


def generate_instance(config: ScenarioConfig) -> Tuple[ShipRowPlan, YardState]:
    """
    Draw a ship row plan and its dockyard arrangement.

    Stay-aboard containers sit at the bottom of ship stacks; unload and load
    counts are binomial over the free height so ship height limits hold.
    Tags are scattered over the yard stacks and foreign containers are
    interleaved at random depths.

    Raises:
        GenerationInfeasible: the yard cannot hold every tag
    """
    rng = np.random.default_rng(config.seed)
    plan = _ship_plan(config, rng)
    yard = _yard(config, plan.load_tags(), rng)
    logger.info(f"Generated instance: {plan.num_stacks} stacks, {plan.total_unloads} unloads, "
                f"{plan.total_loads} loads, {len(yard.stacks)} yard stacks (seed {config.seed})")
    return plan, yard
