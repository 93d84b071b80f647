"""
Hypothesis strategies for generated instances and chromosomes.
"""

import numpy as np
from hypothesis import strategies as st

from quaydeck.core.models import Chromosome
from quaydeck.ga.operators import random_yard
from quaydeck.scenarios.generator import ScenarioConfig, generate_instance

seeds = st.integers(min_value=0, max_value=2**32 - 1)


@st.composite
def instances(draw, max_stacks=5, max_height=6):
    config = draw(st.builds(
        ScenarioConfig,
        num_stacks=st.integers(1, max_stacks),
        max_ship_height=st.integers(2, max_height),
        seed=seeds,
    ))
    return generate_instance(config)


@st.composite
def solutions(draw, max_stacks=5, max_height=6):
    """(plan, chromosome) with a random sequence and a random yard redistribution."""
    plan, template = draw(instances(max_stacks, max_height))
    seq = draw(st.permutations(range(1, plan.num_stacks + 1)))
    yard = random_yard(template, np.random.default_rng(draw(seeds)))
    return plan, Chromosome(tuple(seq), yard)


@st.composite
def yard_pairs(draw, max_stacks=5):
    """Two random redistributions of one instance's yard."""
    _, template = draw(instances(max_stacks))
    first = random_yard(template, np.random.default_rng(draw(seeds)))
    second = random_yard(template, np.random.default_rng(draw(seeds)))
    return first, second
