"""
Shared fixtures: hand-checked instances and hypothesis profiles.
"""

import os

import pytest
from hypothesis import HealthCheck, settings as hypothesis_settings

from quaydeck.core.models import ContainerTag, ShipRowPlan, ShipStackPlan, TimingParams, YardState

hypothesis_settings.register_profile(
    'default', max_examples=200, suppress_health_check=[HealthCheck.too_slow],
)
hypothesis_settings.register_profile(
    'acceptance', max_examples=10_000, deadline=None, suppress_health_check=[HealthCheck.too_slow],
)
hypothesis_settings.load_profile(os.getenv('HYPOTHESIS_PROFILE', 'default'))


def tags(*labels):
    return tuple(ContainerTag.parse(label) for label in labels)


@pytest.fixture
def timing():
    return TimingParams()


@pytest.fixture
def worked_instance():
    """
    Four-stack worked example (A..D -> 1..4).

    Ship stack A keeps two containers aboard and loads 1A, 1B; the yard
    holds every outbound tag over one or two foreign containers.
    """
    plan = ShipRowPlan((
        ShipStackPlan(stay=2, unload=3, load=tags('1A', '1B')),
        ShipStackPlan(stay=0, unload=3, load=tags('2A', '2B', '2C', '2D')),
        ShipStackPlan(stay=2, unload=2, load=tags('3A')),
        ShipStackPlan(stay=2, unload=2, load=tags('4A', '4B', '4C')),
    ), max_height=5)
    yard = YardState.from_labels([
        ['b', 'b', '2A', '2B'],
        ['b', '2C', '4A'],
        ['b', '1A', '1B', '3A'],
        ['b', 'b', '4C', '4B', '2D'],
    ], cap=6)
    return plan, yard


@pytest.fixture
def oracle_instance():
    """Three ship stacks, U=[2,1,3], L=[1,2,2], scrambled four-stack yard."""
    plan = ShipRowPlan((
        ShipStackPlan(stay=0, unload=2, load=tags('1A')),
        ShipStackPlan(stay=0, unload=1, load=tags('2A', '2B')),
        ShipStackPlan(stay=0, unload=3, load=tags('3A', '3B')),
    ), max_height=4)
    yard = YardState.from_labels([
        ['b', '3B', '1A'],
        ['2B'],
        ['b', 'b', '2A', '3A'],
        [],
    ], cap=6)
    return plan, yard


@pytest.fixture
def crossover_parents():
    """Two five-stack yard plans over tags 1A..4C, no foreign containers."""
    first = YardState.from_labels([
        ['4C', '2B'],
        ['2C', '4A', '3A'],
        ['1A', '1B', '1C'],
        ['2A', '4B'],
        ['2D', '3B'],
    ], cap=6)
    second = YardState.from_labels([
        ['3A', '4B', '3B'],
        ['1A', '2D', '4C'],
        ['2B', '4A'],
        ['1B'],
        ['2A', '2C', '1C'],
    ], cap=6)
    return first, second
