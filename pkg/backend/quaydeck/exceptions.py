"""
Domain errors raised by quaydeck services.
"""


class QuaydeckError(Exception):
    """Base class for every error raised on purpose by quaydeck."""


class InstanceFormatError(QuaydeckError):
    """An instance file does not follow the JSON instance schema."""


class SimulationError(QuaydeckError):
    """The simulator cannot complete the given chromosome."""


class NoCapacity(SimulationError):
    """Every yard stack other than the source is at the height cap."""


class ContainerNotFound(SimulationError):
    """A container to be loaded is absent from the dockyard."""


class InfeasibleTemplate(QuaydeckError):
    """The ship-bound tags of a yard template cannot fit under the cap."""


class RepairOverflow(QuaydeckError):
    """Crossover repair could not place a dropped tag under the cap."""


class AllInfeasible(QuaydeckError):
    """Every member of a population has infinite cost."""


class UnknownScenario(QuaydeckError):
    """Scenario id outside the preset table."""


class GenerationInfeasible(QuaydeckError):
    """A scenario configuration cannot hold its tags in the yard."""


class ZeroVariance(QuaydeckError):
    """A statistic is undefined because a sample has no spread."""
