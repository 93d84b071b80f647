from quaydeck.core.models import (
    Chromosome, ContainerTag, CostBreakdown, ShipRowPlan, ShipStackPlan,
    TimingParams, Violation, YardState,
)
from quaydeck.core.validation import InstanceValidator, validate_instance

__all__ = [
    'Chromosome', 'ContainerTag', 'CostBreakdown', 'ShipRowPlan', 'ShipStackPlan',
    'TimingParams', 'Violation', 'YardState', 'InstanceValidator', 'validate_instance',
]
