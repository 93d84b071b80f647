from quaydeck.scenarios.generator import (
    PRESETS, ScenarioConfig, generate_instance, preset, preset_ids,
)

__all__ = ['PRESETS', 'ScenarioConfig', 'generate_instance', 'preset', 'preset_ids']
