from quaydeck.stats.ttest import (
    PairedSample, TTestResult, critical_value, describe, improvement_pct,
    paired_t_test, pearson_r, seconds_to_minutes, two_tailed_p,
)

__all__ = [
    'PairedSample', 'TTestResult', 'critical_value', 'describe', 'improvement_pct',
    'paired_t_test', 'pearson_r', 'seconds_to_minutes', 'two_tailed_p',
]
