from quaydeck.reports.csv_reports import (
    HISTORY_COLUMNS, PLOT_COLUMNS, RUN_COLUMNS, STATS_COLUMNS, TRACE_COLUMNS,
    history_frame, read_frame, read_trace, runs_frame, trace_frame, write_frame, write_trace,
)
from quaydeck.reports.instances import (
    instance_from_json, instance_to_json, load_instance, load_solution,
    save_instance, save_solution, solution_to_json,
)

__all__ = [
    'HISTORY_COLUMNS', 'PLOT_COLUMNS', 'RUN_COLUMNS', 'STATS_COLUMNS', 'TRACE_COLUMNS',
    'history_frame', 'read_frame', 'read_trace', 'runs_frame', 'trace_frame',
    'write_frame', 'write_trace', 'instance_from_json', 'instance_to_json',
    'load_instance', 'load_solution', 'save_instance', 'save_solution', 'solution_to_json',
]
