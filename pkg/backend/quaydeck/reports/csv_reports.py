"""
CSV reports built with pandas: simulation traces, GA histories, benchmark
runs, t-test statistics and plot data.
"""

import logging
from pathlib import Path
from typing import Iterable, List, Sequence, Tuple, Union

import pandas as pd

from quaydeck.core.models import ContainerTag
from quaydeck.simulation.cycle_sim import EventKind, SimEvent, SimTrace

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

TRACE_COLUMNS = ['kind', 'ship_stack', 'yard_stack', 'tag', 'timestamp_s', 'unloaded_stack']
HISTORY_COLUMNS = ['generation', 'best_cost_s', 'mean_cost_s']
RUN_COLUMNS = [
    'scenario', 'stacks', 'max_height', 'strategy', 'rep', 'seed',
    'singles', 'duals', 'rehandles', 'total_s', 'total_min',
]
STATS_COLUMNS = [
    'scenario', 'stacks', 'max_height', 'strategy', 'min', 'max', 'mean', 'sd',
    'r', 't', 'p', 'significant', 'improvement_pct',
]
PLOT_COLUMNS = ['strategy', 'stacks', 'mean_minutes']

# Nullable integer columns of the trace
_INT_COLUMNS = ['ship_stack', 'yard_stack', 'unloaded_stack']


def trace_frame(trace: SimTrace) -> pd.DataFrame:
    rows = [
        {
            'kind': e.kind.value,
            'ship_stack': e.ship_stack,
            'yard_stack': e.yard_stack,
            'tag': e.tag.label if e.tag is not None else None,
            'timestamp_s': e.timestamp_s,
            'unloaded_stack': e.unloaded_stack,
        }
        for e in trace.events
    ]
    df = pd.DataFrame(rows, columns=TRACE_COLUMNS)
    for column in _INT_COLUMNS:
        df[column] = df[column].astype('Int64')
    return df


def write_trace(path: PathLike, trace: SimTrace) -> Path:
    return write_frame(path, trace_frame(trace))


def read_trace(path: PathLike) -> SimTrace:
    df = pd.read_csv(path, dtype={'tag': str, **{c: 'Int64' for c in _INT_COLUMNS}})

    def value(x):
        return None if pd.isna(x) else int(x)

    events = tuple(
        SimEvent(
            kind=EventKind(row.kind),
            ship_stack=value(row.ship_stack),
            yard_stack=value(row.yard_stack),
            tag=None if pd.isna(row.tag) else ContainerTag.parse(row.tag),
            timestamp_s=float(row.timestamp_s),
            unloaded_stack=value(row.unloaded_stack),
        )
        for row in df.itertuples(index=False)
    )
    return SimTrace(events)


def history_frame(history: Iterable[Tuple[int, float, float]], **keys) -> pd.DataFrame:
    """GA history rows; `keys` become leading constant columns (strategy, scenario, rep)."""
    df = pd.DataFrame(list(history), columns=HISTORY_COLUMNS)
    for position, (name, value) in enumerate(keys.items()):
        df.insert(position, name, value)
    return df


def runs_frame(rows: Sequence[dict]) -> pd.DataFrame:
    df = pd.DataFrame(list(rows), columns=RUN_COLUMNS)
    return df.sort_values(['scenario', 'strategy', 'rep'], kind='mergesort').reset_index(drop=True)


def write_frame(path: PathLike, df: pd.DataFrame) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(path, index=False)
    logger.debug(f"Wrote {len(df)} row(s) to {path}")
    return path


def read_frame(path: PathLike, columns: List[str] = None) -> pd.DataFrame:
    """Read a report CSV, checking its header when `columns` is given."""
    df = pd.read_csv(path)
    if columns is not None and list(df.columns) != list(columns):
        raise ValueError(f"{path}: expected columns {columns}, found {list(df.columns)}")
    return df
