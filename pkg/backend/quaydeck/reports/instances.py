"""
Instance and solution JSON codec.

Instance schema:
    {"plan": {"max_height": int,
              "stacks": [{"stay": int, "unload": int, "load": ["1A", ...]}]},
     "yard": {"cap": int, "stacks": [["b" | "<tag>", ...]]}}
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Tuple, Union

from quaydeck.core.models import (
    Chromosome, ContainerTag, CostBreakdown, ShipRowPlan, ShipStackPlan, YardState,
)
from quaydeck.exceptions import InstanceFormatError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def plan_to_json(plan: ShipRowPlan) -> Dict[str, Any]:
    return {
        'max_height': plan.max_height,
        'stacks': [
            {'stay': s.stay, 'unload': s.unload, 'load': [tag.label for tag in s.load]}
            for s in plan.stacks
        ],
    }


def yard_to_json(yard: YardState) -> Dict[str, Any]:
    return {'cap': yard.cap, 'stacks': yard.labels()}


def instance_to_json(plan: ShipRowPlan, yard: YardState) -> Dict[str, Any]:
    return {'plan': plan_to_json(plan), 'yard': yard_to_json(yard)}


def plan_from_json(data: Dict[str, Any]) -> ShipRowPlan:
    stacks = []
    for c, entry in enumerate(data['stacks'], start=1):
        try:
            stacks.append(ShipStackPlan(
                int(entry['stay']),
                int(entry['unload']),
                tuple(ContainerTag.parse(text) for text in entry.get('load', [])),
            ))
        except KeyError as e:
            raise InstanceFormatError(f"Ship stack {c} is missing field {e}")
    return ShipRowPlan(tuple(stacks), int(data['max_height']))


def yard_from_json(data: Dict[str, Any]) -> YardState:
    return YardState.from_labels(data['stacks'], int(data['cap']))


def instance_from_json(data: Dict[str, Any]) -> Tuple[ShipRowPlan, YardState]:
    """
    Decode an instance document.

    Raises:
        InstanceFormatError: missing fields, bad tags or invalid counts
    """
    try:
        return plan_from_json(data['plan']), yard_from_json(data['yard'])
    except InstanceFormatError:
        raise
    except (KeyError, TypeError) as e:
        raise InstanceFormatError(f"Malformed instance: missing or invalid field {e}")
    except ValueError as e:
        raise InstanceFormatError(f"Malformed instance: {e}")


def dumps(document: Dict[str, Any]) -> str:
    return json.dumps(document, indent=2) + '\n'


def save_instance(path: PathLike, plan: ShipRowPlan, yard: YardState) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(instance_to_json(plan, yard)), encoding='utf-8')
    logger.info(f"Instance written to {path}")
    return path


def _read_json(path: Path) -> Any:
    try:
        text = path.read_text(encoding='utf-8')
    except FileNotFoundError:
        raise
    except UnicodeDecodeError as e:
        raise InstanceFormatError(f"{path}: not UTF-8 text ({e.reason} at byte {e.start})")
    except OSError as e:
        raise InstanceFormatError(f"{path}: cannot read ({e.strerror or e})")
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InstanceFormatError(f"{path}: invalid JSON ({e})")


def load_instance(path: PathLike) -> Tuple[ShipRowPlan, YardState]:
    """
    Read an instance file.

    Raises:
        FileNotFoundError: path does not exist
        InstanceFormatError: unreadable file, invalid JSON or schema
    """
    path = Path(path)
    data = _read_json(path)
    try:
        return instance_from_json(data)
    except InstanceFormatError as e:
        raise InstanceFormatError(f"{path}: {e}")


def solution_to_json(strategy: str, chromosome: Chromosome, breakdown: CostBreakdown,
                     **extra: Any) -> Dict[str, Any]:
    document = {
        'strategy': strategy,
        'unload_seq': list(chromosome.unload_seq),
        'yard': yard_to_json(chromosome.yard),
        'breakdown': breakdown.as_dict(),
    }
    document.update(extra)
    return document


def save_solution(path: PathLike, document: Dict[str, Any]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(document), encoding='utf-8')
    return path


def load_solution(path: PathLike) -> Tuple[str, Chromosome, CostBreakdown]:
    path = Path(path)
    data = _read_json(path)
    try:
        strategy = str(data['strategy'])
        chromosome = Chromosome(tuple(data['unload_seq']), yard_from_json(data['yard']))
        b = data['breakdown']
        breakdown = CostBreakdown(
            int(b['singles']), int(b['duals']), int(b['rehandles']), float(b['total_seconds']),
            tuple(float(x) for x in b['tu']), tuple(float(x) for x in b['tl']),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise InstanceFormatError(f"{path}: malformed solution ({e})")
    return strategy, chromosome, breakdown
