"""
Core domain types for quay-crane dual cycling with dockyard rehandles.
A ship row plan, the dockyard arrangement and the composite chromosome
are immutable value objects shared by every other module.
"""

import re
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple


# Tags render as "<ship stack><position letters>", e.g. "3A"
TAG_PATTERN = re.compile(r'^(\d+)([A-Z]+)$')

# Foreign containers (not bound for this ship) are anonymous slots
FOREIGN_LABEL = 'b'


def position_letters(position: int) -> str:
    """Spreadsheet-style letters for a 1-based position: 1 -> A, 27 -> AA."""
    letters = ''
    while position > 0:
        position, rem = divmod(position - 1, 26)
        letters = chr(ord('A') + rem) + letters
    return letters


def letters_position(letters: str) -> int:
    value = 0
    for ch in letters:
        value = value * 26 + (ord(ch) - ord('A') + 1)
    return value


@dataclass(frozen=True, order=True)
class ContainerTag:
    """
    Identifies an outbound container by where it goes on the ship row.

    '3A' is the first container loaded (bottom-up) into ship stack 3.
    """

    ship_stack: int
    tier_label: int

    def __post_init__(self):
        if self.ship_stack < 1 or self.tier_label < 1:
            raise ValueError(f"Invalid container tag ({self.ship_stack}, {self.tier_label})")

    @property
    def label(self) -> str:
        return f"{self.ship_stack}{position_letters(self.tier_label)}"

    def __str__(self) -> str:
        return self.label

    @classmethod
    def parse(cls, text: str) -> 'ContainerTag':
        match = TAG_PATTERN.match(text.strip().upper())
        if not match:
            raise ValueError(f"Invalid container tag: {text!r}")
        return cls(int(match.group(1)), letters_position(match.group(2)))


# A yard slot holds a ship-bound tag, or None for a foreign container
Slot = Optional[ContainerTag]


@dataclass(frozen=True)
class ShipStackPlan:
    """Unloading/loading requirement of one ship stack."""

    stay: int
    unload: int
    load: Tuple[ContainerTag, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'load', tuple(self.load))
        if self.stay < 0 or self.unload < 0:
            raise ValueError(f"Negative container count (stay={self.stay}, unload={self.unload})")


@dataclass(frozen=True)
class ShipRowPlan:
    """
    Unloading and loading plan of one ship row.

    Stacks are addressed 1-based, as on the stowage plan.
    """

    stacks: Tuple[ShipStackPlan, ...]
    max_height: int

    def __post_init__(self):
        object.__setattr__(self, 'stacks', tuple(self.stacks))
        if self.max_height < 1:
            raise ValueError(f"max_height must be positive, got {self.max_height}")

    @property
    def num_stacks(self) -> int:
        return len(self.stacks)

    @property
    def total_unloads(self) -> int:
        return sum(s.unload for s in self.stacks)

    @property
    def total_loads(self) -> int:
        return sum(len(s.load) for s in self.stacks)

    @property
    def unload_counts(self) -> Tuple[int, ...]:
        return tuple(s.unload for s in self.stacks)

    def stack(self, index: int) -> ShipStackPlan:
        """Return ship stack `index` (1-based)."""
        return self.stacks[index - 1]

    def load_tags(self) -> List[ContainerTag]:
        return [tag for s in self.stacks for tag in s.load]


@dataclass(frozen=True)
class YardState:
    """
    Dockyard bay holding the outbound containers.

    Each stack lists its slots bottom-up; adjacent indices are adjacent
    stacks of the same bay. Stack indices are 0-based.
    """

    stacks: Tuple[Tuple[Slot, ...], ...]
    cap: int

    def __post_init__(self):
        object.__setattr__(self, 'stacks', tuple(tuple(s) for s in self.stacks))
        if self.cap < 1:
            raise ValueError(f"Yard height cap must be positive, got {self.cap}")

    @property
    def heights(self) -> Tuple[int, ...]:
        return tuple(len(s) for s in self.stacks)

    def tags(self) -> List[ContainerTag]:
        """Ship-bound tags in row-major order (stack by stack, bottom-up)."""
        return [slot for s in self.stacks for slot in s if slot is not None]

    def tag_rows(self) -> List[List[ContainerTag]]:
        return [[slot for slot in s if slot is not None] for s in self.stacks]

    def foreign_counts(self) -> List[int]:
        return [sum(1 for slot in s if slot is None) for s in self.stacks]

    def foreign_offsets(self) -> List[List[int]]:
        """For each foreign container, the number of ship-bound tags beneath it."""
        offsets = []
        for stack in self.stacks:
            below = 0
            stack_offsets = []
            for slot in stack:
                if slot is None:
                    stack_offsets.append(below)
                else:
                    below += 1
            offsets.append(stack_offsets)
        return offsets

    def with_tag_rows(self, rows: Sequence[Sequence[ContainerTag]]) -> 'YardState':
        """
        Rebuild the yard with new ship-bound rows.

        Foreign containers stay in their own stack and keep the number of
        tags beneath them, clipped to the new row length.
        """
        if len(rows) != len(self.stacks):
            raise ValueError(f"Expected {len(self.stacks)} rows, got {len(rows)}")

        stacks = []
        for row, offsets in zip(rows, self.foreign_offsets()):
            clipped = sorted(min(k, len(row)) for k in offsets)
            stack: List[Slot] = []
            fi = 0
            for t, tag in enumerate(row):
                while fi < len(clipped) and clipped[fi] == t:
                    stack.append(None)
                    fi += 1
                stack.append(tag)
            stack.extend([None] * (len(clipped) - fi))
            stacks.append(tuple(stack))
        return YardState(tuple(stacks), self.cap)

    def locate(self, tag: ContainerTag) -> Optional[Tuple[int, int]]:
        """Return (stack index, slot index) of a tag, or None."""
        for i, stack in enumerate(self.stacks):
            for j, slot in enumerate(stack):
                if slot == tag:
                    return i, j
        return None

    def labels(self) -> List[List[str]]:
        return [[FOREIGN_LABEL if slot is None else slot.label for slot in s] for s in self.stacks]

    @classmethod
    def from_labels(cls, stacks: Sequence[Sequence[str]], cap: int) -> 'YardState':
        return cls(
            tuple(tuple(None if text == FOREIGN_LABEL else ContainerTag.parse(text) for text in s)
                  for s in stacks),
            cap
        )


@dataclass(frozen=True)
class Chromosome:
    """Composite solution: unloading sequence (1D) + dockyard plan (2D)."""

    unload_seq: Tuple[int, ...]
    yard: YardState

    def __post_init__(self):
        object.__setattr__(self, 'unload_seq', tuple(int(c) for c in self.unload_seq))

    @property
    def key(self) -> Tuple:
        return self.unload_seq, self.yard.stacks


@dataclass(frozen=True)
class TimingParams:
    """Crane and gantry timings, in seconds."""

    alpha: float = 90.0
    beta: float = 170.0
    gamma: float = 60.0

    def __post_init__(self):
        for name in ('alpha', 'beta', 'gamma'):
            if not getattr(self, name) > 0:
                raise ValueError(f"Timing {name} must be strictly positive")

    def scaled(self, factor: float) -> 'TimingParams':
        return TimingParams(self.alpha * factor, self.beta * factor, self.gamma * factor)

    @classmethod
    def preset(cls, name: str) -> 'TimingParams':
        try:
            return TIMING_PRESETS[name]
        except KeyError:
            raise ValueError(f"Unknown timing preset {name!r}; choose from {sorted(TIMING_PRESETS)}")


TIMING_PRESETS: Dict[str, TimingParams] = {
    'standard': TimingParams(90.0, 170.0, 60.0),
    # Field trial means: single cycle 1 min 45 s, double cycle 2 min 50 s
    'tacoma': TimingParams(105.0, 170.0, 60.0),
}


@dataclass(frozen=True)
class CostBreakdown:
    """
    Cycle counts and times of one simulated operation.

    tu / tl hold the unload and load completion time of each ship stack,
    in stack order (index 0 is stack 1).
    """

    singles: int
    duals: int
    rehandles: int
    total_seconds: float
    tu: Tuple[float, ...] = field(default=())
    tl: Tuple[float, ...] = field(default=())

    @property
    def total_minutes(self) -> float:
        return self.total_seconds / 60.0

    @property
    def moves(self) -> int:
        """Containers moved by the quay crane (w_s + 2 w_d)."""
        return self.singles + 2 * self.duals

    def operation_seconds(self, timing: TimingParams) -> float:
        """Crane time without dockyard rehandles."""
        return timing.alpha * self.singles + timing.beta * self.duals

    def as_dict(self) -> Dict:
        return {
            'singles': self.singles,
            'duals': self.duals,
            'rehandles': self.rehandles,
            'total_seconds': self.total_seconds,
            'tu': list(self.tu),
            'tl': list(self.tl),
        }


@dataclass(frozen=True)
class Violation:
    """One broken instance invariant."""

    code: str
    where: str
    message: str

    def __str__(self) -> str:
        return f"[{self.code}] {self.where}: {self.message}"


def iter_slots(yard: YardState) -> Iterator[Tuple[int, int, Slot]]:
    for i, stack in enumerate(yard.stacks):
        for j, slot in enumerate(stack):
            yield i, j, slot
