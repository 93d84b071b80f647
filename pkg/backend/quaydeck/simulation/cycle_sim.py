"""
Cycle Simulator - replays an unloading sequence and a dockyard plan
through one quay crane and counts single cycles, dual cycles and
dockyard rehandles.
"""

import enum
import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from quaydeck.core.models import (
    Chromosome, ContainerTag, CostBreakdown, ShipRowPlan, Slot, TimingParams, YardState,
)
from quaydeck.exceptions import ContainerNotFound, NoCapacity, SimulationError

logger = logging.getLogger(__name__)


class CycleMode(enum.Enum):
    DUAL = 'dual'
    SINGLE = 'single'


class EventKind(str, enum.Enum):
    SINGLE_UNLOAD = 'single-unload'
    SINGLE_LOAD = 'single-load'
    DUAL = 'dual'
    REHANDLE = 'rehandle'


@dataclass(frozen=True)
class SimEvent:
    """
    One crane cycle or gantry relocation.

    ship_stack is the stack loaded (load/dual), unloaded (single-unload)
    or served by the retrieval (rehandle). yard_stack is the pick-up stack
    of a load, or the destination of a rehandle. unloaded_stack names the
    stack emptied by the unload half of a cycle. timestamp_s is the clock
    when the event ends.
    """

    kind: EventKind
    ship_stack: Optional[int]
    yard_stack: Optional[int]
    tag: Optional[ContainerTag]
    timestamp_s: float
    unloaded_stack: Optional[int] = None


@dataclass(frozen=True)
class SimTrace:
    events: Tuple[SimEvent, ...]

    def count(self, kind: EventKind) -> int:
        return sum(1 for e in self.events if e.kind == kind)

    def of_kind(self, kind: EventKind) -> List[SimEvent]:
        return [e for e in self.events if e.kind == kind]


def nearest_lowest_index(heights: Sequence[int], cap: int, source: int) -> int:
    candidates = [i for i, h in enumerate(heights) if i != source and h < cap]
    if not candidates:
        raise NoCapacity(f"No yard stack other than {source} has room under cap {cap}")
    return min(candidates, key=lambda i: (heights[i], abs(i - source), i))


def nearest_lowest_stack(yard: YardState, source: int) -> int:
    """
    Destination of a container relocated off `source`.

    Lowest stack with room first, then the nearest one, then the lower index.
    """
    return nearest_lowest_index(yard.heights, yard.cap, source)


class YardBuffer:
    """Mutable working copy of a YardState used while simulating."""

    def __init__(self, yard: YardState):
        self.cap = yard.cap
        self.stacks: List[List[Slot]] = [list(s) for s in yard.stacks]
        self.where: Dict[ContainerTag, int] = {
            slot: i for i, s in enumerate(self.stacks) for slot in s if slot is not None
        }

    def retrieve(self, target: ContainerTag) -> Tuple[int, List[Tuple[Slot, int]]]:
        """
        Dig out and remove `target`.

        Returns the stack it was picked from and the (container, destination)
        relocations made, top-down.
        """
        source = self.where.get(target)
        if source is None:
            raise ContainerNotFound(f"Container {target} not found in the dockyard")

        stack = self.stacks[source]
        moves = []
        while stack[-1] != target:
            blocker = stack.pop()
            dest = nearest_lowest_index([len(s) for s in self.stacks], self.cap, source)
            self.stacks[dest].append(blocker)
            if blocker is not None:
                self.where[blocker] = dest
            moves.append((blocker, dest))

        stack.pop()
        del self.where[target]
        return source, moves

    def freeze(self) -> YardState:
        return YardState(tuple(tuple(s) for s in self.stacks), self.cap)


def calculate_rehandles(yard: YardState, target: ContainerTag) -> Tuple[int, YardState]:
    """
    Retrieve `target` from the yard.

    Every container above it is shifted, top-down, to the nearest lowest
    stack; each shift is one rehandle.

    Returns:
        (rehandle count, yard after the retrieval)
    """
    buffer = YardBuffer(yard)
    _, moves = buffer.retrieve(target)
    return len(moves), buffer.freeze()


@dataclass
class ShipState:
    """Progress of the ship row; lists are indexed by 1-based stack."""

    remaining_unloads: List[int]
    next_load: List[int]
    load_pointer: int = 0

    @classmethod
    def from_plan(cls, plan: ShipRowPlan) -> 'ShipState':
        return cls(
            remaining_unloads=[0] + [s.unload for s in plan.stacks],
            next_load=[0] * (plan.num_stacks + 1),
        )


def unload_first_stack(plan: ShipRowPlan, seq: Sequence[int],
                       state: Optional[ShipState] = None) -> Tuple[ShipState, int]:
    """
    Unload every non-staying container of the first stack of `seq`.

    Each container is one single cycle; stay-aboard containers are untouched.
    """
    state = state or ShipState.from_plan(plan)
    if not seq:
        raise SimulationError("Unloading sequence is empty")
    first = seq[0]
    singles = state.remaining_unloads[first]
    state.remaining_unloads[first] = 0
    return state, singles


class CycleSimulator:
    """
    Runs the crane over one chromosome.

    Loading follows the unloading sequence: a rolling pointer names the
    current loading stack, which becomes loadable once fully unloaded.
    """

    def __init__(self, plan: ShipRowPlan, chromosome: Chromosome, timing: TimingParams,
                 mode: CycleMode = CycleMode.DUAL, trace: bool = True):
        self.plan = plan
        self.seq = chromosome.unload_seq
        self.timing = timing
        self.mode = mode
        self.trace = trace

        self.yard = YardBuffer(chromosome.yard)
        self.state = ShipState.from_plan(plan)
        self.clock = 0.0
        self.singles = 0
        self.duals = 0
        self.rehandles = 0
        self.tu = [0.0] * (plan.num_stacks + 1)
        self.tl: List[Optional[float]] = [None] * (plan.num_stacks + 1)
        self.events: List[SimEvent] = []
        self._pending: Optional[Tuple[int, int, ContainerTag]] = None

    def _record(self, kind: EventKind, seconds: float, ship_stack: Optional[int],
                yard_stack: Optional[int] = None, tag: Optional[ContainerTag] = None,
                unloaded_stack: Optional[int] = None):
        self.clock += seconds
        if self.trace:
            self.events.append(SimEvent(kind, ship_stack, yard_stack, tag, self.clock, unloaded_stack))

    def _loading_done(self, c: int) -> bool:
        return self.state.next_load[c] >= len(self.plan.stack(c).load)

    def loads_pending(self) -> bool:
        return self.current_loading_stack(eligible_only=False) is not None

    def current_loading_stack(self, eligible_only: bool = True) -> Optional[int]:
        """Advance past fully loaded stacks; None if the pointer's stack cannot be loaded yet."""
        state = self.state
        while state.load_pointer < len(self.seq) and self._loading_done(self.seq[state.load_pointer]):
            state.load_pointer += 1
        if state.load_pointer >= len(self.seq):
            return None
        c = self.seq[state.load_pointer]
        if eligible_only and state.remaining_unloads[c] > 0:
            return None
        return c

    def loading_operation(self) -> Tuple[bool, int]:
        """
        Fetch the next container of the current loading stack from the yard.

        Returns:
            (loaded, rehandles incurred); (False, 0) when no stack can be loaded
        """
        c = self.current_loading_stack()
        if c is None:
            return False, 0

        tag = self.plan.stack(c).load[self.state.next_load[c]]
        source, moves = self.yard.retrieve(tag)
        for blocker, dest in moves:
            self._record(EventKind.REHANDLE, self.timing.gamma, c, dest, blocker)
        self.rehandles += len(moves)
        self.state.next_load[c] += 1
        self._pending = (c, source, tag)
        return True, len(moves)

    def _finish_load(self, kind: EventKind, seconds: float, unloaded_stack: Optional[int] = None):
        c, source, tag = self._pending
        self._pending = None
        self._record(kind, seconds, c, source, tag, unloaded_stack)
        if self._loading_done(c):
            self.tl[c] = self.clock

    def _unload_single(self, c: int):
        self.singles += 1
        self._record(EventKind.SINGLE_UNLOAD, self.timing.alpha, c, unloaded_stack=c)

    def _complete_loads(self):
        while True:
            loaded, _ = self.loading_operation()
            if not loaded:
                break
            self.singles += 1
            self._finish_load(EventKind.SINGLE_LOAD, self.timing.alpha)

    def _run_dual(self):
        _, singles = unload_first_stack(self.plan, self.seq, self.state)
        first = self.seq[0]
        for _ in range(singles):
            self._unload_single(first)
        self.tu[first] = self.clock

        for c in self.seq[1:]:
            for _ in range(self.plan.stack(c).unload):
                self.state.remaining_unloads[c] -= 1
                loaded = False
                if self.loads_pending():
                    loaded, _ = self.loading_operation()
                if loaded:
                    self.duals += 1
                    self._finish_load(EventKind.DUAL, self.timing.beta, unloaded_stack=c)
                else:
                    self._unload_single(c)
            self.tu[c] = self.clock

        self._complete_loads()

    def _run_single(self):
        for c in self.seq:
            for _ in range(self.plan.stack(c).unload):
                self.state.remaining_unloads[c] -= 1
                self._unload_single(c)
            self.tu[c] = self.clock
        self._complete_loads()

    def run(self) -> Tuple[CostBreakdown, SimTrace]:
        if self.mode == CycleMode.SINGLE:
            self._run_single()
        else:
            self._run_dual()

        n = self.plan.num_stacks
        tl = [self.tl[c] if self.tl[c] is not None else self.tu[c] for c in range(1, n + 1)]
        total = (self.timing.alpha * self.singles + self.timing.beta * self.duals
                 + self.timing.gamma * self.rehandles)
        breakdown = CostBreakdown(
            singles=self.singles,
            duals=self.duals,
            rehandles=self.rehandles,
            total_seconds=total,
            tu=tuple(self.tu[1:]),
            tl=tuple(tl),
        )
        return breakdown, SimTrace(tuple(self.events))


def evaluate(chromosome: Chromosome, plan: ShipRowPlan, timing: TimingParams,
             mode: CycleMode = CycleMode.DUAL, trace: bool = True) -> Tuple[CostBreakdown, SimTrace]:
    """
    Simulate the whole row and return its cost breakdown and event trace.

    Raises:
        ContainerNotFound, NoCapacity: the chromosome cannot be executed
        SimulationError: the unloading sequence is empty
    """
    return CycleSimulator(plan, chromosome, timing, mode, trace).run()


def evaluate_or_inf(chromosome: Chromosome, plan: ShipRowPlan, timing: TimingParams,
                    mode: CycleMode = CycleMode.DUAL) -> Tuple[Optional[CostBreakdown], float]:
    """Cost for search purposes: infeasible chromosomes score +inf."""
    try:
        breakdown, _ = evaluate(chromosome, plan, timing, mode, trace=False)
    except SimulationError as e:
        logger.warning(f"Infeasible chromosome scored +inf: {e}")
        return None, math.inf
    return breakdown, breakdown.total_seconds
