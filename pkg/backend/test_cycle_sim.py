"""
Cycle simulator tests, checked against hand-worked instances and an
independent step-by-step replay.
"""

import itertools
import math

import pytest
from hypothesis import assume, given

from instance_strategies import solutions
from quaydeck.core.models import (
    Chromosome, ContainerTag, ShipRowPlan, ShipStackPlan, TimingParams, YardState,
)
from quaydeck.exceptions import ContainerNotFound, NoCapacity, SimulationError
from quaydeck.reports.csv_reports import read_trace, write_trace
from quaydeck.simulation import (
    CycleMode, CycleSimulator, EventKind, calculate_rehandles, evaluate, evaluate_or_inf,
    nearest_lowest_stack, unload_first_stack,
)


def tag(label):
    return ContainerTag.parse(label)


def flat_yard(heights, cap=6):
    return YardState(tuple((None,) * h for h in heights), cap)


def replay(plan, seq, yard):
    """
    Straightforward re-statement of the crane rules, returning (w_s, w_d, R).

    Loading follows seq; a stack is loadable once its own unloads are done.
    Blockers go to the lowest other stack with room, nearest on ties.
    """
    stacks = [list(s) for s in yard.stacks]
    remaining = {c: plan.stack(c).unload for c in seq}
    pending = {c: list(plan.stack(c).load) for c in seq}
    ws = wd = rehandles = 0

    def fetch(target):
        src = next(i for i, s in enumerate(stacks) if target in s)
        moved = 0
        while stacks[src][-1] != target:
            box = stacks[src].pop()
            room = [i for i in range(len(stacks)) if i != src and len(stacks[i]) < yard.cap]
            dest = sorted(room, key=lambda i: (len(stacks[i]), abs(i - src), i))[0]
            stacks[dest].append(box)
            moved += 1
        stacks[src].pop()
        return moved

    def loadable():
        for c in seq:
            if pending[c]:
                return c if remaining[c] == 0 else None
        return None

    ws += remaining[seq[0]]
    remaining[seq[0]] = 0
    for c in seq[1:]:
        while remaining[c] > 0:
            remaining[c] -= 1
            target = loadable()
            if target is None:
                ws += 1
            else:
                rehandles += fetch(pending[target].pop(0))
                wd += 1
    while (target := loadable()) is not None:
        rehandles += fetch(pending[target].pop(0))
        ws += 1
    return ws, wd, rehandles


class TestNearestLowestStack:

    def test_unique_minimum(self):
        assert nearest_lowest_stack(flat_yard([3, 1, 3]), source=0) == 1

    def test_tie_prefers_nearer(self):
        assert nearest_lowest_stack(flat_yard([2, 1, 1]), source=0) == 1

    def test_tie_at_equal_distance_prefers_lower_index(self):
        assert nearest_lowest_stack(flat_yard([1, 4, 1]), source=1) == 0

    def test_no_capacity(self):
        with pytest.raises(NoCapacity):
            nearest_lowest_stack(flat_yard([6, 6, 2]), source=2)


class TestCalculateRehandles:

    def test_target_on_top(self, worked_instance):
        _, yard = worked_instance
        count, after = calculate_rehandles(yard, tag('3A'))
        assert count == 0
        assert after.locate(tag('3A')) is None
        assert after.heights == (4, 3, 3, 5)

    def test_two_blockers(self, worked_instance):
        _, yard = worked_instance
        count, after = calculate_rehandles(yard, tag('1A'))
        assert count == 2
        assert after.labels()[1] == ['b', '2C', '4A', '3A', '1B']
        assert after.labels()[2] == ['b']

    def test_missing_target(self, worked_instance):
        _, yard = worked_instance
        with pytest.raises(ContainerNotFound):
            calculate_rehandles(yard, tag('9A'))


class TestUnloadFirstStack:

    def test_counts_unloads_only(self, worked_instance):
        plan, _ = worked_instance
        state, singles = unload_first_stack(plan, [1, 2, 3, 4])
        assert singles == 3
        assert state.remaining_unloads[1] == 0
        assert state.remaining_unloads[2] == 3

    def test_empty_first_stack(self):
        plan = ShipRowPlan((ShipStackPlan(1, 0), ShipStackPlan(0, 2)), max_height=4)
        _, singles = unload_first_stack(plan, [1, 2])
        assert singles == 0

    def test_empty_sequence(self):
        plan = ShipRowPlan((), max_height=4)
        with pytest.raises(SimulationError):
            unload_first_stack(plan, [])


class TestLoadingOperation:

    def test_nothing_unloaded_yet(self, oracle_instance):
        plan, yard = oracle_instance
        sim = CycleSimulator(plan, Chromosome((1, 2, 3), yard), TimingParams())
        assert sim.loading_operation() == (False, 0)

    def test_tag_on_top(self, oracle_instance):
        plan, yard = oracle_instance
        sim = CycleSimulator(plan, Chromosome((1, 2, 3), yard), TimingParams())
        sim.state.remaining_unloads[1] = 0
        assert sim.loading_operation() == (True, 0)

    def test_tag_under_one_blocker(self, oracle_instance):
        plan, yard = oracle_instance
        sim = CycleSimulator(plan, Chromosome((2, 1, 3), yard), TimingParams())
        sim.state.remaining_unloads[2] = 0
        assert sim.loading_operation() == (True, 1)


class TestEvaluate:

    def test_worked_loading_sequence(self, worked_instance, timing):
        plan, yard = worked_instance
        breakdown, trace = evaluate(Chromosome((3, 1, 2, 4), yard), plan, timing)
        assert breakdown.rehandles == 3
        assert (breakdown.singles, breakdown.duals) == (8, 6)
        assert breakdown.total_seconds == 1920
        assert trace.count(EventKind.REHANDLE) == 3

    def test_worked_completion_times(self, worked_instance, timing):
        plan, yard = worked_instance
        breakdown, _ = evaluate(Chromosome((3, 1, 2, 4), yard), plan, timing)
        assert breakdown.tu[2] == 180
        assert breakdown.tl[2] == 350
        assert breakdown.tu[0] == 670
        assert breakdown.tl[0] == 840

    def test_worked_stack_order_costs_more_rehandles(self, worked_instance, timing):
        plan, yard = worked_instance
        breakdown, _ = evaluate(Chromosome((1, 2, 3, 4), yard), plan, timing)
        assert breakdown.rehandles == 5

    def test_single_ship_stack(self, timing):
        plan = ShipRowPlan((ShipStackPlan(0, 3, (tag('1A'), tag('1B'))),), max_height=4)
        yard = YardState.from_labels([['1A'], ['1B']], cap=6)
        breakdown, _ = evaluate(Chromosome((1,), yard), plan, timing)
        assert (breakdown.singles, breakdown.duals, breakdown.rehandles) == (5, 0, 0)

    def test_oracle_instance(self, oracle_instance, timing):
        plan, yard = oracle_instance
        breakdown, _ = evaluate(Chromosome((1, 2, 3), yard), plan, timing)
        assert (breakdown.singles, breakdown.duals, breakdown.rehandles) == (3, 4, 1)
        assert breakdown.total_seconds == 1010

    @pytest.mark.parametrize('seq', list(itertools.permutations([1, 2, 3])))
    def test_oracle_instance_matches_replay(self, oracle_instance, timing, seq):
        plan, yard = oracle_instance
        breakdown, _ = evaluate(Chromosome(seq, yard), plan, timing)
        assert (breakdown.singles, breakdown.duals, breakdown.rehandles) == replay(plan, seq, yard)

    def test_single_cycle_mode(self, worked_instance, timing):
        plan, yard = worked_instance
        breakdown, trace = evaluate(Chromosome((3, 1, 2, 4), yard), plan, timing, CycleMode.SINGLE)
        assert breakdown.duals == 0
        assert breakdown.singles == plan.total_unloads + plan.total_loads
        assert trace.count(EventKind.SINGLE_LOAD) == plan.total_loads

    def test_dual_events_name_unloaded_stack(self, oracle_instance, timing):
        plan, yard = oracle_instance
        _, trace = evaluate(Chromosome((1, 2, 3), yard), plan, timing)
        duals = trace.of_kind(EventKind.DUAL)
        assert [e.unloaded_stack for e in duals] == [2, 3, 3, 3]
        assert [e.ship_stack for e in duals] == [1, 2, 2, 3]

    def test_missing_container(self, oracle_instance, timing):
        plan, yard = oracle_instance
        short = YardState.from_labels([['b', '3B', '1A'], [], ['b', 'b', '2A', '3A'], []], cap=6)
        with pytest.raises(ContainerNotFound):
            evaluate(Chromosome((1, 2, 3), short), plan, timing)
        breakdown, cost = evaluate_or_inf(Chromosome((1, 2, 3), short), plan, timing)
        assert breakdown is None and math.isinf(cost)

    def test_trace_csv_roundtrip(self, worked_instance, timing, tmp_path):
        plan, yard = worked_instance
        _, trace = evaluate(Chromosome((3, 1, 2, 4), yard), plan, timing)
        path = write_trace(tmp_path / 'trace.csv', trace)
        assert read_trace(path) == trace


class TestSimulatorProperties:

    @given(solutions())
    def test_matches_replay(self, case):
        plan, chromosome = case
        breakdown, _ = evaluate_or_inf(chromosome, plan, TimingParams())
        assume(breakdown is not None)
        expected = replay(plan, list(chromosome.unload_seq), chromosome.yard)
        assert (breakdown.singles, breakdown.duals, breakdown.rehandles) == expected

    @given(solutions())
    def test_cost_decomposition_and_conservation(self, case):
        plan, chromosome = case
        timing = TimingParams()
        try:
            breakdown, trace = evaluate(chromosome, plan, timing)
        except NoCapacity:
            assume(False)
        assert breakdown.total_seconds == 90 * breakdown.singles + 170 * breakdown.duals + 60 * breakdown.rehandles
        assert breakdown.moves == plan.total_unloads + plan.total_loads
        assert breakdown.duals <= min(plan.total_unloads, plan.total_loads)
        assert breakdown.rehandles == trace.count(EventKind.REHANDLE)
        unloads = trace.count(EventKind.SINGLE_UNLOAD) + trace.count(EventKind.DUAL)
        loads = trace.count(EventKind.SINGLE_LOAD) + trace.count(EventKind.DUAL)
        assert unloads == plan.total_unloads
        assert loads == plan.total_loads

    @given(solutions())
    def test_timeline(self, case):
        plan, chromosome = case
        try:
            breakdown, trace = evaluate(chromosome, plan, TimingParams())
        except NoCapacity:
            assume(False)
        stamps = [e.timestamp_s for e in trace.events]
        assert stamps == sorted(stamps)
        for c in range(1, plan.num_stacks + 1):
            unload_times = [e.timestamp_s for e in trace.events
                            if e.kind in (EventKind.SINGLE_UNLOAD, EventKind.DUAL) and e.unloaded_stack == c]
            load_times = [e.timestamp_s for e in trace.events
                          if e.kind in (EventKind.SINGLE_LOAD, EventKind.DUAL) and e.ship_stack == c]
            if unload_times and load_times:
                assert min(load_times) >= max(unload_times)
            assert breakdown.tl[c - 1] >= breakdown.tu[c - 1]

    @given(solutions())
    def test_timing_scale_and_determinism(self, case):
        plan, chromosome = case
        timing = TimingParams()
        first, cost = evaluate_or_inf(chromosome, plan, timing)
        assume(first is not None)
        again, _ = evaluate(chromosome, plan, timing)
        scaled, _ = evaluate(chromosome, plan, timing.scaled(3))
        assert again == first
        assert scaled.total_seconds == 3 * first.total_seconds
        assert (scaled.singles, scaled.duals, scaled.rehandles) == (first.singles, first.duals, first.rehandles)
