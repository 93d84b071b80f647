"""
Genetic operators over the composite chromosome.

The 1D part (unloading sequence) uses a two-point segment exchange with
duplicate repair and a two-gene swap mutation. The 2D part (dockyard plan)
swaps whole yard stacks between parents, exchanges a column segment on the
boundary stacks, then repairs duplicates and lost tags under the height cap.

Each random operator draws its cut points from a numpy Generator and hands
them to a deterministic kernel, so the kernels can be driven directly.
"""

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from quaydeck.core.models import Chromosome, ContainerTag, YardState
from quaydeck.exceptions import InfeasibleTemplate, RepairOverflow

logger = logging.getLogger(__name__)

Cut = Tuple[int, int]


def _repair_segment(child: List, lo: int, hi: int, reference: Sequence) -> List:
    """Drop duplicate genes inside [lo, hi), then append the lost ones in reference order."""
    outside = set(child[:lo]) | set(child[hi:])
    kept_segment = []
    for gene in child[lo:hi]:
        if gene in outside:
            continue
        outside.add(gene)
        kept_segment.append(gene)

    repaired = child[:lo] + kept_segment + child[hi:]
    present = set(repaired)
    repaired.extend(gene for gene in reference if gene not in present)
    return repaired


def two_point_exchange(a: Sequence, b: Sequence, lo: int, hi: int) -> Tuple[List, List]:
    """
    Exchange the segment [lo, hi) between two permutations and repair.

    Args:
        a, b: parent permutations of the same gene set
        lo, hi: cut points, 0 <= lo <= hi <= len(a)

    Returns:
        (child_a, child_b), both permutations of the parents' gene set
    """
    a, b = list(a), list(b)
    if len(a) != len(b):
        raise ValueError(f"Parents differ in length ({len(a)} vs {len(b)})")
    if not 0 <= lo <= hi <= len(a):
        raise ValueError(f"Invalid cut points ({lo}, {hi}) for length {len(a)}")

    child_a = a[:lo] + b[lo:hi] + a[hi:]
    child_b = b[:lo] + a[lo:hi] + b[hi:]
    return _repair_segment(child_a, lo, hi, a), _repair_segment(child_b, lo, hi, b)


def random_cuts(length: int, rng: np.random.Generator) -> Cut:
    lo, hi = sorted(int(x) for x in rng.integers(0, length + 1, size=2))
    return lo, hi


def crossover_1d(parent_a: Sequence[int], parent_b: Sequence[int],
                 rng: np.random.Generator) -> Tuple[List[int], List[int]]:
    lo, hi = random_cuts(len(parent_a), rng)
    return two_point_exchange(parent_a, parent_b, lo, hi)


def swap_positions(seq: Sequence[int], i: int, j: int) -> List[int]:
    out = list(seq)
    out[i], out[j] = out[j], out[i]
    return out


def mutate_1d(seq: Sequence[int], rng: np.random.Generator) -> List[int]:
    """Swap two uniformly chosen genes (possibly the same one)."""
    i, j = (int(x) for x in rng.integers(0, len(seq), size=2))
    return swap_positions(seq, i, j)


def random_permutation(num_stacks: int, rng: np.random.Generator) -> List[int]:
    return [int(c) for c in rng.permutation(np.arange(1, num_stacks + 1))]


def _append_lost_tags(rows: List[List[ContainerTag]], room: Sequence[int],
                      reference: Sequence[ContainerTag], foreign: Sequence[int]):
    present = {tag for row in rows for tag in row}
    for tag in reference:
        if tag in present:
            continue
        open_stacks = [i for i, row in enumerate(rows) if len(row) < room[i]]
        if not open_stacks:
            raise RepairOverflow(f"No yard stack has room for dropped tag {tag}")
        target = min(open_stacks, key=lambda i: (foreign[i] + len(rows[i]), i))
        rows[target].append(tag)
        present.add(tag)


def repair_rows(parent: YardState, rows: List[List[ContainerTag]], r_lo: int, r_hi: int) -> YardState:
    """
    Repair the tag rows of a child built on `parent`.

    Duplicates inside rows r_lo..r_hi lose to copies outside them; rows over
    the cap are trimmed from the top; every lost tag is appended to the
    lowest stack with room, in the parent's row-major order.
    """
    seen = {tag for i, row in enumerate(rows) if not r_lo <= i <= r_hi for tag in row}
    for i in range(r_lo, r_hi + 1):
        kept = []
        for tag in rows[i]:
            if tag in seen:
                continue
            seen.add(tag)
            kept.append(tag)
        rows[i] = kept

    foreign = parent.foreign_counts()
    room = [parent.cap - f for f in foreign]
    for i, row in enumerate(rows):
        del row[max(room[i], 0):]

    _append_lost_tags(rows, room, parent.tags(), foreign)
    return parent.with_tag_rows(rows)


def substring_exchange(a: YardState, b: YardState, rows: Cut,
                       col_cuts: Sequence[Cut]) -> Tuple[YardState, YardState]:
    """
    Deterministic 2D crossover.

    Args:
        a, b: parent yards with the same stack count and tag set
        rows: inclusive range (r_lo, r_hi) of yard stacks swapped whole
        col_cuts: column cut pair for each boundary stack, r_lo first;
            a single pair when r_lo == r_hi

    Returns:
        (child_a, child_b); child_a keeps parent a's foreign containers
    """
    if len(a.stacks) != len(b.stacks):
        raise ValueError(f"Parents differ in stack count ({len(a.stacks)} vs {len(b.stacks)})")
    r_lo, r_hi = rows
    boundary = [r_lo] if r_lo == r_hi else [r_lo, r_hi]
    if len(col_cuts) != len(boundary):
        raise ValueError(f"Expected {len(boundary)} column cut pair(s), got {len(col_cuts)}")

    rows_a, rows_b = a.tag_rows(), b.tag_rows()
    child_a = [list(r) for r in rows_a]
    child_b = [list(r) for r in rows_b]
    for i in range(r_lo, r_hi + 1):
        child_a[i], child_b[i] = list(rows_b[i]), list(rows_a[i])

    for r, (lo, hi) in zip(boundary, col_cuts):
        ra, rb = child_a[r], child_b[r]
        child_a[r] = ra[:lo] + rb[lo:hi] + ra[hi:]
        child_b[r] = rb[:lo] + ra[lo:hi] + rb[hi:]

    return repair_rows(a, child_a, r_lo, r_hi), repair_rows(b, child_b, r_lo, r_hi)


def crossover_2d(parent_a: YardState, parent_b: YardState,
                 rng: np.random.Generator) -> Tuple[YardState, YardState]:
    r_lo, r_hi = sorted(int(x) for x in rng.integers(0, len(parent_a.stacks), size=2))
    rows_a, rows_b = parent_a.tag_rows(), parent_b.tag_rows()
    boundary = [r_lo] if r_lo == r_hi else [r_lo, r_hi]
    col_cuts = [random_cuts(max(len(rows_a[r]), len(rows_b[r])), rng) for r in boundary]
    return substring_exchange(parent_a, parent_b, (r_lo, r_hi), col_cuts)


def swap_tags(yard: YardState, first: Cut, second: Cut) -> YardState:
    """
    Swap two ship-bound tags in place.

    Positions are (yard stack, index among that stack's ship-bound tags).
    """
    rows = yard.tag_rows()
    (r1, c1), (r2, c2) = first, second
    rows[r1][c1], rows[r2][c2] = rows[r2][c2], rows[r1][c1]
    return yard.with_tag_rows(rows)


def mutate_2d(yard: YardState, rng: np.random.Generator) -> YardState:
    rows = yard.tag_rows()
    filled = [i for i, row in enumerate(rows) if row]
    if not filled:
        return yard

    r1 = filled[int(rng.integers(len(filled)))]
    r2 = filled[int(rng.integers(len(filled)))]
    c1 = int(rng.integers(len(rows[r1])))
    c2 = int(rng.integers(len(rows[r2])))
    return swap_tags(yard, (r1, c1), (r2, c2))


def random_yard(template: YardState, rng: np.random.Generator) -> YardState:
    """
    Scatter the template's ship-bound tags over its stacks.

    Foreign containers stay in their stack. Each tag goes to a uniformly
    chosen stack that still has room under the cap.

    Raises:
        InfeasibleTemplate: the tags cannot all fit
    """
    tags = template.tags()
    room = [template.cap - f for f in template.foreign_counts()]
    if sum(max(r, 0) for r in room) < len(tags):
        raise InfeasibleTemplate(
            f"{len(tags)} tags do not fit in {len(room)} yard stacks under cap {template.cap}"
        )

    rows: List[List[ContainerTag]] = [[] for _ in room]
    for k in rng.permutation(len(tags)):
        open_stacks = [i for i, row in enumerate(rows) if len(row) < room[i]]
        rows[open_stacks[int(rng.integers(len(open_stacks)))]].append(tags[int(k)])
    return template.with_tag_rows(rows)


def random_chromosome(num_stacks: int, template: YardState, rng: np.random.Generator,
                      fixed_sequence: Optional[Sequence[int]] = None,
                      fixed_yard: bool = False) -> Chromosome:
    seq = list(fixed_sequence) if fixed_sequence is not None else random_permutation(num_stacks, rng)
    yard = template if fixed_yard else random_yard(template, rng)
    return Chromosome(tuple(seq), yard)
