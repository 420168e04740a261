"""Schedule rewrite rules that never increase either cost metric.

Each public operation takes a schedule and returns an improved schedule
together with a trace of the steps applied.  The rules build on each
other: internal sorting of blocks, merging of overlapping same-color
blocks, reordering of the same-color block sequences, and finally a full
normal form in which every inner block runs in increasing temperature
order.  Operations establish their own prerequisites, so any valid
schedule is accepted.

All rules are constructive improvements: for every step the total
temperature change and the color-change count of the schedule are less
than or equal to their values before the step.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    Job,
    Schedule,
    ValidationError,
    color_changes,
    partition_blocks,
    total_temperature_change,
)

# Working representation: a list of (color, jobs) pairs with mutable job
# lists; cheap to edit in place and flattened back to a Schedule at the end.
_Blocks = list[tuple[int, list[Job]]]


@dataclass(frozen=True)
class ImprovementStep:
    """One applied rewrite: rule name, touched block indices, metrics."""

    rule: str
    blocks: tuple[int, ...]
    t_before: int
    t_after: int
    c_before: int
    c_after: int


@dataclass(frozen=True)
class ImprovementTrace:
    steps: tuple[ImprovementStep, ...]


def four_point_inequality(a: int, b: int, c: int, d: int) -> bool:
    """Whether |b-a| + |d-c| <= |c-a| + |d-b| (requires b < c and a < d).

    The inequality always holds under the precondition; it justifies
    running inner blocks in increasing order once the block sequence is
    externally increasing.
    """
    if not (b < c and a < d):
        raise ValidationError("four_point_inequality requires b < c and a < d")
    return abs(b - a) + abs(d - c) <= abs(c - a) + abs(d - b)


def _flatten(blocks: _Blocks) -> list[Job]:
    out: list[Job] = []
    for _, jobs in blocks:
        out.extend(jobs)
    return out


def _metrics(blocks: _Blocks) -> tuple[int, int]:
    flat = _flatten(blocks)
    return total_temperature_change(flat), color_changes(flat)


def _to_blocks(schedule: Schedule) -> _Blocks:
    return [(b.color, list(b.jobs)) for b in partition_blocks(schedule)]


def _is_sorted(jobs: list[Job]) -> bool:
    temps = [j.temperature for j in jobs]
    inc = all(x < y for x, y in zip(temps, temps[1:]))
    dec = all(x > y for x, y in zip(temps, temps[1:]))
    return inc or dec


def _oriented(
    jobs: list[Job], left: Job | None, right: Job | None
) -> list[Job]:
    """Monotone ordering of ``jobs`` minimizing the adjacent transitions.

    Ties prefer increasing order, which keeps results deterministic.
    """
    asc = sorted(jobs, key=lambda j: j.temperature)
    desc = asc[::-1]

    def junction_cost(ordered: list[Job]) -> int:
        cost = 0
        if left is not None:
            cost += abs(ordered[0].temperature - left.temperature)
        if right is not None:
            cost += abs(ordered[-1].temperature - right.temperature)
        return cost

    return asc if junction_cost(asc) <= junction_cost(desc) else desc


class _Recorder:
    """Collects improvement steps and enforces per-step monotonicity."""

    def __init__(self, blocks: _Blocks) -> None:
        self.steps: list[ImprovementStep] = []
        self._t, self._c = _metrics(blocks)

    def record(self, rule: str, touched: tuple[int, ...], blocks: _Blocks) -> None:
        t_after, c_after = _metrics(blocks)
        step = ImprovementStep(
            rule=rule,
            blocks=touched,
            t_before=self._t,
            t_after=t_after,
            c_before=self._c,
            c_after=c_after,
        )
        if t_after > self._t or c_after > self._c:
            raise AssertionError(f"rewrite increased a metric: {step}")
        self.steps.append(step)
        self._t, self._c = t_after, c_after


def _sort_internally(blocks: _Blocks, rec: _Recorder) -> None:
    """Make every block monotone in temperature (left-to-right sweep)."""
    for i, (color, jobs) in enumerate(blocks):
        if _is_sorted(jobs):
            continue
        left = blocks[i - 1][1][-1] if i > 0 else None
        right = blocks[i + 1][1][0] if i + 1 < len(blocks) else None
        blocks[i] = (color, _oriented(jobs, left, right))
        rec.record("sort-block", (i,), blocks)


def _insert_sorted(jobs: list[Job], job: Job) -> None:
    """Insert ``job`` into a monotone block, keeping it monotone."""
    temps = [j.temperature for j in jobs]
    ascending = len(temps) < 2 or temps[0] < temps[-1]
    if ascending:
        pos = next((k for k, t in enumerate(temps) if t > job.temperature), len(temps))
    else:
        pos = next((k for k, t in enumerate(temps) if t < job.temperature), len(temps))
    jobs.insert(pos, job)


def _elide_empty(blocks: _Blocks, idx: int, rec: _Recorder) -> None:
    """Drop the emptied block ``idx`` and merge now-adjacent equal colors."""
    del blocks[idx]
    left, right = idx - 1, idx
    if left >= 0 and right < len(blocks) and blocks[left][0] == blocks[right][0]:
        color = blocks[left][0]
        merged = blocks[left][1] + blocks[right][1]
        del blocks[right]
        outer_left = blocks[left - 1][1][-1] if left > 0 else None
        outer_right = blocks[left + 1][1][0] if left + 1 < len(blocks) else None
        blocks[left] = (color, _oriented(merged, outer_left, outer_right))
    rec.record("merge-adjacent-blocks", (idx,), blocks)


def _find_intersecting_pair(blocks: _Blocks) -> tuple[int, int] | None:
    spans = [
        (min(j.temperature for j in jobs), max(j.temperature for j in jobs))
        for _, jobs in blocks
    ]
    for r in range(len(blocks)):
        for s in range(r + 1, len(blocks)):
            if blocks[r][0] != blocks[s][0]:
                continue
            lo_r, hi_r = spans[r]
            lo_s, hi_s = spans[s]
            if lo_r <= hi_s and lo_s <= hi_r:
                return r, s
    return None


def _remove_intersections(blocks: _Blocks, rec: _Recorder) -> None:
    """Merge overlapping same-color blocks until all spans are disjoint.

    The donor's jobs that fall strictly inside the recipient's span move
    one by one into their fitting position there; the recipient's border
    jobs never change, so no transition cost can grow.  An emptied donor
    is elided, merging its neighbors.
    """
    while True:
        pair = _find_intersecting_pair(blocks)
        if pair is None:
            return
        r, s = pair
        lo_r = min(j.temperature for j in blocks[r][1])
        hi_r = max(j.temperature for j in blocks[r][1])
        lo_s = min(j.temperature for j in blocks[s][1])
        hi_s = max(j.temperature for j in blocks[s][1])
        # The nested block donates; on partial overlap the later one does.
        if lo_s < lo_r and hi_s > hi_r:
            donor, recipient = r, s
        else:
            donor, recipient = s, r
        lo_rec = min(j.temperature for j in blocks[recipient][1])
        hi_rec = max(j.temperature for j in blocks[recipient][1])
        while True:
            inside = [
                j for j in blocks[donor][1] if lo_rec < j.temperature < hi_rec
            ]
            if not inside:
                break
            job = min(inside, key=lambda j: j.temperature)
            blocks[donor][1].remove(job)
            _insert_sorted(blocks[recipient][1], job)
            if not blocks[donor][1]:
                break
        emptied = not blocks[donor][1]
        rec.record("merge-intersecting-blocks", (r, s), blocks)
        if emptied:
            _elide_empty(blocks, donor, rec)


def _same_color_maxima(blocks: _Blocks, color: int) -> list[int]:
    return [
        max(j.temperature for j in jobs) for c, jobs in blocks if c == color
    ]


def _externally_increasing(blocks: _Blocks) -> bool:
    for color in {c for c, _ in blocks}:
        maxima = _same_color_maxima(blocks, color)
        if any(x >= y for x, y in zip(maxima, maxima[1:])):
            return False
    return True


def _externally_decreasing(blocks: _Blocks) -> bool:
    for color in {c for c, _ in blocks}:
        maxima = _same_color_maxima(blocks, color)
        if any(x <= y for x, y in zip(maxima, maxima[1:])):
            return False
    return True


def _reverse_all(blocks: _Blocks) -> None:
    blocks.reverse()
    for i, (color, jobs) in enumerate(blocks):
        blocks[i] = (color, jobs[::-1])


def _find_crossing_quadruplet(blocks: _Blocks) -> int | None:
    """Leftmost index i such that the same-color pairs around blocks
    i and i+1 are ordered in opposite directions."""
    maxima = [max(j.temperature for j in jobs) for _, jobs in blocks]
    for i in range(1, len(blocks) - 2):
        first_up = maxima[i + 1] > maxima[i - 1]
        second_up = maxima[i + 2] > maxima[i]
        if first_up != second_up:
            return i
    return None


def _swap_and_merge(blocks: _Blocks, i: int, rec: _Recorder) -> None:
    """Swap blocks i and i+1 and merge both resulting same-color pairs.

    After the swap, block i+1 sits next to the same-colored block i-1 and
    block i next to block i+2; both pairs fuse into single blocks whose
    orientations are chosen jointly (their shared junction depends on
    both), which never costs more than the swap the crossing argument
    prescribes.
    """
    merged_left = blocks[i - 1][1] + blocks[i + 1][1]
    merged_right = blocks[i][1] + blocks[i + 2][1]
    color_left = blocks[i - 1][0]
    color_right = blocks[i][0]
    outer_left = blocks[i - 2][1][-1] if i - 2 >= 0 else None
    outer_right = blocks[i + 3][1][0] if i + 3 < len(blocks) else None
    left_asc = sorted(merged_left, key=lambda j: j.temperature)
    right_asc = sorted(merged_right, key=lambda j: j.temperature)
    best: tuple[int, list[Job], list[Job]] | None = None
    for lhs in (left_asc, left_asc[::-1]):
        for rhs in (right_asc, right_asc[::-1]):
            cost = abs(rhs[0].temperature - lhs[-1].temperature)
            if outer_left is not None:
                cost += abs(lhs[0].temperature - outer_left.temperature)
            if outer_right is not None:
                cost += abs(rhs[-1].temperature - outer_right.temperature)
            if best is None or cost < best[0]:
                best = (cost, lhs, rhs)
    assert best is not None
    _, lhs, rhs = best
    blocks[i - 1 : i + 3] = [(color_left, lhs), (color_right, rhs)]
    rec.record("swap-adjacent-blocks", (i - 1, i, i + 1, i + 2), blocks)


def _sort_externally(blocks: _Blocks, rec: _Recorder) -> None:
    """Reorder until both same-color block sequences increase externally."""
    rounds = 0
    limit = len(blocks) + 2
    while not _externally_increasing(blocks):
        rounds += 1
        if rounds > limit:
            raise AssertionError("external sorting failed to terminate")
        if _externally_decreasing(blocks):
            _reverse_all(blocks)
            rec.record("reverse-schedule", tuple(range(len(blocks))), blocks)
            continue
        i = _find_crossing_quadruplet(blocks)
        if i is None:
            # Short schedules: a single decreasing same-color pair with the
            # other color in one block; a full reversal settles it.
            _reverse_all(blocks)
            rec.record("reverse-schedule", tuple(range(len(blocks))), blocks)
            if _externally_increasing(blocks):
                continue
            raise AssertionError("no crossing quadruplet in unsorted schedule")
        _swap_and_merge(blocks, i, rec)
        _sort_internally(blocks, rec)
        _remove_intersections(blocks, rec)


def _force_inner_ascending(blocks: _Blocks, rec: _Recorder) -> None:
    """Run every inner block in increasing order (valid once the block
    sequences increase externally; see :func:`four_point_inequality`)."""
    for i in range(1, len(blocks) - 1):
        color, jobs = blocks[i]
        temps = [j.temperature for j in jobs]
        if all(x < y for x, y in zip(temps, temps[1:])):
            continue
        blocks[i] = (color, sorted(jobs, key=lambda j: j.temperature))
        rec.record("orient-inner-block-ascending", (i,), blocks)


def _finish(
    schedule: Schedule, blocks: _Blocks, rec: _Recorder
) -> tuple[Schedule, ImprovementTrace]:
    result = Schedule.from_jobs(schedule.instance, _flatten(blocks))
    return result, ImprovementTrace(steps=tuple(rec.steps))


def sort_blocks_internally(schedule: Schedule) -> tuple[Schedule, ImprovementTrace]:
    """Sort every block monotonically in temperature.

    Keeps the block structure (and hence the color-change count) intact;
    the total temperature change never increases.
    """
    blocks = _to_blocks(schedule)
    rec = _Recorder(blocks)
    _sort_internally(blocks, rec)
    return _finish(schedule, blocks, rec)


def remove_intersections(schedule: Schedule) -> tuple[Schedule, ImprovementTrace]:
    """Make same-color block spans pairwise disjoint.

    Internally sorts blocks first.  Jobs of one overlapping block are
    folded into the other; fully absorbed blocks disappear, lowering the
    color-change count.
    """
    blocks = _to_blocks(schedule)
    rec = _Recorder(blocks)
    _sort_internally(blocks, rec)
    _remove_intersections(blocks, rec)
    return _finish(schedule, blocks, rec)


def sort_blocks_externally(schedule: Schedule) -> tuple[Schedule, ImprovementTrace]:
    """Make both same-color block sequences increase externally.

    Establishes internal sorting and disjoint spans first, then repeatedly
    swaps the middle pair of a crossing quadruplet (merging two block
    pairs each time), and finally reverses the whole schedule if needed.
    Only defined for schedules with at most two colors.
    """
    _require_two_colors(schedule)
    blocks = _to_blocks(schedule)
    rec = _Recorder(blocks)
    _sort_internally(blocks, rec)
    _remove_intersections(blocks, rec)
    _sort_externally(blocks, rec)
    return _finish(schedule, blocks, rec)


def normalize(schedule: Schedule) -> Schedule:
    """Rewrite a schedule into canonical form without worsening either metric.

    The result has monotone blocks, pairwise-disjoint same-color spans,
    externally increasing same-color block sequences, and inner blocks in
    increasing order.  For an input that is optimal under its color-change
    budget the total temperature change is preserved exactly.
    """
    _require_two_colors(schedule)
    blocks = _to_blocks(schedule)
    rec = _Recorder(blocks)
    _sort_internally(blocks, rec)
    _remove_intersections(blocks, rec)
    _sort_externally(blocks, rec)
    _force_inner_ascending(blocks, rec)
    return Schedule.from_jobs(schedule.instance, _flatten(blocks))


def _require_two_colors(schedule: Schedule) -> None:
    if len(schedule.instance.colors) > 2:
        raise ValidationError("canonical form is defined for at most two colors")


def check_canonical_form(schedule: Schedule) -> tuple[bool, list[str]]:
    """Verify the canonical-form properties literally.

    Returns (ok, violations).  Checked: every block monotone; same-color
    spans disjoint; same-color block sequences externally increasing;
    inner blocks in increasing order.
    """
    _require_two_colors(schedule)
    violations: list[str] = []
    blocks = partition_blocks(schedule)
    for i, block in enumerate(blocks):
        temps = [j.temperature for j in block.jobs]
        inc = all(x < y for x, y in zip(temps, temps[1:]))
        dec = all(x > y for x, y in zip(temps, temps[1:]))
        if not (inc or dec):
            violations.append(f"block-not-monotone: block {i}")
    for r in range(len(blocks)):
        for s in range(r + 1, len(blocks)):
            if blocks[r].color != blocks[s].color:
                continue
            if blocks[r].t_min <= blocks[s].t_max and blocks[s].t_min <= blocks[r].t_max:
                violations.append(f"same-color-ranges-intersect: blocks {r},{s}")
    by_color: dict[int, list[int]] = {}
    for block in blocks:
        by_color.setdefault(block.color, []).append(block.t_max)
    for color in sorted(by_color):
        maxima = by_color[color]
        if any(x >= y for x, y in zip(maxima, maxima[1:])):
            violations.append(f"external-order-not-increasing: color {color}")
    for i in range(1, len(blocks) - 1):
        temps = [j.temperature for j in blocks[i].jobs]
        if not all(x < y for x, y in zip(temps, temps[1:])):
            violations.append(f"inner-block-not-ascending: block {i}")
    return not violations, violations
