"""Step-by-step improvement of a messy schedule.

Three rewrite rules turn any two-color schedule into a canonical form
without ever worsening either metric: sort each block monotonically,
fold overlapping same-color blocks into each other, and reorder the
block sequences until both colors increase along the schedule.  A final
pass runs every inner block upward.  The trace below shows each applied
step with the metrics before and after.
"""

import random

from calsched import (
    Schedule,
    build_instance,
    check_canonical_form,
    color_changes,
    format_temperature,
    normalize,
    remove_intersections,
    sort_blocks_externally,
    sort_blocks_internally,
    total_temperature_change,
)

rng = random.Random(4)
records = []
for i, color in enumerate([0, 0, 0, 0, 1, 1, 1, 0, 1]):
    records.append((f"j{i}", rng.randint(1, 40), color))
instance = build_instance(records)
jobs = list(instance.jobs)
rng.shuffle(jobs)
schedule = Schedule.from_jobs(instance, jobs)


def metrics(s):
    return (
        f"T={format_temperature(total_temperature_change(s))} "
        f"C={color_changes(s)}"
    )


print(f"start: {' '.join(schedule.order)}   ({metrics(schedule)})")

for op in (sort_blocks_internally, remove_intersections, sort_blocks_externally):
    result, trace = op(schedule)
    print(f"\n{op.__name__}:")
    if not trace.steps:
        print("  (already satisfied)")
    for step in trace.steps:
        print(
            f"  {step.rule:28s} blocks {step.blocks}  "
            f"T {format_temperature(step.t_before)} -> {format_temperature(step.t_after)}  "
            f"C {step.c_before} -> {step.c_after}"
        )
    print(f"  result: {' '.join(result.order)}   ({metrics(result)})")

canonical = normalize(schedule)
ok, violations = check_canonical_form(canonical)
print(f"\nnormalize: {' '.join(canonical.order)}   ({metrics(canonical)})")
print(f"canonical form: {ok}" + (f"  violations: {violations}" if violations else ""))
