"""The exact two-color solver and the conflict between the two metrics.

The solver builds a layered graph whose paths are exactly the canonical
schedules, so one shortest-path pass yields the optimal total
temperature change for every color-change budget at once.  This script
sweeps a generated instance, prints the resulting trade-off table,
cross-checks a few budgets against exhaustive search, and writes an SVG
of the best schedule.
"""

from pathlib import Path

from calsched import (
    brute_force_optimal,
    emit_plot,
    format_temperature,
    generate_instance,
    pareto_sweep,
    shortest_schedule,
)
from calsched.formats import plot_svg

instance = generate_instance(seed=12, n0=6, n1=5, t_min=100, t_max=400)
print(f"instance: {len(instance.jobs)} jobs, colors (0, 1)")

table = pareto_sweep(instance)
print("\nbudget  optimal total change")
for budget, value in table:
    shown = "infeasible" if value is None else format_temperature(value)
    print(f"  {budget:>4}  {shown}")

print("\ncross-check against exhaustive search:")
for budget in (1, 3, 5):
    result = shortest_schedule(instance, budget)
    reference = brute_force_optimal(instance, budget)
    mark = "ok" if result.total_change == reference.optimal_total_change else "MISMATCH"
    print(
        f"  budget {budget}: solver {format_temperature(result.total_change)}, "
        f"exhaustive {format_temperature(reference.optimal_total_change)}  [{mark}]"
    )

best = shortest_schedule(instance, table[-1][0])
print(f"\nbest schedule uses {best.changes} changes: {' '.join(best.schedule.order)}")

out = Path(__file__).with_name("pareto_best.svg")
out.write_text(plot_svg(emit_plot(best.schedule)), encoding="utf-8")
print(f"wrote {out.name}")
