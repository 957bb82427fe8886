"""Small component-ablation experiment.

Runs a reduced grid (two problems, three variants, three seeds, 30,000
evaluations) through the experiment harness, then prints the per-run
metrics table and the variant-vs-base delta table.  The budget spans
one restart period, so the no-restart variant actually diverges from
base.  The full-size study is the same call with all defaults, or
equivalently:

    moead-stn experiment --out full_out
    moead-stn report --in full_out
"""

import statistics

from moead_stn import run_experiment

result = run_experiment(
    problem_ids=["DASCMOP1", "DASCMOP4"],
    variant_names=["base", "update", "no-restart"],
    seeds=[1, 2, 3],
    budget=30000,
    out_dir="demo_out/ablation",
)

print(f"runs: {len(result.metrics_rows)}, failures: {len(result.failures)}")
print(f"artifacts in: {result.out_dir}\n")

# per-(problem, variant) median of the scaled final hypervolume
print("median hv_over_max by cell")
cells = sorted({(r.problem, r.variant) for r in result.metrics_rows})
for problem, variant in cells:
    values = [
        r.hv_over_max
        for r in result.metrics_rows
        if r.problem == problem and r.variant == variant
    ]
    print(f"  {problem} {variant:12s} {statistics.median(values):.4f}")

# deltas: variant minus base per problem, nodes from pooled networks
print("\ndelta table (variant - base)")
for row in result.delta_rows:
    print(
        f"  {row.problem} {row.variant:12s} "
        f"dHV={row.delta_hv:+.4f} dnodes={row.delta_nodes:+.0f} "
        f"shared={row.shared_nodes}"
    )
