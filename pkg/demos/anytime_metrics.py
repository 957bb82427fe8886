"""Anytime quality metrics of one run.

Runs the base configuration on DASCMOP2 and evaluates the result with
every metric the package reports: final-front hypervolume, the
accumulated anytime hypervolume, inverted generational distance to the
shipped reference front, and decision-space population variance.
"""

import numpy as np

from moead_stn import (
    anytime_accumulated_hv,
    base_config,
    final_population_front,
    get_problem,
    hypervolume,
    igd,
    population_variance,
    reference_front,
    run,
)

problem = get_problem("DASCMOP2")
trace = run(base_config(), problem, seed=3)
m = problem.num_objectives

# hypervolume of the final population front, min-max scaled, ref 1.1^m
# (feasibility is an equality band; the strict archive can be empty)
front = final_population_front(trace, feasible_only=False)
fmin = front.min(axis=0)
span = np.where(front.max(axis=0) - fmin > 0, front.max(axis=0) - fmin, 1.0)
hv_final = hypervolume((front - fmin) / span, np.full(m, 1.1))
print(f"final front size:        {front.shape[0]}")
print(f"final HV (scaled):       {hv_final:.4f} of max {1.1**m:.2f}")

# anytime HV: archive hypervolume summed over the 1000-eval checkpoints
acc = anytime_accumulated_hv(trace.checkpoints)
print(f"accumulated anytime HV:  {acc:.1f} over {len(trace.checkpoints)} checkpoints")

# IGD against the shipped reference front (raw objective space)
ref = reference_front(problem)
print(f"reference front size:    {ref.shape[0]}")
print(f"IGD of final front:      {igd(front, ref):.4f}")

# decision-space dispersion of the final population
X_final = trace.snapshots[-1].X
print(f"population variance:     {population_variance(X_final):.4f}")

# the anytime curve makes early-stopping tradeoffs visible
print("\n   evals   archive HV")
for ckpt in trace.checkpoints[9::20]:
    print(f"{ckpt.evals:8d}   {ckpt.hv:10.2f}")
