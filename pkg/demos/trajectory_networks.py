"""Build, merge, and export search trajectory networks.

Runs the base configuration and the no-restart variant on DASCMOP1
(three seeds each, reduced budget), compresses each configuration's
search paths into a trajectory network, merges the two networks, and
exports the merge to GraphML and DOT for external graph tools.
"""

import os
from dataclasses import replace

from moead_stn import (
    build_stn,
    export_graph,
    get_problem,
    merge_stn,
    run,
    stn_metrics,
    variant_config,
)

OUT_DIR = "demo_out"
SEEDS = (1, 2, 3)
BUDGET = 30000

problem = get_problem("DASCMOP1")
os.makedirs(OUT_DIR, exist_ok=True)

graphs = {}
for variant in ("base", "no-restart"):
    config = replace(variant_config(variant), budget=BUDGET)
    traces = [run(config, problem, seed) for seed in SEEDS]
    # one network per configuration, pooled over all seeds
    graphs[variant] = build_stn(traces)
    nodes, edges, _ = stn_metrics(graphs[variant])
    print(f"{variant:12s} nodes={nodes:5d} edges={edges:5d}")

# merged view: node overlap shows where both configurations search
merged = merge_stn(graphs["base"], graphs["no-restart"])
nodes, edges, shared = stn_metrics(merged)
print(f"{'merged':12s} nodes={nodes:5d} edges={edges:5d} shared={shared:5d}")

graphml_path = os.path.join(OUT_DIR, "dascmop1_base_vs_no-restart.graphml")
dot_path = os.path.join(OUT_DIR, "dascmop1_base_vs_no-restart.dot")
export_graph(merged, graphml_path)
export_graph(merged, dot_path)
print(f"\nwrote {graphml_path}")
print(f"wrote {dot_path}")
