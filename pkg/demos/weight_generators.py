"""Compare the three simplex weight-vector generators.

Generates 100 two-objective and 105 three-objective weight sets with
uniform design, simplex-lattice design, and scrambled Sobol sampling,
then reports simple spread statistics and one neighborhood lookup.
"""

import numpy as np

from moead_stn import (
    build_neighborhood,
    generate_sld,
    generate_sobol,
    generate_uniform_design,
    sld_divisions_for,
    weights_matrix,
)

GENERATORS = {
    "uniform design": generate_uniform_design,
    "simplex lattice": generate_sld,
    "sobol": generate_sobol,
}


def min_pairwise_distance(W):
    diffs = W[:, None, :] - W[None, :, :]
    dist = np.sqrt((diffs**2).sum(axis=2))
    np.fill_diagonal(dist, np.inf)
    return float(dist.min())


for m in (2, 3):
    # the lattice size must be a binomial count; round 100 up for m=3
    n = 100 if m == 2 else 105
    print(f"\n=== {n} vectors, {m} objectives ===")
    if m == 3:
        h = sld_divisions_for(n, m)
        print(f"simplex-lattice divisions for n={n}: h={h}")
    for name, generate in GENERATORS.items():
        W = weights_matrix(generate(n, m))
        assert np.allclose(W.sum(axis=1), 1.0)
        print(f"{name:16s} first={np.round(W[0], 4)} "
              f"min pairwise dist={min_pairwise_distance(W):.4f}")

# each subproblem gets the indices of its T nearest weight vectors
vectors = generate_uniform_design(100, 2)
table = build_neighborhood(vectors, T=5)
print(f"\nneighborhood of vector 50 (T=5): {table.indices[50].tolist()}")
print(f"weights of vector 50: {np.round(weights_matrix(vectors)[50], 4)}")
