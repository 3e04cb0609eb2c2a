"""Miniature end-to-end benchmark: enumerate a graph set, train, compare.

The CLI runs this workflow at larger scale (see README); here the library is
driven directly on the full set of connected non-isomorphic 3-colorable
4-node graphs, averaging 3 seeds per graph as the benchmark sweep does.
Takes a minute or two; the qubit runs dominate (they train for 200+ steps).
"""

import numpy as np

from quditcolor import graphs, training

SEEDS = (0, 1, 2)

graph_set = graphs.enumerate_3colorable(4)
print(f"benchmark set: {len(graph_set)} non-isomorphic 3-colorable graphs on 4 nodes")
print(f"edge counts: {[g.num_edges for g in graph_set]}\n")

results = {}
for enc in ("qutrit", "qubit"):
    per_graph = []
    for g in graph_set:
        scores = []
        for seed in SEEDS:
            r = training.train(g, training.default_config(enc, layers=3, seed=seed))
            scores.append(r.success_postselected if enc == "qubit" else r.success_raw)
        per_graph.append(np.mean(scores))
        print(f"  {enc:7s} edges={g.num_edges}: mean success={per_graph[-1]:.4f} "
              f"(last run: {r.steps_taken} steps, {r.circuit_evaluations} evals)")
    results[enc] = per_graph
    print(f"{enc} mean over the set: {np.mean(per_graph):.4f} "
          f"(std across graphs {np.std(per_graph):.4f})\n")

print("qutrit mean vs qubit (postselected) mean: "
      f"{np.mean(results['qutrit']):.4f} vs {np.mean(results['qubit']):.4f}")
