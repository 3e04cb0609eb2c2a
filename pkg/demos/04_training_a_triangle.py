"""Train both encodings on the triangle and watch the solution mass grow."""

import numpy as np

from quditcolor import encodings, training
from quditcolor.graphs import Graph

K3 = Graph(3, [(0, 1), (0, 2), (1, 2)])

for enc in ("qutrit", "qubit"):
    config = training.default_config(enc, layers=3, seed=0)
    result = training.train(K3, config)
    trace = result.cost_trace
    print(f"{enc}: {result.steps_taken} steps "
          f"({'converged' if result.converged else 'step cap'}), "
          f"cost {trace[0]:+.4f} -> {trace[-1]:+.4f}, "
          f"{result.circuit_evaluations} circuit evaluations")
    shown = [0, 1, 2, 5, 10, 20, 50, 100, 200]
    for step in shown:
        if step < len(trace):
            print(f"    step {step:3d}: cost {trace[step]:+.5f}")
    print(f"  success probability: raw {result.success_raw:.4f}, "
          f"postselected {result.success_postselected:.4f}")

    # where did the probability mass go?
    state = training.final_state(K3, enc, 3, config.alpha, result.params)
    probs = state.probabilities()
    top = np.argsort(probs)[::-1][:6]
    labels = [encodings.decode(enc, int(i), 3) for i in top]
    print("  top basis states:", ", ".join(
        f"{lbl}:{probs[i]:.3f}" for i, lbl in zip(top, labels)))
    print()

print("untrained uniform baseline on K3 (qutrit): 6/27 =", round(6 / 27, 4))
