"""The two problem encodings on a triangle: cost spectra and success metrics."""

import numpy as np

from quditcolor import encodings, sim
from quditcolor.graphs import Graph

K3 = Graph(3, [(0, 1), (0, 2), (1, 2)])

# --- qutrit encoding: one qutrit per node, digit = color -----------------
table = encodings.qutrit_cost_table(K3)
print("qutrit cost over all 27 assignments of K3:")
for idx in range(27):
    coloring = encodings.decode("qutrit", idx, 3)
    marker = " <- proper" if encodings.is_valid_coloring(K3, coloring) else ""
    if idx < 6 or marker:
        print(f"  {coloring}: {table[idx]:+.4f}{marker}")
ground = np.flatnonzero(table == table.min())
print(f"minimum {table.min():+.4f} reached by {len(ground)} states "
      f"(the 6 proper 3-colorings, all color permutations of one another)")

# --- qubit encoding: two qubits per node, fourth state penalized ---------
qtable = encodings.qubit_cost_table(K3, alpha=2.0)
colors = [encodings.decode("qubit", i, 3) for i in range(len(qtable))]
proper = [encodings.is_valid_coloring(K3, c) for c in colors]
invalid = [any(x is None for x in c) for c in colors]
print(f"\nqubit register: {2 * K3.num_nodes} sites, {len(qtable)} basis states")
print(f"  proper colorings: {sum(proper)} states, max cost {qtable[proper].max():+.2f}")
rest = [not p for p in proper]
print(f"  everything else:  {sum(rest)} states, min cost {qtable[rest].min():+.2f}")
print(f"  states with an invalid node: {sum(invalid)}")

# --- success probability on the uniform state ----------------------------
uniform3 = sim.Statevector(3, 3, np.ones(27) / np.sqrt(27))
print(f"\nuniform qutrit state success: {encodings.success_probability(uniform3, K3, 'qutrit'):.4f}"
      f" (= 6/27)")
uniform2 = sim.Statevector(6, 2, np.ones(64) / 8.0)
raw = encodings.success_probability(uniform2, K3, "qubit")
post = encodings.success_probability(uniform2, K3, "qubit", postselect=True)
print(f"uniform qubit state success: raw {raw:.4f}, postselected {post:.4f}")
