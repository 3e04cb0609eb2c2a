"""Circuit construction, decomposition checks, and qubit-vs-qutrit resources."""

import numpy as np

from quditcolor import circuits, graphs
from quditcolor.circuits import Circuit, ParamBinding
from quditcolor.gates import gell_mann

# --- one qutrit edge block reproduces the cost evolution exactly ---------
theta = 0.9
block = circuits.build_qutrit_edge_block(0, 1, ParamBinding(0))
print("qutrit edge block:")
print(circuits.dump_circuit(Circuit(2, 3, tuple(block), 1)))
u = circuits.circuit_unitary(Circuit(2, 3, tuple(block), 1), [theta])
h = np.kron(gell_mann(3), gell_mann(3)) + np.kron(gell_mann(8), gell_mann(8))
expected = np.diag(np.exp(-1j * theta * np.real(np.diag(h))))
print("max deviation from exp(-i theta H_edge):", np.abs(u - expected).max())

# --- full circuits and where the resources go -----------------------------
edge = graphs.Graph(2, [(0, 1)])
print("\nsingle edge, one layer:")
for enc in ("qutrit", "qubit"):
    c = circuits.build_qaoa(edge, enc, 1)
    print(f"  {enc:7s}: sites={c.num_sites} params={c.num_params} "
          f"gates={len(c.gates)} entangling={circuits.entangling_count(c)} "
          f"layer depth={circuits.per_layer_depth(edge, enc)}")

# Star graphs force edge blocks to serialize through the hub, so the qutrit
# layer depth grows as 4m+3 with the maximum degree m (the qubit analog
# trends to 6m+5); leaf mixers hide under later edge blocks.
print("\nstar graphs K(1,m), per-layer depth:")
for m in (1, 2, 3, 4):
    star = graphs.Graph(m + 1, [(0, i) for i in range(1, m + 1)])
    print(f"  m={m}: qutrit {circuits.per_layer_depth(star, 'qutrit'):3d} (4m+3={4 * m + 3})"
          f"   qubit {circuits.per_layer_depth(star, 'qubit'):3d} (6m+5={6 * m + 5})")

# --- entangling-gate scaling on random tripartite sets -------------------
print("\nentangling gates for p=3 on random tripartite graphs (5 seeds each):")
print(f"  {'n':>3} {'connectivity':>12} {'qutrit':>8} {'qubit':>8} {'ratio':>6}")
for n in (9, 12, 15):
    for conn in ("low", "high", "highest"):
        qutrit_counts, qubit_counts = [], []
        for seed in range(5):
            g = graphs.random_tripartite(n, conn, seed)
            qutrit_counts.append(circuits.entangling_count(circuits.build_qaoa(g, "qutrit", 3)))
            qubit_counts.append(circuits.entangling_count(circuits.build_qaoa(g, "qubit", 3)))
        qt, qb = np.mean(qutrit_counts), np.mean(qubit_counts)
        print(f"  {n:>3} {conn:>12} {qt:8.1f} {qb:8.1f} {qb / qt:6.2f}")
