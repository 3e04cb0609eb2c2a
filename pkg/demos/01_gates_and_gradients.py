"""Tour of the gate toolbox: qutrit rotations, TH, TAdd/TSub, and shift rules."""

import numpy as np

from quditcolor import gates

np.set_printoptions(precision=4, suppress=True, linewidth=100)

# --- subspace rotations -------------------------------------------------
# A qutrit rotation acts like a qubit rotation inside one pair of basis
# states and leaves the third alone.
theta = np.pi / 3
for sub in gates.SUBSPACES:
    m = gates.subspace_rotation("X", sub, theta)
    print(f"TRX{sub}({theta:.3f}) =\n{m}\n")

# Each rotation is generated by a Gell-Mann observable: TRZ01 = exp(-i t gm3/2)
w, v = np.linalg.eigh(gates.gell_mann(3))
reconstructed = (v * np.exp(-0.5j * theta * w)) @ v.conj().T
print("max |TRZ01 - exp(-i theta gm3/2)| =",
      np.abs(gates.subspace_rotation("Z", (0, 1), theta) - reconstructed).max())

# --- the qutrit Hadamard and the entangling pair ------------------------
print("\nTH =\n", gates.th())
print("TH |0> probabilities:", np.abs(gates.th()[:, 0]) ** 2)

ta = gates.tadd()
print("\nTAdd action on |j,k>:")
for j in range(3):
    row = []
    for k in range(3):
        out = int(np.argmax(np.abs(ta[:, 3 * j + k])))
        row.append(f"|{j}{k}> -> |{out // 3}{out % 3}>")
    print("  " + "  ".join(row))

# --- parameter-shift rules ----------------------------------------------
# The generator eigenvalues {-1/2, 0, +1/2} give two frequencies, so the
# exact derivative needs four shifted evaluations instead of a qubit's two.
rule = gates.shift_rule(gates.GateSpec("TRX", (0, 1)))
print("\nfour-term rule:", [(round(s, 4), round(c, 6)) for s, c in rule.terms])


def expectation(t):
    psi = gates.subspace_rotation("X", (0, 1), t)[:, 0]
    return float(np.real(psi.conj() @ gates.gell_mann(3) @ psi))


t0 = 0.8
shift_grad = sum(c * expectation(t0 + s) for s, c in rule.terms)
fd_grad = (expectation(t0 + 1e-5) - expectation(t0 - 1e-5)) / 2e-5
print(f"d<gm3>/dt at t={t0}: shift rule {shift_grad:.10f}, finite diff {fd_grad:.10f}, "
      f"analytic {-np.sin(t0):.10f}")
