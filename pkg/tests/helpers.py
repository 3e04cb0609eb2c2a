"""Independent oracles for the test suite.

Everything here is built from first principles (literal matrices, exhaustive
enumeration, eigendecompositions) so the checks stay independent of the
package code paths they verify.
"""

import itertools
from functools import reduce

import numpy as np

# reference observables, written out rather than imported
GM = {
    1: np.array([[0, 1, 0], [1, 0, 0], [0, 0, 0]], dtype=complex),
    2: np.array([[0, -1j, 0], [1j, 0, 0], [0, 0, 0]]),
    3: np.diag([1.0, -1.0, 0.0]).astype(complex),
    4: np.array([[0, 0, 1], [0, 0, 0], [1, 0, 0]], dtype=complex),
    5: np.array([[0, 0, -1j], [0, 0, 0], [1j, 0, 0]]),
    6: np.array([[0, 0, 0], [0, 0, 1], [0, 1, 0]], dtype=complex),
    7: np.array([[0, 0, 0], [0, 0, -1j], [0, 1j, 0]]),
    8: np.diag([1.0, 1.0, -2.0]).astype(complex) / np.sqrt(3.0),
}
PAULI_Z = np.diag([1.0, -1.0]).astype(complex)


def kron_all(mats):
    return reduce(np.kron, mats, np.array([[1.0 + 0j]]))


def embed(ops: dict, num_sites: int, local_dim: int) -> np.ndarray:
    """Tensor product with ``ops[site]`` at each listed site, identity elsewhere."""
    eye = np.eye(local_dim, dtype=complex)
    return kron_all([ops.get(s, eye) for s in range(num_sites)])


def dense_qutrit_hamiltonian(num_nodes, edges) -> np.ndarray:
    """Sum over edges of gm3 x gm3 + gm8 x gm8 as a dense matrix."""
    dim = 3**num_nodes
    out = np.zeros((dim, dim), dtype=complex)
    for u, v in edges:
        out += embed({u: GM[3], v: GM[3]}, num_nodes, 3)
        out += embed({u: GM[8], v: GM[8]}, num_nodes, 3)
    return out


def dense_qubit_hamiltonian(num_nodes, edges, alpha) -> np.ndarray:
    """Edge cost plus alpha-weighted suppression cost as a dense matrix."""
    n = 2 * num_nodes
    dim = 2**n
    out = np.zeros((dim, dim), dtype=complex)
    for u, v in edges:
        v1, v2, w1, w2 = 2 * u, 2 * u + 1, 2 * v, 2 * v + 1
        out += embed({v1: PAULI_Z, v2: PAULI_Z, w1: PAULI_Z, w2: PAULI_Z}, n, 2)
        out += embed({v1: PAULI_Z, w1: PAULI_Z}, n, 2)
        out += embed({v2: PAULI_Z, w2: PAULI_Z}, n, 2)
    for node in range(num_nodes):
        v1, v2 = 2 * node, 2 * node + 1
        out += alpha * embed({v1: PAULI_Z, v2: PAULI_Z}, n, 2)
        out -= alpha * embed({v1: PAULI_Z}, n, 2)
        out -= alpha * embed({v2: PAULI_Z}, n, 2)
    return out


def expm_hermitian(h: np.ndarray, factor: complex) -> np.ndarray:
    """exp(factor * h) for Hermitian h, via eigendecomposition."""
    w, v = np.linalg.eigh(h)
    return (v * np.exp(factor * w)) @ v.conj().T


def random_state(dim, rng) -> np.ndarray:
    psi = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return psi / np.linalg.norm(psi)


def random_unitary(dim, rng) -> np.ndarray:
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(m)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def strip_global_phase(u: np.ndarray, reference: np.ndarray) -> np.ndarray:
    """Rescale u by a unit phase so its largest-|entry| element matches reference."""
    idx = np.unravel_index(np.argmax(np.abs(reference)), reference.shape)
    phase = u[idx] / reference[idx]
    return u / phase


def all_colorings(num_nodes):
    return itertools.product(range(3), repeat=num_nodes)


def proper_colorings(num_nodes, edges):
    out = []
    for coloring in all_colorings(num_nodes):
        if all(coloring[u] != coloring[v] for u, v in edges):
            out.append(coloring)
    return out


def brute_force_3colorable(num_nodes, edges) -> bool:
    return len(proper_colorings(num_nodes, edges)) > 0


def all_edge_sets(num_nodes):
    """Every labeled simple graph on ``num_nodes`` nodes, as edge tuples."""
    pairs = [(i, j) for i in range(num_nodes) for j in range(i + 1, num_nodes)]
    for bits in itertools.product((0, 1), repeat=len(pairs)):
        yield tuple(p for p, b in zip(pairs, bits) if b)


def connected_edge_sets(num_nodes):
    for edges in all_edge_sets(num_nodes):
        adj = {i: set() for i in range(num_nodes)}
        for u, v in edges:
            adj[u].add(v)
            adj[v].add(u)
        seen, stack = {0}, [0]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) == num_nodes:
            yield edges
