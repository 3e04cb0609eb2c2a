"""Diagonal cost models for graph 3-coloring on qutrit and qubit registers.

Two encodings are supported:

* ``"qutrit"``: one qutrit per node, digit = color.  The per-edge cost is the
  diagonal of gm3 x gm3 + gm8 x gm8, which is +4/3 when the endpoint colors
  agree and -2/3 otherwise, and is invariant under global color permutations.
* ``"qubit"``: two qubits per node (node v owns sites 2v and 2v+1).  Bit
  pairs map 00->0, 01->1, 10->2; the leftover 11 state is an invalid marker
  penalized by a suppression term of weight ``alpha``.  With Z eigenvalues
  +1/-1 for bits 0/1, the cost per edge is ZZZZ + Z.Z + Z.Z across the two
  node pairs, and per node alpha * (ZZ - Z - Z), which is -1 on valid pair
  states and +3 on the invalid one.
"""

from __future__ import annotations

import math

import numpy as np

from .graphs import Graph
from .sim import Statevector, basis_digits, index_to_digits

ENCODINGS = ("qutrit", "qubit")

#: cache cost tables only below this register dimension
TABLE_CACHE_LIMIT = 3**9

EDGE_EQUAL_COST = 4.0 / 3.0
EDGE_DIFFER_COST = -2.0 / 3.0


def check_encoding(encoding: str) -> str:
    if encoding not in ENCODINGS:
        raise ValueError(f"encoding must be one of {ENCODINGS}, got {encoding!r}")
    return encoding


def local_dim_for(encoding: str) -> int:
    return 3 if check_encoding(encoding) == "qutrit" else 2


def sites_for(encoding: str, num_nodes: int) -> int:
    return num_nodes if check_encoding(encoding) == "qutrit" else 2 * num_nodes


def node_colors(encoding: str, num_nodes: int) -> np.ndarray:
    """(dim, num_nodes) table of decoded colors; 3 marks the invalid qubit state."""
    if check_encoding(encoding) == "qutrit":
        return basis_digits(num_nodes, 3)
    bits = basis_digits(2 * num_nodes, 2)
    return (2 * bits[:, 0::2] + bits[:, 1::2]).astype(np.int8)


def qutrit_cost_table(graph: Graph) -> np.ndarray:
    """Per-basis-state qutrit cost: sum over edges of +4/3 (same) / -2/3 (differ)."""
    colors = node_colors("qutrit", graph.num_nodes)
    out = np.zeros(len(colors))
    for u, v in graph.edges:
        out += np.where(colors[:, u] == colors[:, v], EDGE_EQUAL_COST, EDGE_DIFFER_COST)
    return out


def qubit_edge_cost_table(graph: Graph) -> np.ndarray:
    """Edge-coloring part of the qubit cost (no suppression term)."""
    z = 1.0 - 2.0 * basis_digits(2 * graph.num_nodes, 2)
    out = np.zeros(len(z))
    for u, v in graph.edges:
        p1 = z[:, 2 * u] * z[:, 2 * v]
        p2 = z[:, 2 * u + 1] * z[:, 2 * v + 1]
        out += p1 * p2 + p1 + p2
    return out


def qubit_suppression_table(num_nodes: int) -> np.ndarray:
    """Per-node penalty sum (ZZ - Z - Z): -1 on valid pair states, +3 on 11."""
    z = 1.0 - 2.0 * basis_digits(2 * num_nodes, 2)
    out = np.zeros(len(z))
    for v in range(num_nodes):
        z1 = z[:, 2 * v]
        z2 = z[:, 2 * v + 1]
        out += z1 * z2 - z1 - z2
    return out


def qubit_cost_table(graph: Graph, alpha: float) -> np.ndarray:
    return qubit_edge_cost_table(graph) + alpha * qubit_suppression_table(graph.num_nodes)


def qutrit_cost(graph: Graph, basis_index: int) -> float:
    """Qutrit cost of a single basis state, evaluated without a full table."""
    digits = index_to_digits(basis_index, graph.num_nodes, 3)
    total = 0.0
    for u, v in graph.edges:
        total += EDGE_EQUAL_COST if digits[u] == digits[v] else EDGE_DIFFER_COST
    return total


def qubit_cost(graph: Graph, alpha: float, basis_index: int) -> float:
    """Qubit cost of a single basis state, evaluated without a full table."""
    bits = index_to_digits(basis_index, 2 * graph.num_nodes, 2)
    z = [1.0 - 2.0 * b for b in bits]
    total = 0.0
    for u, v in graph.edges:
        p1 = z[2 * u] * z[2 * v]
        p2 = z[2 * u + 1] * z[2 * v + 1]
        total += p1 * p2 + p1 + p2
    for v in range(graph.num_nodes):
        total += alpha * (z[2 * v] * z[2 * v + 1] - z[2 * v] - z[2 * v + 1])
    return total


class DiagonalCost:
    """Diagonal cost Hamiltonian for one (graph, encoding) problem instance.

    Evaluation is pure; the full per-basis table is cached only while the
    register dimension stays at or below ``TABLE_CACHE_LIMIT``.
    """

    def __init__(self, graph: Graph, encoding: str, alpha: float = 2.0):
        self.graph = graph
        self.encoding = check_encoding(encoding)
        self.alpha = float(alpha)
        self._cached = None

    @property
    def num_sites(self) -> int:
        return sites_for(self.encoding, self.graph.num_nodes)

    @property
    def local_dim(self) -> int:
        return local_dim_for(self.encoding)

    @property
    def dim(self) -> int:
        return self.local_dim**self.num_sites

    def _build(self) -> np.ndarray:
        if self.encoding == "qutrit":
            return qutrit_cost_table(self.graph)
        return qubit_cost_table(self.graph, self.alpha)

    def table(self) -> np.ndarray:
        if self._cached is not None:
            return self._cached
        table = self._build()
        if self.dim <= TABLE_CACHE_LIMIT:
            self._cached = table
        return table

    def value(self, basis_index: int) -> float:
        if self._cached is not None:
            return float(self._cached[basis_index])
        if self.encoding == "qutrit":
            return qutrit_cost(self.graph, basis_index)
        return qubit_cost(self.graph, self.alpha, basis_index)


def decode(encoding: str, basis_index: int, num_nodes: int):
    """Per-node colors of a basis state; invalid qubit node pairs decode to None."""
    if check_encoding(encoding) == "qutrit":
        return index_to_digits(basis_index, num_nodes, 3)
    bits = index_to_digits(basis_index, 2 * num_nodes, 2)
    out = []
    for v in range(num_nodes):
        c = 2 * bits[2 * v] + bits[2 * v + 1]
        out.append(None if c == 3 else c)
    return tuple(out)


def is_valid_coloring(graph: Graph, coloring) -> bool:
    """True iff no invalid markers and no edge joins equal colors."""
    if len(coloring) != graph.num_nodes:
        raise ValueError("coloring length does not match node count")
    if any(c is None for c in coloring):
        return False
    return all(coloring[u] != coloring[v] for u, v in graph.edges)


def _masks(encoding: str, graph: Graph) -> tuple[np.ndarray, np.ndarray]:
    """(proper, decodable) boolean masks over all basis states."""
    colors = node_colors(encoding, graph.num_nodes)
    decodable = np.all(colors < 3, axis=1)
    proper = decodable.copy()
    for u, v in graph.edges:
        proper &= colors[:, u] != colors[:, v]
    return proper, decodable


def success_probability(state: Statevector, graph: Graph, encoding: str,
                        postselect: bool = False) -> float:
    """Probability mass on basis states that decode to proper colorings.

    In postselect mode (qubit encoding only) the mass is renormalized over
    states with no invalid node pair; if that mass is zero the result is NaN.
    The qutrit encoding has no invalid states, so the flag changes nothing.
    """
    check_encoding(encoding)
    if state.dim != local_dim_for(encoding) ** sites_for(encoding, graph.num_nodes):
        raise ValueError("state dimension does not match the encoding")
    proper, decodable = _masks(encoding, graph)
    p = state.probabilities()
    raw = float(p[proper].sum())
    if not postselect or encoding == "qutrit":
        return raw
    denom = float(p[decodable].sum())
    if denom == 0.0:
        return math.nan
    return raw / denom


def sampled_success(samples, graph: Graph, encoding: str,
                    postselect: bool = False) -> float:
    """Shot-based estimate of :func:`success_probability` from sampled indices."""
    proper, decodable = _masks(encoding, graph)
    idx = np.asarray(samples, dtype=np.int64)
    hits = int(proper[idx].sum())
    if not postselect or encoding == "qutrit":
        return hits / len(idx)
    kept = int(decodable[idx].sum())
    return math.nan if kept == 0 else hits / kept
