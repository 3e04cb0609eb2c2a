"""Problem instances: simple undirected graphs, 3-coloring, generation, and file I/O.

Two generators supply benchmark instances.  ``enumerate_3colorable`` walks all
graphs on up to 8 nodes in lexicographic order of their upper-triangle
adjacency bitstring and keeps connected, 3-colorable, canonical
representatives (canonical form: minimal bitstring over all node
permutations), so output sets are non-isomorphic and deterministic.
``random_tripartite`` splits nodes into three equal parts and connects nodes
only across parts, which makes every output 3-colorable by construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on nodes 0..num_nodes-1."""

    num_nodes: int
    edges: tuple[tuple[int, int], ...]

    def __init__(self, num_nodes: int, edges):
        if num_nodes < 1:
            raise ValueError(f"num_nodes must be >= 1, got {num_nodes}")
        normalized = []
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if not (0 <= u < num_nodes and 0 <= v < num_nodes):
                raise ValueError(f"edge ({u}, {v}) out of range for {num_nodes} nodes")
            normalized.append((min(u, v), max(u, v)))
        normalized.sort()
        for a, b in zip(normalized, normalized[1:]):
            if a == b:
                raise ValueError(f"duplicate edge {a}")
        object.__setattr__(self, "num_nodes", num_nodes)
        object.__setattr__(self, "edges", tuple(normalized))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def neighbors(self) -> list[list[int]]:
        adj = [[] for _ in range(self.num_nodes)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj


def max_degree(g: Graph) -> int:
    """Largest number of edges incident to any node (0 for edgeless graphs)."""
    deg = [0] * g.num_nodes
    for u, v in g.edges:
        deg[u] += 1
        deg[v] += 1
    return max(deg) if deg else 0


def is_connected(g: Graph) -> bool:
    adj = g.neighbors()
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == g.num_nodes


def three_color(g: Graph):
    """A proper 3-coloring as a tuple, or None if the graph is not 3-colorable.

    Backtracking over nodes in index order; node 0 is pinned to color 0, which
    discards only color-permuted duplicates.
    """
    adj = g.neighbors()
    colors = [-1] * g.num_nodes

    def assign(v: int) -> bool:
        if v == g.num_nodes:
            return True
        options = (0,) if v == 0 else (0, 1, 2)
        for c in options:
            if all(colors[w] != c for w in adj[v] if colors[w] >= 0):
                colors[v] = c
                if assign(v + 1):
                    return True
                colors[v] = -1
        return False

    return tuple(colors) if assign(0) else None


def _pair_list(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def _canonical_checker(n: int):
    """Return a predicate testing whether an adjacency matrix is canonical.

    Canonical means the upper-triangle bitstring (pair (0,1) most significant)
    is minimal over all node permutations; the scan over permutations is
    vectorized since n <= 8 keeps n! small.
    """
    perms = np.array(list(itertools.permutations(range(n))))
    iu = np.triu_indices(n, 1)
    num_pairs = len(iu[0])
    weights = (1 << np.arange(num_pairs - 1, -1, -1)).astype(np.int64)

    def value(adj: np.ndarray) -> int:
        return int(adj[iu].astype(np.int64) @ weights)

    def is_canonical(adj: np.ndarray) -> bool:
        permuted = adj[perms[:, :, None], perms[:, None, :]]
        vals = permuted[:, iu[0], iu[1]].astype(np.int64) @ weights
        return int(vals.min()) == value(adj)

    return is_canonical


def enumerate_3colorable(n: int, min_edges: int | None = None,
                         max_edges: int | None = None,
                         limit: int | None = None) -> list[Graph]:
    """Connected, pairwise non-isomorphic, 3-colorable graphs on ``n`` nodes.

    Graphs are returned in increasing order of their canonical adjacency
    bitstring.  A full scan is cheap for n <= 6; for n in {7, 8} supply a
    ``limit`` or a narrow edge range (the scan short-circuits once ``limit``
    graphs are found).
    """
    if n > 8:
        raise ValueError("enumeration is supported for n <= 8")
    if n < 1:
        raise ValueError("need at least one node")
    pairs = _pair_list(n)
    num_pairs = len(pairs)
    lo = n - 1 if min_edges is None else min_edges
    hi = num_pairs if max_edges is None else max_edges
    is_canonical = _canonical_checker(n)

    found: list[Graph] = []
    for mask in range(1 << num_pairs):
        if limit is not None and len(found) >= limit:
            break
        if not lo <= mask.bit_count() <= hi:
            continue
        edges = [pairs[k] for k in range(num_pairs) if mask >> (num_pairs - 1 - k) & 1]
        g = Graph(n, edges)
        if not is_connected(g):
            continue
        if three_color(g) is None:
            continue
        adj = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            adj[u, v] = adj[v, u] = True
        if not is_canonical(adj):
            continue
        found.append(g)
    return found


_DEGREE_TARGETS = {"low": lambda n: 3.0, "high": lambda n: n / 3, "highest": lambda n: 2 * n / 3}


def random_tripartite(n: int, connectivity: str, seed: int) -> Graph:
    """Random tripartite graph with nodes split into three equal parts.

    Edges go only between parts, so the part assignment is itself a proper
    3-coloring.  The per-pair edge probability is tuned so the expected node
    degree hits the connectivity target (low: 3, high: n/3, highest: 2n/3),
    and cross-part edges are added afterwards if needed to connect the graph.
    """
    if n < 6 or n % 3 != 0:
        raise ValueError(f"n must be >= 6 and divisible by 3, got {n}")
    key = connectivity.lower()
    if key not in _DEGREE_TARGETS:
        raise ValueError(f"connectivity must be one of {sorted(_DEGREE_TARGETS)}")
    target = _DEGREE_TARGETS[key](n)
    prob = min(1.0, target / (2 * n / 3))
    part = [v * 3 // n for v in range(n)]

    rng = np.random.default_rng(seed)
    edges = set()
    for u in range(n):
        for v in range(u + 1, n):
            if part[u] != part[v] and rng.random() < prob:
                edges.add((u, v))

    # connect components through cross-part edges, deterministically
    while True:
        comps = _components(n, edges)
        if len(comps) == 1:
            break
        acc = comps[0]
        merged = False
        for comp in comps[1:]:
            best = None
            for u in sorted(acc):
                for v in sorted(comp):
                    if part[u] != part[v]:
                        best = (min(u, v), max(u, v))
                        break
                if best:
                    break
            if best:
                edges.add(best)
                merged = True
                break
        if not merged:  # pragma: no cover - parts are nonempty, so unreachable
            raise RuntimeError("could not connect tripartite graph")
    return Graph(n, sorted(edges))


def _components(n: int, edges) -> list[set[int]]:
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = [False] * n
    comps = []
    for start in range(n):
        if seen[start]:
            continue
        comp = {start}
        seen[start] = True
        stack = [start]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    comp.add(v)
                    stack.append(v)
        comps.append(comp)
    return comps


def write_graph(g: Graph, path):
    """Write the text format: a ``n <count>`` line, then one ``u v`` line per edge."""
    with open(path, "w", encoding="utf-8") as f:
        f.write(f"n {g.num_nodes}\n")
        for u, v in g.edges:
            f.write(f"{u} {v}\n")


def read_graph(path) -> Graph:
    """Parse the text format written by :func:`write_graph`; '#' starts a comment."""
    num_nodes = None
    edges = []
    with open(path, "r", encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            tokens = line.split()
            if num_nodes is None:
                if len(tokens) != 2 or tokens[0] != "n":
                    raise ValueError(f"{path}:{lineno}: expected 'n <num_nodes>'")
                try:
                    num_nodes = int(tokens[1])
                except ValueError:
                    raise ValueError(f"{path}:{lineno}: bad node count {tokens[1]!r}")
                continue
            if len(tokens) != 2:
                raise ValueError(f"{path}:{lineno}: expected '<u> <v>'")
            try:
                u, v = int(tokens[0]), int(tokens[1])
            except ValueError:
                raise ValueError(f"{path}:{lineno}: bad edge {line!r}")
            if u == v:
                raise ValueError(f"{path}:{lineno}: self-loop at node {u}")
            if not (0 <= u < num_nodes and 0 <= v < num_nodes):
                raise ValueError(f"{path}:{lineno}: edge ({u}, {v}) out of range")
            edges.append((u, v))
    if num_nodes is None:
        raise ValueError(f"{path}: empty graph file")
    return Graph(num_nodes, edges)
