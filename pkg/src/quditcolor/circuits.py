"""Layered QAOA circuit construction and resource analysis for both encodings.

One QAOA layer reads, in circuit order: cost-evolution blocks for every edge
(plus, for qubits, one suppression block per node), then the mixer on every
site.  The qutrit edge block conjugates two subspace phase rotations by a
TSub/TAdd pair, which reproduces the edge cost evolution exactly.  The qubit
edge block computes the two cross-node pair parities with parallel CNOTs,
phases them, combines them into the four-wire parity for a third phase, and
uncomputes: six CNOTs and three RZ per edge.

Depth is measured as greedy earliest-start layers under all-to-all
connectivity, counting only site-overlap conflicts; the initial Hadamard wall
occupies one layer and the per-layer figures quoted in docstrings exclude it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import gates, sim
from .encodings import check_encoding, local_dim_for, sites_for
from .graphs import Graph

#: per-layer parameter slots, in circuit order
QUTRIT_PARAMS_PER_LAYER = 2  # edge angle, mixer angle
QUBIT_PARAMS_PER_LAYER = 3  # edge angle, suppression angle, mixer angle

#: dimension guard for dense unitary reconstruction
UNITARY_DIM_CAP = 3**5

#: the trainable edge rotations carry 4/3 of the layer's edge angle
QUTRIT_EDGE_COEFF = 4.0 / 3.0


@dataclass(frozen=True)
class ParamBinding:
    """Reference to trainable parameter ``index``, scaled by ``coeff``."""

    index: int
    coeff: float = 1.0

    def __post_init__(self):
        if self.index < 0:
            raise ValueError("parameter index must be >= 0")
        if not math.isfinite(self.coeff) or self.coeff == 0.0:
            raise ValueError("binding coefficient must be finite and nonzero")


@dataclass(frozen=True)
class GateInstance:
    """A gate spec placed on concrete sites, optionally bound to a parameter."""

    spec: gates.GateSpec
    sites: tuple[int, ...]
    binding: ParamBinding | None = None
    angle: float | None = None

    def __post_init__(self):
        if len(self.sites) != self.spec.arity:
            raise ValueError(f"{self.spec.name} takes {self.spec.arity} sites")
        if len(set(self.sites)) != len(self.sites):
            raise ValueError("gate sites must be distinct")
        if self.spec.parametrized:
            if (self.binding is None) == (self.angle is None):
                raise ValueError(
                    f"{self.spec.name} needs exactly one of a binding or a frozen angle"
                )
        elif self.binding is not None or self.angle is not None:
            raise ValueError(f"{self.spec.name} is not parametrized")

    def bound_angle(self, params: np.ndarray, shift: float = 0.0) -> float | None:
        """Concrete gate angle under ``params``; ``shift`` adds at the gate level."""
        if not self.spec.parametrized:
            return None
        if self.angle is not None:
            return self.angle + shift
        return self.binding.coeff * float(params[self.binding.index]) + shift


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list over a fixed register, with ``num_params`` trainables."""

    num_sites: int
    local_dim: int
    gates: tuple[GateInstance, ...]
    num_params: int

    def __post_init__(self):
        for g in self.gates:
            if g.spec.local_dim != self.local_dim:
                raise ValueError(f"{g.spec.name} does not act on dimension-{self.local_dim} sites")
            if any(not 0 <= s < self.num_sites for s in g.sites):
                raise ValueError(f"{g.spec.name} sites {g.sites} out of range")
            if g.binding is not None and g.binding.index >= self.num_params:
                raise ValueError(f"binding index {g.binding.index} >= {self.num_params}")

    @property
    def dim(self) -> int:
        return self.local_dim**self.num_sites


def _trz(subspace, site, binding):
    return GateInstance(gates.GateSpec("TRZ", subspace), (site,), binding)


def _trx(subspace, site, binding):
    return GateInstance(gates.GateSpec("TRX", subspace), (site,), binding)


def build_qutrit_edge_block(u: int, v: int, param: ParamBinding) -> list[GateInstance]:
    """Edge cost evolution exp(-i theta (gm3.gm3 + gm8.gm8)) on qutrits u, v.

    TSub folds the control digit out of the target, two TRZ rotations phase
    the same-color subspace against the rest, and TAdd restores the basis:

        TSub(u->v), TRZ01(4 theta/3) on v, TRZ02(4 theta/3) on v, TAdd(u->v)

    The composite picks up phase exp(-4i theta/3) on equal-color pairs and
    exp(+2i theta/3) otherwise, with no residual global phase.  ``param`` must
    carry the caller's layer angle; the 4/3 factor is folded into the emitted
    rotation bindings.
    """
    if u == v:
        raise ValueError("edge endpoints must differ")
    rot = ParamBinding(param.index, param.coeff * QUTRIT_EDGE_COEFF)
    return [
        GateInstance(gates.GateSpec("TSUB"), (u, v)),
        _trz((0, 1), v, rot),
        _trz((0, 2), v, rot),
        GateInstance(gates.GateSpec("TADD"), (u, v)),
    ]


def build_qubit_edge_block(v1: int, v2: int, w1: int, w2: int,
                           param: ParamBinding) -> list[GateInstance]:
    """Edge cost evolution exp(-i theta (ZZZZ + Z.Z + Z.Z)) on qubit pairs.

    Sites (v1, v2) and (w1, w2) are the two nodes' qubit pairs.  Parallel
    CNOTs accumulate the cross parities v1+w1 on w1 and v2+w2 on w2; an RZ on
    each phases the two-body terms, one more CNOT merges them into the
    four-body parity on w2 for the third RZ, and the tree is uncomputed.
    """
    if len({v1, v2, w1, w2}) != 4:
        raise ValueError("edge block needs four distinct sites")
    rz = ParamBinding(param.index, param.coeff * 2.0)
    cnot = gates.GateSpec("CNOT")
    return [
        GateInstance(cnot, (v1, w1)),
        GateInstance(cnot, (v2, w2)),
        GateInstance(gates.GateSpec("RZ"), (w1,), rz),
        GateInstance(gates.GateSpec("RZ"), (w2,), rz),
        GateInstance(cnot, (w1, w2)),
        GateInstance(gates.GateSpec("RZ"), (w2,), rz),
        GateInstance(cnot, (w1, w2)),
        GateInstance(cnot, (v1, w1)),
        GateInstance(cnot, (v2, w2)),
    ]


def build_suppression_block(v1: int, v2: int, param: ParamBinding,
                            alpha: float) -> list[GateInstance]:
    """Invalid-state penalty evolution exp(-i gamma alpha (ZZ - Z - Z)) on one node."""
    if v1 == v2:
        raise ValueError("suppression block needs distinct sites")
    zz = ParamBinding(param.index, param.coeff * 2.0 * alpha)
    z = ParamBinding(param.index, param.coeff * -2.0 * alpha)
    cnot = gates.GateSpec("CNOT")
    rz = gates.GateSpec("RZ")
    return [
        GateInstance(cnot, (v1, v2)),
        GateInstance(rz, (v2,), zz),
        GateInstance(rz, (v1,), z),
        GateInstance(cnot, (v1, v2)),
        GateInstance(rz, (v2,), z),
    ]


def build_mixer(encoding: str, sites, param: ParamBinding) -> list[GateInstance]:
    """Mixer layer: RX per qubit, or the three subspace TRX rotations per qutrit.

    The qutrit rotations are emitted in the fixed order (0,1), (0,2), (1,2);
    they do not commute, so the order is part of the circuit definition.
    """
    out = []
    if check_encoding(encoding) == "qubit":
        for s in sites:
            out.append(GateInstance(gates.GateSpec("RX"), (s,), param))
    else:
        for s in sites:
            for sub in gates.SUBSPACES:
                out.append(_trx(sub, s, param))
    return out


def build_qaoa(graph: Graph, encoding: str, layers: int, alpha: float = 2.0) -> Circuit:
    """Full QAOA circuit: Hadamard wall, then ``layers`` cost+mixer layers.

    Qutrit layers bind 2 parameters (edge, mixer); qubit layers bind 3 (edge,
    suppression, mixer).  Edges are visited in sorted order and the entangling
    control is always the lower-numbered node, so circuits are reproducible.
    """
    check_encoding(encoding)
    if layers < 1:
        raise ValueError(f"layers must be >= 1, got {layers}")
    if graph.num_nodes < 1:
        raise ValueError("graph must have at least one node")
    num_sites = sites_for(encoding, graph.num_nodes)
    out: list[GateInstance] = []
    if encoding == "qutrit":
        for s in range(num_sites):
            out.append(GateInstance(gates.GateSpec("TH"), (s,)))
        for layer in range(layers):
            theta = ParamBinding(QUTRIT_PARAMS_PER_LAYER * layer)
            phi = ParamBinding(QUTRIT_PARAMS_PER_LAYER * layer + 1)
            for u, v in graph.edges:
                out.extend(build_qutrit_edge_block(u, v, theta))
            out.extend(build_mixer(encoding, range(num_sites), phi))
        num_params = QUTRIT_PARAMS_PER_LAYER * layers
    else:
        for s in range(num_sites):
            out.append(GateInstance(gates.GateSpec("H"), (s,)))
        for layer in range(layers):
            theta = ParamBinding(QUBIT_PARAMS_PER_LAYER * layer)
            gamma = ParamBinding(QUBIT_PARAMS_PER_LAYER * layer + 1)
            phi = ParamBinding(QUBIT_PARAMS_PER_LAYER * layer + 2)
            for u, v in graph.edges:
                out.extend(build_qubit_edge_block(2 * u, 2 * u + 1, 2 * v, 2 * v + 1, theta))
            for v in range(graph.num_nodes):
                out.extend(build_suppression_block(2 * v, 2 * v + 1, gamma, alpha))
            out.extend(build_mixer(encoding, range(num_sites), phi))
        num_params = QUBIT_PARAMS_PER_LAYER * layers
    out = peephole(out)
    return Circuit(num_sites, local_dim_for(encoding), tuple(out), num_params)


_INVERSE_KINDS = {"CNOT": "CNOT", "TADD": "TSUB", "TSUB": "TADD"}


def peephole(gate_list) -> list[GateInstance]:
    """Cancel entangling-gate pairs that are adjacent up to disjoint-site gates.

    A CNOT meeting another CNOT on the same sites cancels, as does a TAdd
    meeting a TSub; gates acting on disjoint sites in between commute past and
    are kept.  The pass preserves the circuit unitary exactly and never
    increases the gate count.
    """
    out: list[GateInstance] = []
    for g in gate_list:
        if g.spec.kind in _INVERSE_KINDS:
            j = len(out) - 1
            while j >= 0 and not set(out[j].sites) & set(g.sites):
                j -= 1
            if (
                j >= 0
                and out[j].spec.kind == _INVERSE_KINDS[g.spec.kind]
                and out[j].sites == g.sites
            ):
                del out[j]
                continue
        out.append(g)
    return out


def depth(circuit: Circuit) -> int:
    """Greedy earliest-start layer count under all-to-all connectivity."""
    frontier = [0] * circuit.num_sites
    deepest = 0
    for g in circuit.gates:
        layer = 1 + max(frontier[s] for s in g.sites)
        for s in g.sites:
            frontier[s] = layer
        deepest = max(deepest, layer)
    return deepest


def per_layer_depth(graph: Graph, encoding: str, alpha: float = 2.0) -> int:
    """Depth of one QAOA layer, excluding the Hadamard wall."""
    return depth(build_qaoa(graph, encoding, 1, alpha)) - 1


def entangling_count(circuit: Circuit) -> int:
    """Number of two-site gate instances (CNOT, TAdd, TSub)."""
    return sum(1 for g in circuit.gates if g.spec.arity == 2)


def circuit_unitary(circuit: Circuit, params=None) -> np.ndarray:
    """Dense unitary of the circuit, for verification at small dimensions."""
    if circuit.dim > UNITARY_DIM_CAP:
        raise ValueError(f"dimension {circuit.dim} exceeds the cap {UNITARY_DIM_CAP}")
    params = np.zeros(circuit.num_params) if params is None else np.asarray(params, dtype=float)
    if params.shape != (circuit.num_params,):
        raise ValueError(f"expected {circuit.num_params} parameters")
    out = np.eye(circuit.dim, dtype=np.complex128)
    for col in range(circuit.dim):
        amps = out[:, col].copy()
        for g in circuit.gates:
            m = gates.matrix_for(g.spec, g.bound_angle(params))
            if g.spec.arity == 1:
                amps = sim.apply_gate_single(
                    amps, circuit.num_sites, circuit.local_dim, g.sites[0], m
                )
            else:
                amps = sim.apply_gate_two(
                    amps, circuit.num_sites, circuit.local_dim, g.sites[0], g.sites[1], m
                )
        out[:, col] = amps
    return out


def dump_circuit(circuit: Circuit) -> str:
    """One gate per line: name, sites, and binding, for golden-file comparison."""
    lines = []
    for g in circuit.gates:
        parts = [g.spec.name, "@" + ",".join(str(s) for s in g.sites)]
        if g.binding is not None:
            parts.append(f"p{g.binding.index}*{g.binding.coeff:.17g}")
        elif g.angle is not None:
            parts.append(f"={g.angle:.17g}")
        lines.append(" ".join(parts))
    return "\n".join(lines)
