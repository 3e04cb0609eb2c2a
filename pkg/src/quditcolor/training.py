"""Classical optimization loop: Adam over QAOA parameters with exact gradients.

Gradients come from parameter-shift rules applied at the gate level: each
trainable parameter feeds several gates (scaled by the binding coefficient),
and its derivative is the coefficient-weighted sum of shift-rule combinations
with the shift applied to one gate at a time.  A central finite-difference
path is kept alongside as an independent oracle.

Two evaluators provide cost values and per-gate shifted values behind the
same interface.  ``CircuitEvaluator`` simulates any :class:`~.circuits.Circuit`
gate by gate.  ``QaoaEvaluator`` is specialized to the QAOA circuits of
:func:`~.circuits.build_qaoa`: every cost block is exactly a diagonal
exponential, so a whole cost layer collapses to one elementwise phase, and a
gate-level shift inserts one extra diagonal phase (or one modified mixer
matrix).  The two evaluators agree to floating precision; the fast one is
what :func:`train` uses.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import gates, sim
from .circuits import Circuit, build_qaoa
from .encodings import (
    DiagonalCost,
    check_encoding,
    local_dim_for,
    qubit_edge_cost_table,
    qubit_suppression_table,
    qutrit_cost_table,
    sites_for,
    success_probability,
)
from .graphs import Graph
from .sim import Statevector, apply_gate_single, apply_gate_two, basis_digits

FD_STEP = 1e-5

GRADIENT_METHODS = ("paramshift", "finitediff")


class CircuitEvaluator:
    """Cost of an arbitrary circuit, simulated gate by gate from the ground state.

    Slow but fully general; used as the reference the fast evaluator is
    checked against, and for hand-built circuits in analytic tests.
    """

    def __init__(self, circuit: Circuit, cost_table: np.ndarray):
        cost_table = np.asarray(cost_table, dtype=float)
        if cost_table.shape != (circuit.dim,):
            raise ValueError("cost table does not match the circuit dimension")
        self.circuit = circuit
        self.cost_table = cost_table
        self.evaluations = 0

    @property
    def num_params(self) -> int:
        return self.circuit.num_params

    def bound_gates(self, param_index: int):
        out = []
        for i, g in enumerate(self.circuit.gates):
            if g.binding is not None and g.binding.index == param_index:
                out.append((i, g.binding.coeff, gates.shift_rule(g.spec)))
        return out

    def _state(self, params, shift_gate=None, shift=0.0) -> np.ndarray:
        self.evaluations += 1
        c = self.circuit
        amps = np.zeros(c.dim, dtype=np.complex128)
        amps[0] = 1.0
        for i, g in enumerate(c.gates):
            s = shift if i == shift_gate else 0.0
            m = gates.matrix_for(g.spec, g.bound_angle(params, s))
            if g.spec.arity == 1:
                amps = apply_gate_single(amps, c.num_sites, c.local_dim, g.sites[0], m)
            else:
                amps = apply_gate_two(amps, c.num_sites, c.local_dim, g.sites[0], g.sites[1], m)
        return amps

    def state(self, params) -> np.ndarray:
        return self._state(self._check(params))

    def value(self, params) -> float:
        amps = self._state(self._check(params))
        return float((np.abs(amps) ** 2) @ self.cost_table)

    def value_with_gate_shift(self, params, handle, s: float) -> float:
        amps = self._state(self._check(params), shift_gate=handle, shift=s)
        return float((np.abs(amps) ** 2) @ self.cost_table)

    def _check(self, params) -> np.ndarray:
        params = np.asarray(params, dtype=float)
        if params.shape != (self.num_params,):
            raise ValueError(f"expected {self.num_params} parameters, got {params.shape}")
        return params


class QaoaEvaluator:
    """Fast cost evaluator for the layered QAOA circuits of both encodings.

    Exploits that each cost layer is the exponential of a diagonal cost, so
    applying it is one elementwise phase multiply per layer instead of a walk
    over the gate list.  Gate-level parameter shifts insert a single extra
    diagonal phase (cost gates) or swap one site's mixer matrix.
    """

    def __init__(self, graph: Graph, encoding: str, layers: int, alpha: float = 2.0):
        check_encoding(encoding)
        if layers < 1:
            raise ValueError(f"layers must be >= 1, got {layers}")
        self.graph = graph
        self.encoding = encoding
        self.layers = layers
        self.alpha = float(alpha)
        self.num_sites = sites_for(encoding, graph.num_nodes)
        self.local_dim = local_dim_for(encoding)
        self.dim = self.local_dim**self.num_sites
        self.evaluations = 0

        if encoding == "qutrit":
            digits = basis_digits(self.num_sites, 3)
            self._edge_table = qutrit_cost_table(graph)
            self._cost_table = self._edge_table
            # per edge: exponent tables for a shifted TRZ01 / TRZ02 conjugated
            # by the TSub/TAdd pair; t is the folded target digit
            self._edge_shift = []
            for u, v in graph.edges:
                t = (digits[:, v].astype(np.int16) - digits[:, u]) % 3
                g01 = np.where(t == 0, 1, np.where(t == 1, -1, 0)).astype(np.int8)
                g02 = np.where(t == 0, 1, np.where(t == 2, -1, 0)).astype(np.int8)
                self._edge_shift.append((g01, g02))
            amp = (-1j / math.sqrt(3)) ** self.num_sites
            self._psi0 = np.full(self.dim, amp, dtype=np.complex128)
            self.num_params = 2 * layers
        else:
            digits = basis_digits(self.num_sites, 2)
            z = (1 - 2 * digits.astype(np.int16)).astype(np.int8)
            self._edge_table = qubit_edge_cost_table(graph)
            self._sup_table = qubit_suppression_table(graph.num_nodes)
            self._cost_table = self._edge_table + self.alpha * self._sup_table
            self._edge_shift = []
            for u, v in graph.edges:
                p1 = z[:, 2 * u] * z[:, 2 * v]
                p2 = z[:, 2 * u + 1] * z[:, 2 * v + 1]
                self._edge_shift.append((p1, p2, p1 * p2))
            self._sup_shift = []
            for v in range(graph.num_nodes):
                z1 = z[:, 2 * v]
                z2 = z[:, 2 * v + 1]
                self._sup_shift.append((z1 * z2, z1, z2))
            self._psi0 = np.full(self.dim, 2.0 ** (-0.5 * self.num_sites), dtype=np.complex128)
            self.num_params = 3 * layers

        self._bound = {k: self._build_handles(k) for k in range(self.num_params)}

    def _build_handles(self, param_index: int):
        out = []
        if self.encoding == "qutrit":
            layer, slot = divmod(param_index, 2)
            if slot == 0:
                for ei in range(len(self.graph.edges)):
                    for rot in (0, 1):
                        out.append((("edge", layer, ei, rot), 4.0 / 3.0, gates.FOUR_TERM_RULE))
            else:
                for q in range(self.num_sites):
                    for j in range(3):
                        out.append((("mixer", layer, q, j), 1.0, gates.FOUR_TERM_RULE))
        else:
            layer, slot = divmod(param_index, 3)
            if slot == 0:
                for ei in range(len(self.graph.edges)):
                    for k in range(3):
                        out.append((("edge", layer, ei, k), 2.0, gates.TWO_TERM_RULE))
            elif slot == 1:
                coeffs = (2.0 * self.alpha, -2.0 * self.alpha, -2.0 * self.alpha)
                for v in range(self.graph.num_nodes):
                    for k in range(3):
                        out.append((("sup", layer, v, k), coeffs[k], gates.TWO_TERM_RULE))
            else:
                for q in range(self.num_sites):
                    out.append((("mixer", layer, q), 1.0, gates.TWO_TERM_RULE))
        return out

    def bound_gates(self, param_index: int):
        return self._bound[param_index]

    @staticmethod
    def _shift_phase(g: np.ndarray, s: float) -> np.ndarray:
        em = complex(np.exp(-0.5j * s))
        return np.where(g == 1, em, np.where(g == -1, em.conjugate(), 1.0 + 0.0j))

    def _qutrit_mixer(self, phi: float, slot: int | None = None, s: float = 0.0) -> np.ndarray:
        angles = [phi, phi, phi]
        if slot is not None:
            angles[slot] += s
        m = gates.subspace_rotation("X", (0, 1), angles[0])
        m = gates.subspace_rotation("X", (0, 2), angles[1]) @ m
        return gates.subspace_rotation("X", (1, 2), angles[2]) @ m

    def _run(self, params: np.ndarray, handle=None, s: float = 0.0) -> np.ndarray:
        self.evaluations += 1
        psi = self._psi0.copy()
        n, d = self.num_sites, self.local_dim
        for layer in range(self.layers):
            if self.encoding == "qutrit":
                theta = params[2 * layer]
                phi = params[2 * layer + 1]
                psi = psi * np.exp(-1j * theta * self._edge_table)
                if handle is not None and handle[0] == "edge" and handle[1] == layer:
                    psi *= self._shift_phase(self._edge_shift[handle[2]][handle[3]], s)
                mix = self._qutrit_mixer(phi)
                for q in range(n):
                    m = mix
                    if handle is not None and handle[0] == "mixer" and handle[1] == layer and handle[2] == q:
                        m = self._qutrit_mixer(phi, slot=handle[3], s=s)
                    psi = apply_gate_single(psi, n, d, q, m)
            else:
                theta = params[3 * layer]
                gamma = params[3 * layer + 1]
                phi = params[3 * layer + 2]
                psi = psi * np.exp(-1j * (theta * self._edge_table + gamma * self.alpha * self._sup_table))
                if handle is not None and handle[1] == layer:
                    if handle[0] == "edge":
                        psi *= self._shift_phase(self._edge_shift[handle[2]][handle[3]], s)
                    elif handle[0] == "sup":
                        psi *= self._shift_phase(self._sup_shift[handle[2]][handle[3]], s)
                mix = gates.qubit_gate("RX", phi)
                for q in range(n):
                    m = mix
                    if handle is not None and handle[0] == "mixer" and handle[1] == layer and handle[2] == q:
                        m = gates.qubit_gate("RX", phi + s)
                    psi = apply_gate_single(psi, n, d, q, m)
        return psi

    def _check(self, params) -> np.ndarray:
        params = np.asarray(params, dtype=float)
        if params.shape != (self.num_params,):
            raise ValueError(f"expected {self.num_params} parameters, got {params.shape}")
        return params

    def state(self, params) -> np.ndarray:
        return self._run(self._check(params))

    def value(self, params) -> float:
        psi = self._run(self._check(params))
        return float((psi.real**2 + psi.imag**2) @ self._cost_table)

    def value_with_gate_shift(self, params, handle, s: float) -> float:
        psi = self._run(self._check(params), handle=handle, s=s)
        return float((psi.real**2 + psi.imag**2) @ self._cost_table)


def gradient(params, evaluator, method: str = "paramshift") -> np.ndarray:
    """Gradient of the evaluator's cost at ``params``.

    ``paramshift`` needs an evaluator with gate-level shift support (both
    evaluator classes above); ``finitediff`` also accepts a plain callable and
    uses central differences with step ``FD_STEP``.
    """
    params = np.asarray(params, dtype=float)
    method = method.lower()
    if method == "finitediff":
        value = evaluator if callable(evaluator) else evaluator.value
        out = np.zeros_like(params)
        for k in range(len(params)):
            bumped = params.copy()
            bumped[k] = params[k] + FD_STEP
            hi = value(bumped)
            bumped[k] = params[k] - FD_STEP
            lo = value(bumped)
            out[k] = (hi - lo) / (2 * FD_STEP)
        return out
    if method == "paramshift":
        if callable(evaluator) and not hasattr(evaluator, "bound_gates"):
            raise TypeError("paramshift needs an evaluator with gate-level shifts")
        out = np.zeros(evaluator.num_params)
        for k in range(evaluator.num_params):
            total = 0.0
            for handle, coeff, rule in evaluator.bound_gates(k):
                for s, w in rule.terms:
                    total += coeff * w * evaluator.value_with_gate_shift(params, handle, s)
            out[k] = total
        return out
    raise ValueError(f"unknown gradient method {method!r}")


@dataclass
class TrainConfig:
    """Hyperparameters and stopping policy for one training run.

    ``default_config`` fills the per-encoding stopping profile: qutrit runs
    are capped at 50 steps with successive-cost tolerance 0.01; qubit runs
    take at least 200 steps with tolerance 0.001 (and an artifact cap of 1000
    steps).  The convergence test compares consecutive cost values.
    """

    encoding: str
    layers: int
    alpha: float = 2.0
    max_steps: int = 50
    min_steps: int = 1
    cost_tolerance: float = 0.01
    learning_rate: float = 0.1
    adam_beta1: float = 0.9
    adam_beta2: float = 0.999
    adam_epsilon: float = 1e-8
    seed: int = 0
    gradient_method: str = "paramshift"
    init_scale: float = 0.1

    def __post_init__(self):
        check_encoding(self.encoding)
        if self.layers < 1:
            raise ValueError("layers must be >= 1")
        if self.min_steps > self.max_steps:
            raise ValueError("min_steps must not exceed max_steps")
        if self.cost_tolerance <= 0:
            raise ValueError("cost_tolerance must be > 0")
        if self.gradient_method.lower() not in GRADIENT_METHODS:
            raise ValueError(f"gradient_method must be one of {GRADIENT_METHODS}")


_PROFILES = {
    "qutrit": dict(max_steps=50, min_steps=1, cost_tolerance=0.01),
    "qubit": dict(max_steps=1000, min_steps=200, cost_tolerance=0.001),
}


def default_config(encoding: str, layers: int, **overrides) -> TrainConfig:
    """TrainConfig with the stopping profile for ``encoding`` applied."""
    settings = dict(_PROFILES[check_encoding(encoding)])
    settings.update(overrides)
    return TrainConfig(encoding=encoding, layers=layers, **settings)


@dataclass
class TrainResult:
    """Outcome of :func:`train`: optimized parameters plus run diagnostics."""

    params: np.ndarray
    cost_trace: list[float]
    grad_norms: list[float]
    eval_trace: list[int]
    steps_taken: int
    converged: bool
    success_raw: float
    success_postselected: float
    circuit_evaluations: int
    wall_time: float

    @property
    def final_cost(self) -> float:
        return self.cost_trace[-1]


def evaluate_cost(graph: Graph, encoding: str, layers: int, alpha: float, params) -> float:
    """Cost expectation of the QAOA circuit at ``params`` (2p qutrit / 3p qubit)."""
    return QaoaEvaluator(graph, encoding, layers, alpha).value(params)


def final_state(graph: Graph, encoding: str, layers: int, alpha: float, params) -> Statevector:
    """Statevector prepared by the QAOA circuit at ``params``."""
    ev = QaoaEvaluator(graph, encoding, layers, alpha)
    return Statevector(ev.num_sites, ev.local_dim, ev.state(params))


def reference_evaluator(graph: Graph, encoding: str, layers: int, alpha: float) -> CircuitEvaluator:
    """Gate-by-gate evaluator over the same circuit and cost; the slow oracle."""
    circuit = build_qaoa(graph, encoding, layers, alpha)
    return CircuitEvaluator(circuit, DiagonalCost(graph, encoding, alpha).table())


def train(graph: Graph, config: TrainConfig) -> TrainResult:
    """Adam descent on the QAOA cost; deterministic for a fixed config.

    Parameters start uniform in [-init_scale, init_scale] from the seeded
    generator.  After each step the run stops early once the successive cost
    difference drops below the tolerance (and at least ``min_steps`` steps
    have run), or at ``max_steps``.
    """
    t_start = time.perf_counter()
    ev = QaoaEvaluator(graph, config.encoding, config.layers, config.alpha)
    rng = np.random.default_rng(config.seed)
    params = rng.uniform(-config.init_scale, config.init_scale, ev.num_params)

    cost_trace = [ev.value(params)]
    eval_trace = [ev.evaluations]
    grad_norms: list[float] = []
    m = np.zeros(ev.num_params)
    v = np.zeros(ev.num_params)
    converged = False
    steps = 0
    for t in range(1, config.max_steps + 1):
        grad = gradient(params, ev, config.gradient_method)
        if not np.all(np.isfinite(grad)):
            raise RuntimeError(f"non-finite gradient at step {t}")
        m = config.adam_beta1 * m + (1 - config.adam_beta1) * grad
        v = config.adam_beta2 * v + (1 - config.adam_beta2) * grad**2
        m_hat = m / (1 - config.adam_beta1**t)
        v_hat = v / (1 - config.adam_beta2**t)
        params = params - config.learning_rate * m_hat / (np.sqrt(v_hat) + config.adam_epsilon)
        if not np.all(np.isfinite(params)):
            raise RuntimeError(f"non-finite parameters at step {t}")

        cost = ev.value(params)
        if not math.isfinite(cost):
            raise RuntimeError(f"non-finite cost at step {t}")
        cost_trace.append(cost)
        grad_norms.append(float(np.linalg.norm(grad)))
        eval_trace.append(ev.evaluations)
        steps = t
        if t >= config.min_steps and abs(cost_trace[-1] - cost_trace[-2]) < config.cost_tolerance:
            converged = True
            break

    state = Statevector(ev.num_sites, ev.local_dim, ev.state(params))
    raw = success_probability(state, graph, config.encoding, postselect=False)
    post = success_probability(state, graph, config.encoding, postselect=True)
    return TrainResult(
        params=params,
        cost_trace=cost_trace,
        grad_norms=grad_norms,
        eval_trace=eval_trace,
        steps_taken=steps,
        converged=converged,
        success_raw=raw,
        success_postselected=post,
        circuit_evaluations=ev.evaluations,
        wall_time=time.perf_counter() - t_start,
    )


def write_trace_csv(result: TrainResult, path):
    """Per-step trace: step, cost, gradient norm, cumulative circuit evaluations."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write("# quditcolor-csv v1 trace\n")
        f.write("step,cost,grad_norm,circuit_evaluations\n")
        for step, cost in enumerate(result.cost_trace):
            norm = "" if step == 0 else f"{result.grad_norms[step - 1]:.17g}"
            f.write(f"{step},{cost:.17g},{norm},{result.eval_trace[step]}\n")
