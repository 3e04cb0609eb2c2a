import numpy as np
import pytest
from helpers import GM

from quditcolor import circuits, gates, training
from quditcolor.circuits import Circuit, GateInstance, ParamBinding
from quditcolor.graphs import Graph
from quditcolor.training import (
    CircuitEvaluator,
    QaoaEvaluator,
    default_config,
    evaluate_cost,
    final_state,
    gradient,
    reference_evaluator,
    train,
)

EDGE = Graph(2, [(0, 1)])
K3 = Graph(3, [(0, 1), (0, 2), (1, 2)])


def random_graph(rng, max_nodes=4):
    while True:
        n = int(rng.integers(2, max_nodes + 1))
        edges = [
            (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.6
        ]
        if edges:
            return Graph(n, edges)


def test_evaluate_cost_zero_params():
    # zero angles leave the uniform wall state: qutrit expectation is 0
    np.testing.assert_allclose(
        evaluate_cost(EDGE, "qutrit", 1, 2.0, [0.0, 0.0]), 0.0, atol=1e-12
    )
    # qubit: brute-force average of the full cost diagonal over 16 states
    from quditcolor.encodings import qubit_cost_table

    expected = qubit_cost_table(EDGE, 2.0).mean()
    np.testing.assert_allclose(
        evaluate_cost(EDGE, "qubit", 1, 2.0, [0.0, 0.0, 0.0]), expected, atol=1e-12
    )
    np.testing.assert_allclose(expected, 0.0, atol=1e-12)


def test_evaluate_cost_param_length_check():
    with pytest.raises(ValueError):
        evaluate_cost(EDGE, "qutrit", 1, 2.0, [0.0, 0.0, 0.0])
    with pytest.raises(ValueError):
        evaluate_cost(EDGE, "qubit", 2, 2.0, [0.0] * 5)


def test_evaluate_cost_bitwise_deterministic():
    params = [0.31, -0.7, 0.12, 0.5, -0.25, 0.9]
    a = evaluate_cost(K3, "qutrit", 3, 2.0, params)
    b = evaluate_cost(K3, "qutrit", 3, 2.0, params)
    assert a == b


@pytest.mark.parametrize("encoding", ["qutrit", "qubit"])
def test_fast_evaluator_matches_gate_by_gate_reference(encoding):
    rng = np.random.default_rng(20)
    for _ in range(8):
        g = random_graph(rng, max_nodes=3)
        p = int(rng.integers(1, 3))
        fast = QaoaEvaluator(g, encoding, p, 2.0)
        ref = reference_evaluator(g, encoding, p, 2.0)
        params = rng.uniform(-2, 2, fast.num_params)
        np.testing.assert_allclose(fast.value(params), ref.value(params), atol=1e-12)
        np.testing.assert_allclose(
            gradient(params, fast), gradient(params, ref), atol=1e-12
        )


@pytest.mark.parametrize("encoding", ["qutrit", "qubit"])
def test_paramshift_matches_finite_differences(encoding):
    # >= 50 random (graph, layers, params) instances per encoding
    rng = np.random.default_rng(21)
    worst = 0.0
    for _ in range(50):
        g = random_graph(rng)
        p = int(rng.integers(1, 3))
        ev = QaoaEvaluator(g, encoding, p, 2.0)
        params = rng.uniform(-2, 2, ev.num_params)
        ps = gradient(params, ev, "paramshift")
        fd = gradient(params, ev, "finitediff")
        worst = max(worst, float(np.max(np.abs(ps - fd))))
    assert worst < 1e-6


def test_gradient_analytic_single_rotation():
    # one TRX01(theta) from |0>, measuring gm3: cost is cos(theta)
    spec = gates.GateSpec("TRX", (0, 1))
    circ = Circuit(1, 3, (GateInstance(spec, (0,), ParamBinding(0)),), 1)
    ev = CircuitEvaluator(circ, np.real(np.diag(GM[3])))
    for theta in (0.3, np.pi / 3, -1.2):
        np.testing.assert_allclose(ev.value([theta]), np.cos(theta), atol=1e-12)
        grad = gradient(np.array([theta]), ev, "paramshift")
        np.testing.assert_allclose(grad, [-np.sin(theta)], atol=1e-9)


def test_gradient_constant_cost_and_method_errors():
    np.testing.assert_allclose(
        gradient(np.array([0.4, -0.2]), lambda p: 3.5, "finitediff"), [0.0, 0.0], atol=0
    )
    with pytest.raises(TypeError):
        gradient(np.array([0.4]), lambda p: 3.5, "paramshift")
    ev = QaoaEvaluator(EDGE, "qutrit", 1)
    with pytest.raises(ValueError):
        gradient(np.zeros(2), ev, "adjoint")


def test_gradient_binding_coefficient_chain_rule():
    # same gate bound as c*theta: gradient must scale by c
    spec = gates.GateSpec("TRX", (0, 1))
    cost = np.real(np.diag(GM[3]))
    plain = CircuitEvaluator(
        Circuit(1, 3, (GateInstance(spec, (0,), ParamBinding(0)),), 1), cost
    )
    scaled = CircuitEvaluator(
        Circuit(1, 3, (GateInstance(spec, (0,), ParamBinding(0, 2.5)),), 1), cost
    )
    theta = 0.37
    g_plain = gradient(np.array([2.5 * theta]), plain)
    g_scaled = gradient(np.array([theta]), scaled)
    np.testing.assert_allclose(g_scaled, 2.5 * g_plain, atol=1e-10)
    fd = gradient(np.array([theta]), scaled, "finitediff")
    np.testing.assert_allclose(g_scaled, fd, atol=1e-6)


def test_shared_parameter_gradient_sums_over_gates():
    # two rotations bound to one parameter; compare against finite differences
    spec = gates.GateSpec("TRX", (0, 1))
    circ = Circuit(
        1,
        3,
        (
            GateInstance(spec, (0,), ParamBinding(0)),
            GateInstance(gates.GateSpec("TRZ", (0, 2)), (0,), ParamBinding(0, 0.5)),
            GateInstance(spec, (0,), ParamBinding(0)),
        ),
        1,
    )
    ev = CircuitEvaluator(circ, np.real(np.diag(GM[3] + 0.3 * GM[8])))
    params = np.array([0.81])
    np.testing.assert_allclose(
        gradient(params, ev), gradient(params, ev, "finitediff"), atol=1e-6
    )


def test_config_validation_and_profiles():
    cfg = default_config("qutrit", 3)
    assert (cfg.max_steps, cfg.min_steps, cfg.cost_tolerance) == (50, 1, 0.01)
    cfg = default_config("qubit", 3)
    assert (cfg.max_steps, cfg.min_steps, cfg.cost_tolerance) == (1000, 200, 0.001)
    assert cfg.alpha == 2.0 and cfg.learning_rate == 0.1
    with pytest.raises(ValueError):
        default_config("qutrit", 0)
    with pytest.raises(ValueError):
        default_config("qutrit", 1, min_steps=10, max_steps=5)
    with pytest.raises(ValueError):
        default_config("qutrit", 1, cost_tolerance=0.0)
    with pytest.raises(ValueError):
        default_config("qutrit", 1, gradient_method="magic")


def test_train_k3_beats_uniform_baseline():
    result = train(K3, default_config("qutrit", 3, seed=0))
    assert result.success_raw > 6 / 27
    assert result.cost_trace[-1] < result.cost_trace[0]
    assert len(result.cost_trace) == result.steps_taken + 1
    assert result.success_postselected == result.success_raw  # qutrit: no invalid states


def test_train_zero_steps():
    cfg = default_config("qutrit", 1, max_steps=0, min_steps=0, seed=3)
    result = train(K3, cfg)
    assert result.steps_taken == 0 and not result.converged
    assert len(result.cost_trace) == 1
    ev = QaoaEvaluator(K3, "qutrit", 1)
    rng = np.random.default_rng(3)
    params = rng.uniform(-0.1, 0.1, 2)
    np.testing.assert_allclose(result.params, params, atol=0)
    assert result.cost_trace[0] == ev.value(params)


def test_train_seed_determinism():
    cfg = default_config("qutrit", 2, seed=7)
    a = train(K3, cfg)
    b = train(K3, cfg)
    assert a.cost_trace == b.cost_trace
    assert a.grad_norms == b.grad_norms
    np.testing.assert_array_equal(a.params, b.params)
    assert a.success_raw == b.success_raw
    c = train(K3, default_config("qutrit", 2, seed=8))
    assert a.cost_trace != c.cost_trace


def test_train_qubit_profile_runs_minimum_steps():
    cfg = default_config("qubit", 1, seed=1, max_steps=220)
    result = train(EDGE, cfg)
    assert result.steps_taken >= 200
    assert result.success_postselected >= result.success_raw


def test_trace_best_so_far_non_increasing_and_run_improves():
    # Adam's per-step cost oscillates by design; the guard is on the running
    # best, which must never move up, and each run must improve on its start
    for seed in range(4):
        result = train(K3, default_config("qutrit", 3, seed=seed))
        best_so_far = np.minimum.accumulate(result.cost_trace)
        assert np.all(np.diff(best_so_far) <= 0)
        assert best_so_far[-1] < result.cost_trace[0]


def test_parameter_count_contract():
    for p in (1, 2):
        assert len(train(EDGE, default_config("qutrit", p, max_steps=1)).params) == 2 * p
        cfg = default_config("qubit", p, max_steps=1, min_steps=1)
        assert len(train(EDGE, cfg).params) == 3 * p


def test_evaluation_cost_per_parameter():
    # one gradient: 4 evaluations per qutrit bound gate, 2 per qubit bound gate
    ev = QaoaEvaluator(EDGE, "qutrit", 1)
    gradient(np.zeros(2), ev)
    evals = ev.evaluations
    # 2 edge rotations * 4 + 6 mixer rotations * 4
    assert evals == 2 * 4 + 6 * 4

    ev = QaoaEvaluator(EDGE, "qubit", 1)
    gradient(np.zeros(3), ev)
    # per layer: 3 RZ per edge + 3 RZ per node * 2 nodes + 4 RX, all 2-term
    assert ev.evaluations == (3 * 1 + 3 * 2 + 4) * 2


def test_trainer_aborts_on_non_finite():
    cfg = default_config("qutrit", 1, learning_rate=np.inf, max_steps=3)
    with pytest.raises(RuntimeError, match="step"):
        train(K3, cfg)


def test_final_state_matches_success_probability():
    from quditcolor.encodings import success_probability

    cfg = default_config("qutrit", 2, seed=5)
    result = train(K3, cfg)
    state = final_state(K3, "qutrit", 2, 2.0, result.params)
    np.testing.assert_allclose(
        success_probability(state, K3, "qutrit"), result.success_raw, atol=1e-12
    )


def test_write_trace_csv(tmp_path):
    result = train(EDGE, default_config("qutrit", 1, seed=2, max_steps=5))
    path = tmp_path / "trace.csv"
    training.write_trace_csv(result, path)
    lines = path.read_text().splitlines()
    assert lines[0].startswith("# quditcolor-csv")
    assert lines[1] == "step,cost,grad_norm,circuit_evaluations"
    assert len(lines) == 2 + len(result.cost_trace)
    first = lines[2].split(",")
    assert first[0] == "0" and first[2] == ""
