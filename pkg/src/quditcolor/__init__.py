"""quditcolor: qutrit-vs-qubit QAOA for graph 3-coloring at desk scale.

A dense mixed-radix statevector simulator, gate library, problem encodings,
QAOA circuit construction and resource analysis, and a deterministic trainer,
plus a CLI harness (``quditcolor --help``) for batch experiments.
"""

from .circuits import (
    Circuit,
    GateInstance,
    ParamBinding,
    build_mixer,
    build_qaoa,
    build_qubit_edge_block,
    build_qutrit_edge_block,
    build_suppression_block,
    circuit_unitary,
    depth,
    dump_circuit,
    entangling_count,
    peephole,
    per_layer_depth,
)
from .encodings import (
    DiagonalCost,
    decode,
    is_valid_coloring,
    qubit_cost,
    qutrit_cost,
    success_probability,
)
from .gates import GateSpec, ShiftRule, gell_mann, qubit_gate, shift_rule, subspace_rotation, tadd, th, tsub
from .graphs import Graph, enumerate_3colorable, max_degree, random_tripartite, read_graph, three_color, write_graph
from .sim import Statevector, expectation_diagonal, init_ground
from .training import (
    QaoaEvaluator,
    TrainConfig,
    TrainResult,
    default_config,
    evaluate_cost,
    final_state,
    gradient,
    train,
)

__version__ = "0.1.0"
