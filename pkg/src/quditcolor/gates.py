"""Qubit and qutrit gate matrices, Gell-Mann observables, and shift-rule metadata.

Qutrit single-site gates are built from rotations acting inside a two-state
subspace (i, j) of the three basis states, leaving the third state untouched.
The entangling gates are controlled addition/subtraction modulo 3.  All
matrices are returned as fresh ``complex128`` numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

OMEGA = np.exp(2j * np.pi / 3)

#: the three constructible rotation subspaces of a qutrit
SUBSPACES = ((0, 1), (0, 2), (1, 2))

_PARAMETRIZED_KINDS = frozenset({"TRX", "TRY", "TRZ", "RX", "RZ"})
_TWO_SITE_KINDS = frozenset({"TADD", "TSUB", "CNOT"})
_QUTRIT_KINDS = frozenset({"TRX", "TRY", "TRZ", "TH", "TADD", "TSUB", "GM"})
_QUBIT_KINDS = frozenset({"H", "RX", "RZ", "CNOT"})


@dataclass(frozen=True)
class GateSpec:
    """Immutable description of a gate kind, before it is placed in a circuit.

    ``subspace`` is required exactly for the qutrit rotations TRX/TRY/TRZ;
    ``gm_index`` (1..8) is required exactly for the GM (Gell-Mann observable)
    kind.
    """

    kind: str
    subspace: tuple[int, int] | None = None
    gm_index: int | None = None

    def __post_init__(self):
        if self.kind not in _QUTRIT_KINDS | _QUBIT_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if self.kind in ("TRX", "TRY", "TRZ"):
            if self.subspace not in SUBSPACES:
                raise ValueError(f"{self.kind} needs a subspace from {SUBSPACES}")
        elif self.subspace is not None:
            raise ValueError(f"{self.kind} does not take a subspace")
        if self.kind == "GM":
            if self.gm_index not in range(1, 9):
                raise ValueError("GM index must be in 1..8")
        elif self.gm_index is not None:
            raise ValueError(f"{self.kind} does not take a Gell-Mann index")

    @property
    def arity(self) -> int:
        return 2 if self.kind in _TWO_SITE_KINDS else 1

    @property
    def parametrized(self) -> bool:
        return self.kind in _PARAMETRIZED_KINDS

    @property
    def local_dim(self) -> int:
        return 3 if self.kind in _QUTRIT_KINDS else 2

    @property
    def name(self) -> str:
        if self.subspace is not None:
            return f"{self.kind}({self.subspace[0]},{self.subspace[1]})"
        if self.kind == "GM":
            return f"GM{self.gm_index}"
        return self.kind


def subspace_rotation(axis: str, subspace: tuple[int, int], theta: float) -> np.ndarray:
    """3x3 rotation by ``theta`` acting on basis states (i, j), identity on the third.

    The (i, j) block is the standard qubit rotation matrix for the given axis,
    so e.g. the X rotation in subspace (0, 1) is generated by the first
    Gell-Mann matrix: exp(-i theta gm(1) / 2).
    """
    axis = axis.upper()
    if subspace not in SUBSPACES:
        raise ValueError(f"subspace must be one of {SUBSPACES}, got {subspace}")
    c = math.cos(theta / 2)
    s = math.sin(theta / 2)
    if axis == "X":
        block = np.array([[c, -1j * s], [-1j * s, c]])
    elif axis == "Y":
        block = np.array([[c, -s], [s, c]], dtype=complex)
    elif axis == "Z":
        block = np.array([[np.exp(-0.5j * theta), 0], [0, np.exp(0.5j * theta)]])
    else:
        raise ValueError(f"axis must be X, Y or Z, got {axis!r}")
    i, j = subspace
    out = np.eye(3, dtype=complex)
    out[np.ix_((i, j), (i, j))] = block
    return out


def th() -> np.ndarray:
    """The qutrit Clifford Hadamard: (-i/sqrt(3)) times the order-3 Fourier matrix."""
    return (-1j / math.sqrt(3)) * np.array(
        [[1, 1, 1], [1, OMEGA, OMEGA**2], [1, OMEGA**2, OMEGA]], dtype=complex
    )


_GELL_MANN = {
    1: np.array([[0, 1, 0], [1, 0, 0], [0, 0, 0]], dtype=complex),
    2: np.array([[0, -1j, 0], [1j, 0, 0], [0, 0, 0]]),
    3: np.diag([1.0, -1.0, 0.0]).astype(complex),
    4: np.array([[0, 0, 1], [0, 0, 0], [1, 0, 0]], dtype=complex),
    5: np.array([[0, 0, -1j], [0, 0, 0], [1j, 0, 0]]),
    6: np.array([[0, 0, 0], [0, 0, 1], [0, 1, 0]], dtype=complex),
    7: np.array([[0, 0, 0], [0, 0, -1j], [0, 1j, 0]]),
    8: np.diag([1.0, 1.0, -2.0]).astype(complex) / math.sqrt(3),
}


def gell_mann(k: int) -> np.ndarray:
    """The k-th Gell-Mann observable (k in 1..8), the qutrit analog of a Pauli."""
    if k not in _GELL_MANN:
        raise ValueError(f"Gell-Mann index must be in 1..8, got {k}")
    return _GELL_MANN[k].copy()


def tadd() -> np.ndarray:
    """Controlled addition modulo 3: |j, k> -> |j, k + j mod 3> (control first)."""
    out = np.zeros((9, 9), dtype=complex)
    for j in range(3):
        for k in range(3):
            out[3 * j + (k + j) % 3, 3 * j + k] = 1.0
    return out


def tsub() -> np.ndarray:
    """Controlled subtraction modulo 3, the adjoint of :func:`tadd`."""
    return tadd().conj().T


def qubit_gate(kind: str, theta: float | None = None) -> np.ndarray:
    """Standard qubit gates: H, RX(theta), RZ(theta), CNOT (control first)."""
    if kind in ("RX", "RZ"):
        if theta is None:
            raise ValueError(f"{kind} requires an angle")
        c = math.cos(theta / 2)
        s = math.sin(theta / 2)
        if kind == "RX":
            return np.array([[c, -1j * s], [-1j * s, c]])
        return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])
    if theta is not None:
        raise ValueError(f"{kind} takes no angle")
    if kind == "H":
        return np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
    if kind == "CNOT":
        out = np.zeros((4, 4), dtype=complex)
        for c_bit in range(2):
            for t_bit in range(2):
                out[2 * c_bit + (t_bit ^ c_bit), 2 * c_bit + t_bit] = 1.0
        return out
    raise ValueError(f"unknown qubit gate {kind!r}")


def matrix_for(spec: GateSpec, angle: float | None = None) -> np.ndarray:
    """Concrete matrix for a gate spec, with ``angle`` iff the spec is parametrized."""
    if spec.parametrized:
        if angle is None:
            raise ValueError(f"{spec.name} requires an angle")
    elif angle is not None:
        raise ValueError(f"{spec.name} takes no angle")
    if spec.kind in ("TRX", "TRY", "TRZ"):
        return subspace_rotation(spec.kind[-1], spec.subspace, angle)
    if spec.kind == "TH":
        return th()
    if spec.kind == "TADD":
        return tadd()
    if spec.kind == "TSUB":
        return tsub()
    if spec.kind == "GM":
        return gell_mann(spec.gm_index)
    return qubit_gate(spec.kind, angle)


def unitarity_defect(matrix: np.ndarray) -> float:
    """Max-norm of U†U - I, used by validation checks."""
    matrix = np.asarray(matrix)
    eye = np.eye(matrix.shape[0])
    return float(np.max(np.abs(matrix.conj().T @ matrix - eye)))


@dataclass(frozen=True)
class ShiftRule:
    """Exact derivative rule: df/da = sum of coeff * f(a + shift) over terms."""

    terms: tuple[tuple[float, float], ...]  # (shift, coefficient)


# Rule for rotations whose Hermitian generator has eigenvalues {-1/2, 0, +1/2}
# (all qutrit subspace rotations).  The expectation value is then a
# trigonometric polynomial with frequencies 1/2 and 1 in the gate angle, and
# the four symmetric differences below differentiate it exactly.  Note both
# brackets are differences f(a+s) - f(a-s); this is the sign choice validated
# against central finite differences in the test suite.
FOUR_TERM_RULE = ShiftRule(
    terms=(
        (math.pi / 2, (2 + math.sqrt(2)) / 8),
        (-math.pi / 2, -(2 + math.sqrt(2)) / 8),
        (3 * math.pi / 2, -(2 - math.sqrt(2)) / 8),
        (-3 * math.pi / 2, (2 - math.sqrt(2)) / 8),
    )
)

# Standard single-gap rule for qubit rotations (generator eigenvalues +-1/2).
TWO_TERM_RULE = ShiftRule(terms=((math.pi / 2, 0.5), (-math.pi / 2, -0.5)))


def shift_rule(spec: GateSpec) -> ShiftRule:
    """Parameter-shift rule for a parametrized gate spec."""
    if not spec.parametrized:
        raise ValueError(f"{spec.name} is not parametrized")
    if spec.kind in ("TRX", "TRY", "TRZ"):
        return FOUR_TERM_RULE
    return TWO_TERM_RULE
