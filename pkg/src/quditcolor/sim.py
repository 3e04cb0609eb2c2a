"""Dense statevector simulation for registers of uniform local dimension 2 or 3.

Basis indices are big-endian: site 0 is the most significant base-d digit, so
printed digit strings read left to right like node lists.  Gates are applied
by reshaping the amplitude vector around the target sites; the full gate
matrix is never expanded to the register dimension.
"""

from __future__ import annotations

import numpy as np

from .gates import unitarity_defect

#: dimension guard: local_dim ** num_sites must not exceed 2 ** cap
DEFAULT_SITE_CAP_QUBITS = 18

UNITARY_TOL = 1e-10


def index_to_digits(index: int, num_sites: int, local_dim: int) -> tuple[int, ...]:
    """Big-endian base-``local_dim`` digits of a basis index, one per site."""
    if not 0 <= index < local_dim**num_sites:
        raise ValueError(f"index {index} out of range for {num_sites} sites")
    digits = []
    for site in range(num_sites):
        digits.append((index // local_dim ** (num_sites - 1 - site)) % local_dim)
    return tuple(digits)


def digits_to_index(digits, local_dim: int) -> int:
    """Inverse of :func:`index_to_digits`."""
    index = 0
    for d in digits:
        if not 0 <= d < local_dim:
            raise ValueError(f"digit {d} out of range for local_dim {local_dim}")
        index = index * local_dim + d
    return index


def basis_digits(num_sites: int, local_dim: int) -> np.ndarray:
    """(dim, num_sites) table of the big-endian digits of every basis index."""
    idx = np.arange(local_dim**num_sites)
    powers = local_dim ** np.arange(num_sites - 1, -1, -1, dtype=np.int64)
    return ((idx[:, None] // powers) % local_dim).astype(np.int8)


def apply_gate_single(amps: np.ndarray, num_sites: int, local_dim: int,
                      site: int, matrix: np.ndarray) -> np.ndarray:
    """Apply a d x d matrix to one site of a raw amplitude vector."""
    d = local_dim
    left = d**site
    right = d ** (num_sites - site - 1)
    a = amps.reshape(left, d, right)
    out = matrix @ a.transpose(1, 0, 2).reshape(d, left * right)
    return out.reshape(d, left, right).transpose(1, 0, 2).reshape(-1)


def apply_gate_two(amps: np.ndarray, num_sites: int, local_dim: int,
                   site_a: int, site_b: int, matrix: np.ndarray) -> np.ndarray:
    """Apply a d^2 x d^2 matrix to an ordered site pair of a raw amplitude vector.

    The matrix row/column index is d * (digit of site_a) + (digit of site_b);
    the sites need not be adjacent or ordered.
    """
    d = local_dim
    psi = amps.reshape([d] * num_sites)
    moved = np.moveaxis(psi, (site_a, site_b), (0, 1))
    rest = moved.shape[2:]
    out = matrix @ moved.reshape(d * d, -1)
    out = out.reshape((d, d) + rest)
    return np.moveaxis(out, (0, 1), (site_a, site_b)).reshape(-1)


class Statevector:
    """Mutable dense state over ``num_sites`` qudits of dimension ``local_dim``.

    Instances are independent; one instance is meant to be driven from a
    single thread, but distinct instances share nothing.
    """

    __slots__ = ("num_sites", "local_dim", "amplitudes")

    def __init__(self, num_sites: int, local_dim: int, amplitudes: np.ndarray):
        if local_dim not in (2, 3):
            raise ValueError(f"local_dim must be 2 or 3, got {local_dim}")
        if num_sites < 1:
            raise ValueError(f"num_sites must be >= 1, got {num_sites}")
        amplitudes = np.asarray(amplitudes, dtype=np.complex128)
        if amplitudes.shape != (local_dim**num_sites,):
            raise ValueError(
                f"amplitudes must have length {local_dim**num_sites}, "
                f"got shape {amplitudes.shape}"
            )
        self.num_sites = num_sites
        self.local_dim = local_dim
        self.amplitudes = amplitudes

    @property
    def dim(self) -> int:
        return self.local_dim**self.num_sites

    def copy(self) -> "Statevector":
        return Statevector(self.num_sites, self.local_dim, self.amplitudes.copy())

    def _check_site(self, site: int):
        if not 0 <= site < self.num_sites:
            raise ValueError(f"site {site} out of range for {self.num_sites} sites")

    def apply_single(self, site: int, matrix: np.ndarray, check_unitary: bool = True):
        """Apply a single-site gate in place."""
        self._check_site(site)
        matrix = np.asarray(matrix, dtype=np.complex128)
        if matrix.shape != (self.local_dim, self.local_dim):
            raise ValueError(f"expected a {self.local_dim}x{self.local_dim} matrix")
        if check_unitary and unitarity_defect(matrix) > UNITARY_TOL:
            raise ValueError("matrix is not unitary")
        self.amplitudes = apply_gate_single(
            self.amplitudes, self.num_sites, self.local_dim, site, matrix
        )

    def apply_two(self, site_a: int, site_b: int, matrix: np.ndarray,
                  check_unitary: bool = True):
        """Apply a two-site gate in place; ``site_a`` indexes the slow matrix axis."""
        self._check_site(site_a)
        self._check_site(site_b)
        if site_a == site_b:
            raise ValueError("two-site gate needs distinct sites")
        d2 = self.local_dim**2
        matrix = np.asarray(matrix, dtype=np.complex128)
        if matrix.shape != (d2, d2):
            raise ValueError(f"expected a {d2}x{d2} matrix")
        if check_unitary and unitarity_defect(matrix) > UNITARY_TOL:
            raise ValueError("matrix is not unitary")
        self.amplitudes = apply_gate_two(
            self.amplitudes, self.num_sites, self.local_dim, site_a, site_b, matrix
        )

    def probabilities(self) -> np.ndarray:
        """|amplitude|^2 per basis index."""
        return np.abs(self.amplitudes) ** 2

    def sample(self, shots: int, seed: int) -> list[int]:
        """Draw ``shots`` i.i.d. basis indices; deterministic for a fixed seed."""
        if shots < 1:
            raise ValueError(f"shots must be >= 1, got {shots}")
        p = self.probabilities()
        p = p / p.sum()
        rng = np.random.default_rng(seed)
        return [int(i) for i in rng.choice(self.dim, size=shots, p=p)]


def init_ground(num_sites: int, local_dim: int,
                site_cap_qubits: int = DEFAULT_SITE_CAP_QUBITS) -> Statevector:
    """All-zeros product state |0...0>."""
    if local_dim not in (2, 3):
        raise ValueError(f"local_dim must be 2 or 3, got {local_dim}")
    if num_sites < 1:
        raise ValueError(f"num_sites must be >= 1, got {num_sites}")
    if local_dim**num_sites > 2**site_cap_qubits:
        raise ValueError(
            f"{num_sites} sites of dimension {local_dim} exceed the "
            f"{site_cap_qubits}-qubit-equivalent cap"
        )
    amps = np.zeros(local_dim**num_sites, dtype=np.complex128)
    amps[0] = 1.0
    return Statevector(num_sites, local_dim, amps)


def expectation_diagonal(state: Statevector, cost) -> float:
    """Expectation of a diagonal cost over the state: sum_i p_i * cost(i).

    ``cost`` may be a plain array of per-basis values or any object with a
    ``table()`` method returning one.
    """
    table = cost.table() if hasattr(cost, "table") else np.asarray(cost, dtype=float)
    if table.shape != (state.dim,):
        raise ValueError(f"cost table has shape {table.shape}, state dim is {state.dim}")
    return float(state.probabilities() @ table)
