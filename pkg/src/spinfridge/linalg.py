"""Dense complex linear algebra and state primitives for up to four qubits.

Conventions used by every module in this package:

* Qubit 0 is the most significant bit of a computational-basis index, so
  for three qubits the basis ket ``|b0 b1 b2>`` sits at index
  ``4*b0 + 2*b1 + b2``.  (Spin q1 of the refrigerator is qubit 0.)
* Energies are dimensionless multiples of the energy unit delta, times are
  in 1/delta, and hbar = k_B = 1.
* Structural checks (hermiticity, unitarity, trace) use a 1e-12 tolerance;
  positivity allows eigenvalue drift down to -1e-10, which is clamped.

Sizes never exceed 16x16, so every operation here is exact dense algebra;
matrix exponentials go through a full eigendecomposition rather than any
series or scaling-and-squaring scheme.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

HERMITIAN_TOL = 1e-12
UNITARY_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10

MAX_DIM = 16  # four qubits


class Operator:
    """Immutable dense complex square matrix on 1..4 qubits."""

    __slots__ = ("_mat",)

    def __init__(self, matrix) -> None:
        mat = np.array(matrix, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError(f"operator must be a square matrix, got shape {mat.shape}")
        dim = mat.shape[0]
        if dim < 2 or dim > MAX_DIM or dim & (dim - 1):
            raise ValueError(
                f"operator dimension must be a power of two in [2, {MAX_DIM}], got {dim}"
            )
        mat.setflags(write=False)
        self._mat = mat

    @property
    def matrix(self) -> np.ndarray:
        """Read-only view of the underlying matrix."""
        return self._mat

    @property
    def dim(self) -> int:
        return self._mat.shape[0]

    @property
    def n_qubits(self) -> int:
        return self.dim.bit_length() - 1

    def dagger(self) -> "Operator":
        return Operator(self._mat.conj().T)

    def is_hermitian(self, tol: float = HERMITIAN_TOL) -> bool:
        return bool(np.max(np.abs(self._mat - self._mat.conj().T)) <= tol)

    def is_unitary(self, tol: float = UNITARY_TOL) -> bool:
        probe = self._mat.conj().T @ self._mat
        return bool(np.max(np.abs(probe - np.eye(self.dim))) <= tol)

    def __add__(self, other: "Operator") -> "Operator":
        return Operator(self._mat + other._mat)

    def __sub__(self, other: "Operator") -> "Operator":
        return Operator(self._mat - other._mat)

    def __neg__(self) -> "Operator":
        return Operator(-self._mat)

    def __mul__(self, scalar) -> "Operator":
        return Operator(self._mat * complex(scalar))

    __rmul__ = __mul__

    def __matmul__(self, other: "Operator") -> "Operator":
        return Operator(self._mat @ other._mat)

    def __repr__(self) -> str:
        return f"Operator(dim={self.dim})"


class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite operator.

    Construction canonicalizes the input: it is symmetrized, eigenvalue
    drift in [-1e-10, 0) is clamped to zero, and the trace is renormalized
    to exactly one.  Inputs violating hermiticity or trace by more than
    1e-12, or with eigenvalues below -1e-10, are rejected.
    """

    __slots__ = ("_op",)

    def __init__(self, matrix) -> None:
        op = matrix if isinstance(matrix, Operator) else Operator(matrix)
        mat = op.matrix
        herm_err = float(np.max(np.abs(mat - mat.conj().T)))
        if herm_err > HERMITIAN_TOL:
            raise ValueError(f"density matrix not Hermitian: max deviation {herm_err:.3e}")
        tr = complex(np.trace(mat))
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"density matrix trace {tr} differs from 1 beyond tolerance")
        mat = (mat + mat.conj().T) / 2.0
        eigs = np.linalg.eigvalsh(mat)
        if eigs[0] < -PSD_TOL:
            raise ValueError(f"density matrix not PSD: min eigenvalue {eigs[0]:.3e}")
        if eigs[0] < 0.0:
            # clamp harmless floating-point negativity
            w, v = np.linalg.eigh(mat)
            mat = (v * np.clip(w, 0.0, None)) @ v.conj().T
        mat = mat / np.trace(mat).real
        self._op = Operator(mat)

    @property
    def op(self) -> Operator:
        return self._op

    @property
    def matrix(self) -> np.ndarray:
        return self._op.matrix

    @property
    def dim(self) -> int:
        return self._op.dim

    @property
    def n_qubits(self) -> int:
        return self._op.n_qubits

    @property
    def populations(self) -> np.ndarray:
        """Real diagonal in the computational basis."""
        return np.real(np.diag(self._op.matrix))

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self._op.matrix)

    def __repr__(self) -> str:
        return f"DensityMatrix(dim={self.dim})"


_PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

IDENTITY_2 = Operator(_PAULI["I"])
PAULI_X = Operator(_PAULI["X"])
PAULI_Y = Operator(_PAULI["Y"])
PAULI_Z = Operator(_PAULI["Z"])
HADAMARD = Operator(np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2.0))
# basis change taking sigma_z to sigma_y, the sigma_y analogue of the Hadamard
HADAMARD_Y = Operator(np.array([[1, -1j], [1j, -1]], dtype=complex) / np.sqrt(2.0))


@dataclass(frozen=True)
class PauliString:
    """Tensor product of single-qubit Paulis with a real coefficient.

    ``letters`` holds one of I, X, Y, Z per qubit, qubit 0 first.
    """

    letters: str
    coeff: float = 1.0

    def __post_init__(self) -> None:
        if not (1 <= len(self.letters) <= 4):
            raise ValueError(f"pauli string must cover 1..4 qubits, got {self.letters!r}")
        bad = set(self.letters) - set("IXYZ")
        if bad:
            raise ValueError(f"unknown pauli letters {sorted(bad)} in {self.letters!r}")
        if not np.isfinite(self.coeff):
            raise ValueError("pauli coefficient must be finite")


def pauli_to_operator(p: PauliString) -> Operator:
    """Coefficient times the tensor product of single-qubit Paulis, qubit 0 first."""
    mat = _PAULI[p.letters[0]]
    for letter in p.letters[1:]:
        mat = np.kron(mat, _PAULI[letter])
    return Operator(p.coeff * mat)


def kron(a: Operator, b: Operator) -> Operator:
    """Tensor product; a's qubits become the most significant ones."""
    if a.dim * b.dim > MAX_DIM:
        raise ValueError(
            f"kron result dimension {a.dim * b.dim} exceeds the 4-qubit limit ({MAX_DIM})"
        )
    return Operator(np.kron(a.matrix, b.matrix))


def embed_single(a: Operator, qubit: int, n_qubits: int) -> Operator:
    """Place a single-qubit operator on one qubit of an n-qubit register."""
    if a.dim != 2:
        raise ValueError("embed_single expects a single-qubit operator")
    if not 0 <= qubit < n_qubits:
        raise ValueError(f"qubit index {qubit} out of range for {n_qubits} qubits")
    mat = np.array([[1.0 + 0.0j]])
    for q in range(n_qubits):
        mat = np.kron(mat, a.matrix if q == qubit else _PAULI["I"])
    return Operator(mat)


def partial_trace(rho: DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    """Reduced state on the kept qubits (original relative order preserved)."""
    keep_list = sorted(set(int(q) for q in keep))
    n = rho.n_qubits
    if not keep_list:
        raise ValueError("keep set must not be empty")
    if keep_list[0] < 0 or keep_list[-1] >= n:
        raise ValueError(f"keep indices {keep_list} out of range for {n} qubits")
    keep_set = set(keep_list)
    tensor = rho.matrix.reshape((2,) * (2 * n))
    # traced qubits share a summation index between row and column legs
    row_idx = list(range(n))
    col_idx = [q if q not in keep_set else n + q for q in range(n)]
    out_idx = keep_list + [n + q for q in keep_list]
    reduced = np.einsum(tensor, row_idx + col_idx, out_idx)
    k = len(keep_list)
    return DensityMatrix(reduced.reshape(2**k, 2**k))


def herm_exp(h: Operator, t: float) -> Operator:
    """Unitary exp(-i*h*t) for Hermitian h, via eigendecomposition."""
    if not h.is_hermitian():
        raise ValueError("herm_exp requires a Hermitian generator")
    w, v = np.linalg.eigh(h.matrix)
    return Operator((v * np.exp(-1j * w * t)) @ v.conj().T)


def evolve(rho: DensityMatrix, u: Operator) -> DensityMatrix:
    """Unitary conjugation U rho U^dagger."""
    if u.dim != rho.dim:
        raise ValueError(f"dimension mismatch: state {rho.dim}, unitary {u.dim}")
    if not u.is_unitary():
        raise ValueError("evolve requires a unitary operator")
    return DensityMatrix(u.matrix @ rho.matrix @ u.matrix.conj().T)


def dephase(rho: DensityMatrix) -> DensityMatrix:
    """Zero all computational-basis coherences, keeping the diagonal."""
    return DensityMatrix(np.diag(np.diag(rho.matrix)))
