"""Dense complex linear algebra for few-qubit simulation.

States, operators and density matrices are thin immutable wrappers around
numpy arrays.  Qubits are indexed from 1 in every public API, and qubit 1
is the most significant bit of the computational-basis index, so
``tensor(a, b)`` puts ``a`` on the high bits.  All values are immutable
after construction and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

# Constructor guards; operations that claim to preserve these stay well inside.
NORM_ATOL = 1e-12
HERMITICITY_ATOL = 1e-10
TRACE_ATOL = 1e-12
PSD_EIGENVALUE_FLOOR = -1e-10

DEFAULT_DIM_CAP = 2**12

IDENTITY_2 = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def _require_power_of_two(dim: int, what: str) -> int:
    n = int(dim).bit_length() - 1
    if dim <= 0 or 2**n != dim:
        raise ValueError(f"{what} must be a power of 2, got {dim}")
    return n


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=complex)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized amplitude vector over the 2**n computational basis states."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = _freeze(self.amplitudes)
        if self.n_qubits < 1:
            raise ValueError(f"n_qubits must be >= 1, got {self.n_qubits}")
        if amps.shape != (2**self.n_qubits,):
            raise ValueError(
                f"amplitude vector has shape {amps.shape}, "
                f"expected ({2**self.n_qubits},) for {self.n_qubits} qubit(s)"
            )
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_ATOL:
            raise ValueError(f"state is not normalized: |amplitudes| = {norm!r}")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, amplitudes: Sequence[complex]) -> "StateVector":
        amps = np.asarray(amplitudes, dtype=complex)
        n = _require_power_of_two(amps.shape[0], "amplitude vector length")
        return cls(n, amps)

    @classmethod
    def zero(cls, n_qubits: int) -> "StateVector":
        """|0...0> on n_qubits qubits."""
        amps = np.zeros(2**n_qubits, dtype=complex)
        amps[0] = 1.0
        return cls(n_qubits, amps)

    @classmethod
    def basis_state(cls, n_qubits: int, index: int) -> "StateVector":
        amps = np.zeros(2**n_qubits, dtype=complex)
        amps[index] = 1.0
        return cls(n_qubits, amps)

    @property
    def dim(self) -> int:
        return 2**self.n_qubits

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True, eq=False)
class Operator:
    """Square complex matrix on a power-of-2 dimension.

    Gates are expected to be unitary and Hamiltonians Hermitian; use
    :meth:`is_unitary` / :meth:`is_hermitian` to check, since one wrapper
    serves both roles.
    """

    matrix: np.ndarray

    def __post_init__(self) -> None:
        mat = _freeze(self.matrix)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError(f"operator matrix must be square, got shape {mat.shape}")
        _require_power_of_two(mat.shape[0], "operator dimension")
        object.__setattr__(self, "matrix", mat)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_qubits(self) -> int:
        return self.dim.bit_length() - 1

    def dagger(self) -> "Operator":
        return Operator(self.matrix.conj().T)

    def is_hermitian(self, atol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self.matrix - self.matrix.conj().T)) <= atol)

    def is_unitary(self, atol: float = 1e-12) -> bool:
        ident = np.eye(self.dim)
        return bool(np.max(np.abs(self.matrix.conj().T @ self.matrix - ident)) <= atol)

    def __matmul__(self, other: "Operator") -> "Operator":
        if not isinstance(other, Operator):
            return NotImplemented
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} @ {other.dim}")
        return Operator(self.matrix @ other.matrix)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, trace-1, positive-semidefinite matrix for noisy runs."""

    n_qubits: int
    matrix: np.ndarray

    def __post_init__(self) -> None:
        mat = _freeze(self.matrix)
        dim = 2**self.n_qubits
        if mat.shape != (dim, dim):
            raise ValueError(
                f"density matrix has shape {mat.shape}, expected ({dim}, {dim})"
            )
        herm_residual = np.max(np.abs(mat - mat.conj().T))
        if herm_residual > 1e-12:
            raise ValueError(f"density matrix not Hermitian: residual {herm_residual!r}")
        trace = mat.trace()
        if abs(trace - 1.0) > TRACE_ATOL:
            raise ValueError(f"density matrix trace is {trace!r}, expected 1")
        smallest = float(np.linalg.eigvalsh(mat)[0])
        if smallest < PSD_EIGENVALUE_FLOOR:
            raise ValueError(f"density matrix has negative eigenvalue {smallest!r}")
        object.__setattr__(self, "matrix", mat)

    @classmethod
    def from_state(cls, state: StateVector) -> "DensityMatrix":
        amps = state.amplitudes
        return cls(state.n_qubits, np.outer(amps, amps.conj()))

    @property
    def dim(self) -> int:
        return 2**self.n_qubits


def tensor(a, b):
    """Kronecker product of two states or two operators.

    ``a`` owns the most significant index block: qubit 1 of the result is
    qubit 1 of ``a``.
    """
    if isinstance(a, StateVector) and isinstance(b, StateVector):
        return StateVector(a.n_qubits + b.n_qubits, np.kron(a.amplitudes, b.amplitudes))
    if isinstance(a, Operator) and isinstance(b, Operator):
        return Operator(np.kron(a.matrix, b.matrix))
    raise TypeError(
        f"tensor expects two StateVectors or two Operators, "
        f"got {type(a).__name__} and {type(b).__name__}"
    )


def _check_targets(targets: Sequence[int], n: int) -> list[int]:
    targets = list(targets)
    for t in targets:
        if not 1 <= t <= n:
            raise ValueError(f"target qubit {t} out of range 1..{n}")
    if len(set(targets)) != len(targets):
        raise ValueError(f"duplicate target qubits in {targets}")
    return [t - 1 for t in targets]


def embed_local(op: Operator, targets: Sequence[int], n: int) -> Operator:
    """Embed ``op`` so it acts on ``targets`` (in order) and as identity elsewhere.

    ``targets[0]`` receives the most significant factor of ``op``.
    """
    idx = _check_targets(targets, n)
    k = len(idx)
    if op.dim != 2**k:
        raise ValueError(
            f"operator dimension {op.dim} does not match {k} target qubit(s)"
        )
    rest = [q for q in range(n) if q not in idx]
    full = np.kron(op.matrix, np.eye(2 ** (n - k), dtype=complex))
    tens = full.reshape([2] * (2 * n))
    # Axis i of ``tens`` addresses qubit (idx + rest)[i]; undo that ordering.
    src = idx + rest
    inv = [0] * n
    for pos, q in enumerate(src):
        inv[q] = pos
    perm = inv + [n + p for p in inv]
    return Operator(tens.transpose(perm).reshape(2**n, 2**n))


def apply_local(state: StateVector, op: Operator, targets: Sequence[int]) -> StateVector:
    """Apply ``op`` to ``targets`` of ``state`` without building the 2**n matrix.

    Cost is O(op.dim * 2**n); spectator qubits are untouched.
    """
    idx = _check_targets(targets, state.n_qubits)
    k = len(idx)
    if op.dim != 2**k:
        raise ValueError(
            f"operator dimension {op.dim} does not match {k} target qubit(s)"
        )
    n = state.n_qubits
    tens = state.amplitudes.reshape([2] * n)
    op_tens = op.matrix.reshape([2] * (2 * k))
    out = np.tensordot(op_tens, tens, axes=(list(range(k, 2 * k)), idx))
    out = np.moveaxis(out, list(range(k)), idx)
    return StateVector(n, out.reshape(-1))


def expm_hermitian(
    H: Operator,
    t: float,
    hbar: float = 1.0,
    max_dim: int = DEFAULT_DIM_CAP,
) -> Operator:
    """Unitary exp(-i*H*t/hbar) of a Hermitian operator, by eigendecomposition."""
    if H.dim > max_dim:
        raise ValueError(f"operator dimension {H.dim} exceeds cap {max_dim}")
    residual = np.max(np.abs(H.matrix - H.matrix.conj().T))
    if residual > HERMITICITY_ATOL:
        raise ValueError(f"matrix is not Hermitian: symmetry residual {residual!r}")
    eigvals, eigvecs = np.linalg.eigh(H.matrix)
    phases = np.exp(-1j * eigvals * (t / hbar))
    return Operator((eigvecs * phases) @ eigvecs.conj().T)


def fidelity(a: StateVector, b: StateVector) -> float:
    """Amplitude overlap |<a|b>|; callers square it when they report probabilities."""
    if a.n_qubits != b.n_qubits:
        raise ValueError(
            f"qubit count mismatch: {a.n_qubits} vs {b.n_qubits}"
        )
    return float(abs(np.vdot(a.amplitudes, b.amplitudes)))
