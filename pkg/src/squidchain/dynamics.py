"""Time evolution and the two-qubit controlled-phase entangling gate.

The driven pair Hamiltonian (internal units, hbar = 1, time in units of
tau) is H4 = (-pi/4) * (-X_i - X_j + X_i X_j).  It is diagonal in the
|+->-product basis, and one period of free evolution combined with the
compensating phase exp(i*pi*t/4tau) is exactly diag(1, 1, 1, -1) there:
a controlled-phase gate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._exact import phase_half_turns
from .hilbert import (
    IDENTITY_2,
    Operator,
    PAULI_X,
    StateVector,
    apply_local,
    expm_hermitian,
)

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) * math.sqrt(0.5)

# Two-qubit |+->-basis change with exactly representable +-1/2 entries, so
# gate construction stays exact where the diagonal phases are exact.
_PM_TWO_QUBIT = 0.5 * np.array(
    [
        [1, 1, 1, 1],
        [1, -1, 1, -1],
        [1, 1, -1, -1],
        [1, -1, -1, 1],
    ],
    dtype=complex,
)


@dataclass(frozen=True)
class PlusMinusBasis:
    """Single-qubit change of basis from (|0>, |1>) to (|+>, |->) coordinates."""

    change_of_basis: np.ndarray = field(default_factory=lambda: HADAMARD.copy())

    def __post_init__(self) -> None:
        mat = np.array(self.change_of_basis, dtype=complex)
        if mat.shape != (2, 2):
            raise ValueError(f"change of basis must be 2x2, got {mat.shape}")
        if np.max(np.abs(mat @ mat - np.eye(2))) > 1e-14:
            raise ValueError("change of basis must be self-inverse")
        mat.setflags(write=False)
        object.__setattr__(self, "change_of_basis", mat)


PM_BASIS = PlusMinusBasis()


def entangling_hamiltonian(tau: float = 1.0) -> Operator:
    """The driven-pair Hamiltonian (-pi/4tau)(-X_i - X_j + X_i X_j)."""
    if tau <= 0:
        raise ValueError(f"tau must be positive, got {tau!r}")
    coupling = -math.pi / (4.0 * tau)
    return Operator(
        coupling
        * (
            -np.kron(PAULI_X, IDENTITY_2)
            - np.kron(IDENTITY_2, PAULI_X)
            + np.kron(PAULI_X, PAULI_X)
        )
    )


def evolve(state: StateVector, H: Operator, t: float) -> StateVector:
    """exp(-i*H*t) applied to ``state`` (hbar = 1); norm is preserved."""
    if H.dim != state.dim:
        raise ValueError(
            f"Hamiltonian dimension {H.dim} does not match state dimension {state.dim}"
        )
    U = expm_hermitian(H, t)
    return StateVector(state.n_qubits, U.matrix @ state.amplitudes)


def entangling_gate(t: float, tau: float) -> Operator:
    """Entangling step of duration ``t``: evolution under the pair Hamiltonian
    times the compensating phase exp(i*pi*t/4tau).

    In the |+->-product basis this is diag(1, 1, 1, exp(i*pi*t/tau)): the
    three aligned components are phase-free and only |--> picks up a phase.
    At t = tau it is exactly the controlled-phase gate diag(1, 1, 1, -1);
    t may exceed tau (timing-error sweeps), no clamping.
    """
    if tau <= 0:
        raise ValueError(f"tau must be positive, got {tau!r}")
    phase = phase_half_turns(t / tau)
    diag = np.diag(np.array([1.0, 1.0, 1.0, phase], dtype=complex))
    return Operator(_PM_TWO_QUBIT @ diag @ _PM_TWO_QUBIT)


def apply_pair_gate(state: StateVector, i: int, j: int, gate: Operator) -> StateVector:
    """Apply a 4x4 gate to qubits (i, j); spectator qubits are untouched."""
    if i == j:
        raise ValueError(f"need two distinct qubits, got i = j = {i}")
    if gate.dim != 4:
        raise ValueError(f"pair gate must be 4x4, got dimension {gate.dim}")
    return apply_local(state, gate, (i, j))


def pm_coordinates(state: StateVector) -> np.ndarray:
    """Coordinates of ``state`` in the |+->-product basis (+ maps to bit 0)."""
    out = state
    h_op = Operator(PM_BASIS.change_of_basis)
    for q in range(1, state.n_qubits + 1):
        out = apply_local(out, h_op, (q,))
    return np.array(out.amplitudes)


def state_from_pm_coordinates(coords: np.ndarray) -> StateVector:
    """Inverse of :func:`pm_coordinates` (the basis change is self-inverse)."""
    out = StateVector.from_amplitudes(coords)
    h_op = Operator(PM_BASIS.change_of_basis)
    for q in range(1, out.n_qubits + 1):
        out = apply_local(out, h_op, (q,))
    return out


def operator_in_pm_basis(op: Operator) -> np.ndarray:
    """Matrix of ``op`` in the |+->-product basis (for diagonality checks)."""
    n = op.n_qubits
    basis = PM_BASIS.change_of_basis
    T = basis
    for _ in range(n - 1):
        T = np.kron(T, basis)
    return T @ op.matrix @ T
