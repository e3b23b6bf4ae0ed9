"""Sequential generation and verification of linear cluster states.

Each chain bond (j, j+1) gets one controlled-phase entangling step; the
steps commute (all are diagonal in the |+->-product basis) so the order
is free.  Verification uses the rotated-frame Pauli operators

    Zbar = |+><+| - |-><-|        Xbar = |+><-| + |-><+|

exclusively, to keep the |+->-basis convention out of collision with the
computational-basis Paulis; the chain stabilizers are
K_a = Xbar_a * Zbar_{a-1} * Zbar_{a+1}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .dynamics import (
    apply_pair_gate,
    entangling_gate,
    pm_coordinates,
    state_from_pm_coordinates,
)
from .hilbert import Operator, StateVector, embed_local, tensor

MIN_QUBITS = 2
MAX_QUBITS = 12

# Rotated-frame operators from their outer-product definitions; the integer
# intermediates keep the entries exact.
ZBAR = (
    np.outer([1, 1], [1, 1]).astype(complex)
    - np.outer([1, -1], [1, -1]).astype(complex)
) / 2.0
XBAR = (
    np.outer([1, 1], [1, -1]).astype(complex)
    + np.outer([1, -1], [1, 1]).astype(complex)
) / 2.0

_PLUS = np.array([1, 1], dtype=complex) * math.sqrt(0.5)
_MINUS = np.array([1, -1], dtype=complex) * math.sqrt(0.5)


def _chain_pairs(n: int) -> tuple[tuple[int, int], ...]:
    return tuple((k, k + 1) for k in range(1, n))


@dataclass(frozen=True)
class ClusterSpec:
    """Target linear cluster: qubit count and the order of the chain bonds."""

    n_qubits: int
    pair_order: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        if not MIN_QUBITS <= self.n_qubits <= MAX_QUBITS:
            raise ValueError(
                f"n_qubits must be in {MIN_QUBITS}..{MAX_QUBITS}, got {self.n_qubits}"
            )
        order = tuple(tuple(int(x) for x in pair) for pair in self.pair_order)
        if not order:
            order = _chain_pairs(self.n_qubits)
        expected = _chain_pairs(self.n_qubits)
        if sorted(order) != sorted(expected) or len(order) != len(expected):
            raise ValueError(
                f"pair_order must contain each chain pair of a {self.n_qubits}-qubit "
                f"chain exactly once, got {order}"
            )
        object.__setattr__(self, "pair_order", order)

    @classmethod
    def chain(
        cls, n_qubits: int, order: Sequence[Sequence[int]] | None = None
    ) -> "ClusterSpec":
        return cls(n_qubits, tuple(tuple(p) for p in order) if order else ())


@dataclass(frozen=True)
class StabilizerSpec:
    """One chain stabilizer: Xbar on ``site``, Zbar on its chain neighbours."""

    site: int
    n_qubits: int
    expected_eigenvalue: float = 1.0

    def __post_init__(self) -> None:
        if not 1 <= self.site <= self.n_qubits:
            raise ValueError(f"site {self.site} out of range 1..{self.n_qubits}")

    def factors(self) -> tuple[tuple[int, np.ndarray], ...]:
        """(qubit, 2x2 matrix) pairs; identity sites are omitted."""
        out: list[tuple[int, np.ndarray]] = [(self.site, XBAR)]
        for nbr in (self.site - 1, self.site + 1):
            if 1 <= nbr <= self.n_qubits:
                out.append((nbr, ZBAR))
        return tuple(out)

    def operator_string(self) -> tuple[str, ...]:
        labels = ["I"] * self.n_qubits
        for q, mat in self.factors():
            labels[q - 1] = "Xbar" if mat is XBAR else "Zbar"
        return tuple(labels)

    def to_operator(self) -> Operator:
        """Full embedded matrix (tests and small n only)."""
        out = np.eye(2**self.n_qubits, dtype=complex)
        for q, mat in self.factors():
            out = embed_local(Operator(mat), (q,), self.n_qubits).matrix @ out
        return Operator(out)


def chain_stabilizers(n: int) -> list[StabilizerSpec]:
    return [StabilizerSpec(site=a, n_qubits=n) for a in range(1, n + 1)]


def initial_state(n: int) -> StateVector:
    """Product state of (|-> + |+>)/sqrt(2) per qubit, i.e. |0...0>."""
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"n must be in 1..{MAX_QUBITS}, got {n}")
    summed = _MINUS + _PLUS
    # Normalizing by the computed norm makes the |0> amplitude exactly 1,
    # which keeps the whole protocol in exact dyadic arithmetic.
    single = StateVector(1, summed / np.linalg.norm(summed))
    state = single
    for _ in range(n - 1):
        state = tensor(state, single)
    return state


def generate_cluster(spec: ClusterSpec) -> StateVector:
    """Run the sequential protocol: one entangling step per chain bond."""
    state = initial_state(spec.n_qubits)
    gate = entangling_gate(1.0, 1.0)
    for i, j in spec.pair_order:
        state = apply_pair_gate(state, i, j, gate)
    return state


def ideal_cluster(n: int) -> StateVector:
    """Closed-form linear cluster state.

    In |+->-product coordinates the amplitude of string s is
    2**(-n/2) * (-1)**c(s), where c(s) counts adjacent (-,-) pairs: each
    bond whose controlled-phase fires once contributes a sign.
    """
    if not MIN_QUBITS <= n <= MAX_QUBITS:
        raise ValueError(f"n must be in {MIN_QUBITS}..{MAX_QUBITS}, got {n}")
    scale = 2.0 ** (-n / 2)
    coords = np.empty(2**n, dtype=complex)
    for idx in range(2**n):
        sign_flips = 0
        for j in range(1, n):
            if (idx >> (n - j)) & 1 and (idx >> (n - j - 1)) & 1:
                sign_flips += 1
        coords[idx] = scale * (-1.0) ** sign_flips
    return state_from_pm_coordinates(coords)


def _apply_factors(
    amps: np.ndarray, n: int, factors: Iterable[tuple[int, np.ndarray]]
) -> np.ndarray:
    tens = amps.reshape([2] * n)
    for q, mat in factors:
        tens = np.moveaxis(np.tensordot(mat, tens, axes=([1], [q - 1])), 0, q - 1)
    return tens.reshape(-1)


def stabilizer_expectations(state: StateVector) -> list[float]:
    """<K_a> for a = 1..n; all equal +1 exactly on a linear cluster state."""
    n = state.n_qubits
    if n < MIN_QUBITS:
        raise ValueError(f"need at least {MIN_QUBITS} qubits, got {n}")
    out = []
    for spec in chain_stabilizers(n):
        transformed = _apply_factors(state.amplitudes, n, spec.factors())
        out.append(float(np.real(np.vdot(state.amplitudes, transformed))))
    return out


def persistency_probe(
    state: StateVector, site: int, basis: str, outcome: int
) -> tuple[float, StateVector]:
    """Project ``site`` onto the chosen Zbar/Xbar eigenstate.

    Returns the outcome probability and the renormalized post-measurement
    state on all n qubits (the measured qubit is left in the eigenstate).
    Raises on a null branch (probability below 1e-14) instead of silently
    renormalizing it.
    """
    if not 1 <= site <= state.n_qubits:
        raise ValueError(f"site {site} out of range 1..{state.n_qubits}")
    basis_key = basis.lower()
    if basis_key not in ("zbar", "xbar"):
        raise ValueError(f"basis must be 'zbar' or 'xbar', got {basis!r}")
    if outcome not in (1, -1):
        raise ValueError(f"outcome must be +1 or -1, got {outcome!r}")
    op = ZBAR if basis_key == "zbar" else XBAR
    projector = (np.eye(2, dtype=complex) + outcome * op) / 2.0
    projected = _apply_factors(state.amplitudes, state.n_qubits, [(site, projector)])
    probability = float(np.real(np.vdot(projected, projected)))
    if probability < 1e-14:
        raise ValueError(
            f"projection onto {basis_key} outcome {outcome:+d} at site {site} "
            f"has probability {probability!r} (null branch)"
        )
    post = StateVector(state.n_qubits, projected / math.sqrt(probability))
    return probability, post


def reduced_density(state: StateVector, keep: Sequence[int]) -> np.ndarray:
    """Density matrix of the ``keep`` qubits after tracing out the rest."""
    n = state.n_qubits
    keep0 = sorted(q - 1 for q in keep)
    rest = [q for q in range(n) if q not in keep0]
    tens = state.amplitudes.reshape([2] * n)
    mat = tens.transpose(keep0 + rest).reshape(2 ** len(keep0), 2 ** len(rest))
    return mat @ mat.conj().T


def entanglement_entropy(state: StateVector, partition: Iterable[int]) -> float:
    """Von Neumann entropy (bits) of the reduced state on ``partition``.

    Eigenvalues below 1e-14 are treated as exact zeros.
    """
    part = sorted(set(int(q) for q in partition))
    n = state.n_qubits
    if not part or len(part) >= n or any(not 1 <= q <= n for q in part):
        raise ValueError(
            f"partition must be a nonempty proper subset of 1..{n}, got {part}"
        )
    eigenvalues = np.linalg.eigvalsh(reduced_density(state, part))
    entropy = 0.0
    for lam in eigenvalues:
        if lam > 1e-14:
            entropy -= float(lam) * math.log2(float(lam))
    return entropy


def amplitude_pairs(state: StateVector, basis: str = "computational") -> list[list[float]]:
    """Amplitudes as (real, imaginary) pairs in basis-index order."""
    if basis == "computational":
        amps = state.amplitudes
    elif basis == "pm":
        amps = pm_coordinates(state)
    else:
        raise ValueError(f"basis must be 'computational' or 'pm', got {basis!r}")
    return [[float(a.real), float(a.imag)] for a in amps]


def state_from_amplitude_pairs(
    pairs: Sequence[Sequence[float]], basis: str = "computational"
) -> StateVector:
    amps = np.array([complex(re, im) for re, im in pairs])
    if basis == "computational":
        return StateVector.from_amplitudes(amps)
    if basis == "pm":
        return state_from_pm_coordinates(amps)
    raise ValueError(f"basis must be 'computational' or 'pm', got {basis!r}")
