"""Independent reference implementations used to cross-check the package.

Everything here deliberately avoids the code paths under test: matrix
exponentials by scaled Taylor series instead of eigendecomposition,
operator embedding by entrywise bit bookkeeping instead of axis
permutation, partial traces by projector sandwiches instead of reshapes,
and dephasing by explicit Kraus operators instead of block scaling.
"""

from __future__ import annotations

import math

import numpy as np

IDENTITY_2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def taylor_expm(H: np.ndarray, t: float, terms: int = 60) -> np.ndarray:
    """exp(-i*H*t) by a 60-term Taylor series with scaling and squaring."""
    A = -1j * np.asarray(H, dtype=complex) * t
    norm = np.linalg.norm(A, ord=np.inf)
    squarings = 0
    while norm > 0.5:
        A = A / 2.0
        norm /= 2.0
        squarings += 1
    out = np.eye(A.shape[0], dtype=complex)
    term = np.eye(A.shape[0], dtype=complex)
    for k in range(1, terms + 1):
        term = term @ A / k
        out = out + term
    for _ in range(squarings):
        out = out @ out
    return out


def brute_embed(op: np.ndarray, targets: list[int], n: int) -> np.ndarray:
    """Embed ``op`` on 1-based ``targets`` by summing over all basis pairs.

    Entry (r, c) is op[r_t, c_t] when the non-target bits agree and 0
    otherwise, with r_t assembled in target order (qubit 1 = MSB).
    """
    k = len(targets)
    dim = 2**n
    out = np.zeros((dim, dim), dtype=complex)
    positions = [n - t for t in targets]  # bit position of each target
    rest = [n - q for q in range(1, n + 1) if q not in targets]
    for r in range(dim):
        for c in range(dim):
            if any((r >> p) & 1 != (c >> p) & 1 for p in rest):
                continue
            r_t = 0
            c_t = 0
            for p in positions:
                r_t = (r_t << 1) | ((r >> p) & 1)
                c_t = (c_t << 1) | ((c >> p) & 1)
            out[r, c] = op[r_t, c_t]
    return out


def pauli_sum_pair(
    eps_i: float, eps_j: float, ebar_i: float, ebar_j: float, pi_ij: float
) -> np.ndarray:
    """Two-box Hamiltonian assembled term by term from Pauli products."""
    return (
        eps_i * np.kron(SIGMA_Z, IDENTITY_2)
        + eps_j * np.kron(IDENTITY_2, SIGMA_Z)
        - ebar_i * np.kron(SIGMA_X, IDENTITY_2)
        - ebar_j * np.kron(IDENTITY_2, SIGMA_X)
        + pi_ij * np.kron(SIGMA_X, SIGMA_X)
    )


def trace_out_qubit(rho: np.ndarray, n: int, site: int) -> np.ndarray:
    """Partial trace over 1-based ``site`` via projector sandwiches."""
    k = site - 1
    t0 = np.kron(
        np.kron(np.eye(2**k), np.array([[1], [0]])), np.eye(2 ** (n - k - 1))
    ).astype(complex)
    t1 = np.kron(
        np.kron(np.eye(2**k), np.array([[0], [1]])), np.eye(2 ** (n - k - 1))
    ).astype(complex)
    return t0.T @ rho @ t0 + t1.T @ rho @ t1


def reduced_density(psi: np.ndarray, n: int, keep: list[int]) -> np.ndarray:
    """Reduced density matrix on the 1-based ``keep`` qubits."""
    rho = np.outer(psi, psi.conj())
    remaining = n
    for site in range(n, 0, -1):
        if site not in keep:
            rho = trace_out_qubit(rho, remaining, site)
            remaining -= 1
    return rho


def entropy_bits(rho: np.ndarray) -> float:
    """Von Neumann entropy in bits; eigenvalues below 1e-14 count as zero."""
    out = 0.0
    for lam in np.linalg.eigvalsh(rho):
        if lam > 1e-14:
            out -= float(lam) * math.log2(float(lam))
    return out


def kraus_dephase(rho: np.ndarray, n: int, site: int, gamma_t: float) -> np.ndarray:
    """Single-site dephasing as an explicit two-operator Kraus channel."""
    f = math.exp(-gamma_t)
    k0 = math.sqrt((1.0 + f) / 2.0) * IDENTITY_2
    k1 = math.sqrt((1.0 - f) / 2.0) * SIGMA_Z
    out = np.zeros_like(rho)
    for k in (k0, k1):
        full = brute_embed(k, [site], n)
        out = out + full @ rho @ full.conj().T
    return out


def timing_closed_form(delta: float) -> float:
    """Two-qubit protocol fidelity when every step runs long by a factor 1+delta."""
    return abs(3.0 + np.exp(1j * math.pi * delta)) / 4.0
