"""Pure dephasing, timing-error sweeps, and the coherent-manipulation budget.

Gate-voltage fluctuations couple to charge, so the noise channel is pure
dephasing in the computational (charge) basis: off-diagonal blocks of one
qubit decay by exp(-gamma*t).  Noise is applied stroboscopically after
each entangling step; only timescale ratios enter, never a spectral
density.  Sweep points are independent pure computations and results are
ordered by parameter value regardless of evaluation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .dynamics import apply_pair_gate, entangling_gate
from .hilbert import DensityMatrix, StateVector, embed_local, fidelity
from .protocol import ClusterSpec, ideal_cluster, initial_state

MAX_NOISY_QUBITS = 8


@dataclass(frozen=True)
class NoiseParams:
    """Timescales in seconds.

    ``dephasing_time`` may be ``inf`` to disable the channel.  The physical
    duration of one entangling step defaults to the single-bit switching
    time; only their ratio to the dephasing time matters.
    """

    dephasing_time: float = 1e-4
    op_time_single: float = 1e-10
    entangle_time: float | None = None

    def __post_init__(self) -> None:
        if self.entangle_time is None:
            object.__setattr__(self, "entangle_time", self.op_time_single)
        for name in ("dephasing_time", "op_time_single", "entangle_time"):
            value = getattr(self, name)
            if not value > 0:
                raise ValueError(f"{name} must be positive, got {value!r}")

    @property
    def exposure_per_step(self) -> float:
        """Dimensionless gamma*t accumulated by each qubit during one step."""
        return self.entangle_time / self.dephasing_time


@dataclass(frozen=True)
class SweepResult:
    """Fidelity curve over one swept parameter, plus the run descriptor."""

    parameter_values: tuple[float, ...]
    fidelities: tuple[float, ...]
    metadata: Mapping[str, object]

    def __post_init__(self) -> None:
        values = tuple(float(v) for v in self.parameter_values)
        fids = tuple(float(f) for f in self.fidelities)
        if len(values) != len(fids):
            raise ValueError(
                f"{len(values)} parameter values but {len(fids)} fidelities"
            )
        for f in fids:
            if not -1e-12 <= f <= 1.0 + 1e-12:
                raise ValueError(f"fidelity {f!r} outside [0, 1]")
        fids = tuple(min(max(f, 0.0), 1.0) for f in fids)
        object.__setattr__(self, "parameter_values", values)
        object.__setattr__(self, "fidelities", fids)
        object.__setattr__(self, "metadata", dict(self.metadata))

    def csv_text(self) -> str:
        """CSV with a header row and 17-significant-digit floats, LF endings."""
        label = self.metadata.get("parameter", "parameter")
        lines = [f"{label},fidelity"]
        for value, fid in zip(self.parameter_values, self.fidelities):
            lines.append(f"{value:.17g},{fid:.17g}")
        return "\n".join(lines) + "\n"

    def save_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(self.csv_text())


def dephase(rho: DensityMatrix, site: int, gamma_t: float) -> DensityMatrix:
    """Decay the off-diagonal blocks of ``site`` by exp(-gamma_t).

    Trace and Hermiticity are preserved exactly (the diagonal blocks are
    untouched and both off-diagonal blocks get the same real factor).
    """
    if gamma_t < 0:
        raise ValueError(f"gamma_t must be >= 0, got {gamma_t!r}")
    if not 1 <= site <= rho.n_qubits:
        raise ValueError(f"site {site} out of range 1..{rho.n_qubits}")
    factor = math.exp(-gamma_t)
    n = rho.n_qubits
    tens = np.array(rho.matrix).reshape([2] * (2 * n))
    view = np.moveaxis(tens, (site - 1, n + site - 1), (0, 1))
    view[0, 1] *= factor
    view[1, 0] *= factor
    return DensityMatrix(n, tens.reshape(2**n, 2**n))


def state_fidelity(rho: DensityMatrix, psi: StateVector) -> float:
    """sqrt(<psi|rho|psi>), the mixed-vs-pure fidelity."""
    if rho.n_qubits != psi.n_qubits:
        raise ValueError(
            f"qubit count mismatch: {rho.n_qubits} vs {psi.n_qubits}"
        )
    overlap = float(np.real(np.vdot(psi.amplitudes, rho.matrix @ psi.amplitudes)))
    return math.sqrt(max(overlap, 0.0))


def _run_with_exposure(spec: ClusterSpec, exposure: float) -> tuple[DensityMatrix, float]:
    n = spec.n_qubits
    if n > MAX_NOISY_QUBITS:
        raise ValueError(
            f"density-matrix protocol capped at {MAX_NOISY_QUBITS} qubits, got {n}"
        )
    rho = DensityMatrix.from_state(initial_state(n))
    gate = entangling_gate(1.0, 1.0)
    for i, j in spec.pair_order:
        U = embed_local(gate, (i, j), n).matrix
        rho = DensityMatrix(n, U @ rho.matrix @ U.conj().T)
        for site in range(1, n + 1):
            rho = dephase(rho, site, exposure)
    return rho, state_fidelity(rho, ideal_cluster(n))


def run_noisy_protocol(
    spec: ClusterSpec, noise: NoiseParams
) -> tuple[DensityMatrix, float]:
    """Density-matrix protocol run with per-step dephasing on every qubit.

    Returns the final state and its fidelity sqrt(<ideal|rho|ideal>).
    """
    return _run_with_exposure(spec, noise.exposure_per_step)


def manipulation_budget(noise: NoiseParams) -> int:
    """floor(dephasing_time / op_time_single): coherent operations before decoherence."""
    if not math.isfinite(noise.dephasing_time):
        raise ValueError("manipulation budget needs a finite dephasing time")
    return math.floor(Fraction(noise.dephasing_time) / Fraction(noise.op_time_single))


def timing_sweep(spec: ClusterSpec, deltas: Sequence[float]) -> SweepResult:
    """Protocol fidelity when every entangling step runs for tau*(1+delta)."""
    deltas = [float(d) for d in deltas]
    for d in deltas:
        if not math.isfinite(d):
            raise ValueError(f"delta values must be finite, got {d!r}")
    ideal = ideal_cluster(spec.n_qubits)
    fids = []
    for delta in deltas:
        state = initial_state(spec.n_qubits)
        gate = entangling_gate(1.0 + delta, 1.0)
        for i, j in spec.pair_order:
            state = apply_pair_gate(state, i, j, gate)
        fids.append(fidelity(ideal, state))
    metadata = {
        "kind": "timing",
        "parameter": "delta",
        "n_qubits": spec.n_qubits,
        "pair_order": spec.pair_order,
    }
    return SweepResult(tuple(deltas), tuple(fids), metadata)


def dephasing_sweep(spec: ClusterSpec, exposures: Sequence[float]) -> SweepResult:
    """Noisy-protocol fidelity over a grid of per-step gamma*t exposures."""
    exposures = [float(g) for g in exposures]
    fids = [_run_with_exposure(spec, g)[1] for g in exposures]
    metadata = {
        "kind": "dephasing",
        "parameter": "gamma_t",
        "n_qubits": spec.n_qubits,
        "pair_order": spec.pair_order,
    }
    return SweepResult(tuple(exposures), tuple(fids), metadata)
