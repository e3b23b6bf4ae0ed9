"""Charge-qubit device model: bias settings to effective Hamiltonians.

Each box is a Cooper-pair island coupled through two symmetric dc SQUIDs;
a common inductance mediates the interbit coupling.  Hamiltonians are
returned in internal units with hbar = 1 and time measured in units of the
entangling period ``tau``, so an SI energy E enters as E * tau / hbar.
Bias overrides (``epsilon_overrides``, ``ebar_overrides``, ``pi_override``)
are given directly in those internal units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Mapping

import numpy as np

from ._exact import cos_half_turns
from .hilbert import IDENTITY_2, Operator, PAULI_X, PAULI_Z

# SI-exact defining constants (2019 redefinition).
PLANCK_H = 6.62607015e-34
E_CHARGE = 1.602176634e-19
HBAR = PLANCK_H / (2.0 * math.pi)
FLUX_QUANTUM = PLANCK_H / (2.0 * E_CHARGE)

# Equal intrabit/interbit coupling (units hbar/tau) that turns one period of
# free evolution into a controlled-phase gate.
PROTOCOL_COUPLING = -math.pi / 4.0

# "At degeneracy" / "coupling off" means within this relative tolerance.
BIAS_RTOL = 1e-9


@dataclass(frozen=True)
class QubitParams:
    """Per-box physical controls and constants (SI units).

    ej0:      Josephson coupling energy of one junction, joules
    c_j:      junction capacitance, farads
    c_gate:   gate capacitance, farads
    n_offset: Cooper-pair number offset of the working charge states
    flux_x:   local flux through the box's SQUID loops, webers
    v_x:      gate voltage, volts
    """

    ej0: float
    c_j: float
    c_gate: float
    n_offset: int
    flux_x: float
    v_x: float

    def __post_init__(self) -> None:
        if self.ej0 <= 0:
            raise ValueError(f"ej0 must be positive, got {self.ej0!r}")
        if self.c_j <= 0 or self.c_gate <= 0:
            raise ValueError("capacitances must be positive")


@dataclass(frozen=True)
class DeviceConfig:
    """Shared-circuit constants plus the ordered list of boxes.

    ``tau`` is the entangling period in seconds; it defines the internal
    time unit.  ``screening`` scales the bare SQUID coupling on the
    phenomenological path (stand-in for the inductive renormalization,
    whose closed form is out of scope here).
    """

    qubits: tuple[QubitParams, ...]
    inductance: float
    flux_e: float
    tau: float
    epsilon_overrides: Mapping[int, float] | None = None
    ebar_overrides: Mapping[int, float] | None = None
    pi_override: float | None = None
    screening: float = 1.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "qubits", tuple(self.qubits))
        if not self.qubits:
            raise ValueError("device needs at least one box")
        if self.tau <= 0:
            raise ValueError(f"tau must be positive, got {self.tau!r}")
        if self.inductance <= 0:
            raise ValueError(f"inductance must be positive, got {self.inductance!r}")

    @property
    def n_qubits(self) -> int:
        return len(self.qubits)

    def qubit(self, i: int) -> QubitParams:
        if not 1 <= i <= len(self.qubits):
            raise ValueError(f"box index {i} out of range 1..{len(self.qubits)}")
        return self.qubits[i - 1]


@dataclass(frozen=True)
class EffectiveCoefficients:
    """Hamiltonian coefficients in internal units (hbar/tau).

    ``pi`` is present only when a pair of boxes is active.
    """

    epsilon: float
    ebar: float
    pi: float | None = None


def squid_coupling(ej0: float, flux_x: float) -> float:
    """Effective SQUID Josephson energy 2*ej0*cos(pi*flux_x/Phi0).

    Vanishes exactly at odd half flux quanta (the idle condition) and may
    go negative beyond them.
    """
    if ej0 <= 0:
        raise ValueError(f"ej0 must be positive, got {ej0!r}")
    return 2.0 * ej0 * cos_half_turns(flux_x / FLUX_QUANTUM)


def charging_energy(q: QubitParams) -> float:
    """Island charging energy e^2 / 2(C_gate + C_J), joules.

    The precise capacitance combination is a modeling choice; only the
    scale matters for the in-scope checks and it is >> ej0 for sensible
    configurations (charging regime).
    """
    return E_CHARGE**2 / (2.0 * (q.c_gate + q.c_j))


def degeneracy_voltage(q: QubitParams) -> float:
    """Gate voltage (2n+1)e/C_gate at which the charge states are degenerate."""
    return (2 * q.n_offset + 1) * E_CHARGE / q.c_gate


def at_degeneracy_voltage(q: QubitParams) -> bool:
    return math.isclose(q.v_x, degeneracy_voltage(q), rel_tol=BIAS_RTOL, abs_tol=0.0)


def coupling_switched_off(q: QubitParams) -> bool:
    return math.isclose(
        q.flux_x, 0.5 * FLUX_QUANTUM, rel_tol=BIAS_RTOL, abs_tol=0.0
    )


def idle_settings(q: QubitParams) -> bool:
    """True iff the box is parked: flux at half a quantum and gate at degeneracy."""
    return coupling_switched_off(q) and at_degeneracy_voltage(q)


def make_idle(q: QubitParams) -> QubitParams:
    """Copy of ``q`` with exactly the parked bias settings."""
    return replace(q, flux_x=0.5 * FLUX_QUANTUM, v_x=degeneracy_voltage(q))


def _epsilon_model(q: QubitParams, cfg: DeviceConfig) -> float:
    # Linear charging model: vanishes at the degeneracy point, monotone in
    # v_x.  The functional form away from degeneracy is a modeling choice.
    if at_degeneracy_voltage(q):
        return 0.0
    gate_charge = q.c_gate * q.v_x / E_CHARGE
    detuning = gate_charge - (2 * q.n_offset + 1)
    return 0.5 * charging_energy(q) * detuning * cfg.tau / HBAR


def _ebar_value(q: QubitParams, cfg: DeviceConfig) -> float:
    if coupling_switched_off(q):
        return 0.0
    return cfg.screening * squid_coupling(q.ej0, q.flux_x) * cfg.tau / HBAR


def effective_coefficients(cfg: DeviceConfig, i: int) -> EffectiveCoefficients:
    """Internal-unit coefficients for box ``i``; overrides win over the models."""
    q = cfg.qubit(i)
    if cfg.epsilon_overrides is not None and i in cfg.epsilon_overrides:
        epsilon = float(cfg.epsilon_overrides[i])
    else:
        epsilon = _epsilon_model(q, cfg)
    if cfg.ebar_overrides is not None and i in cfg.ebar_overrides:
        ebar = float(cfg.ebar_overrides[i])
    else:
        ebar = _ebar_value(q, cfg)
    return EffectiveCoefficients(epsilon=epsilon, ebar=ebar)


def _require_spectators_idle(cfg: DeviceConfig, active: tuple[int, ...]) -> None:
    for k in range(1, cfg.n_qubits + 1):
        if k in active:
            continue
        if not idle_settings(cfg.qubits[k - 1]):
            raise ValueError(
                f"box {k} must be idle (flux at Phi0/2, gate at degeneracy) "
                f"while boxes {active} are driven"
            )


def single_qubit_hamiltonian(cfg: DeviceConfig, i: int) -> Operator:
    """2x2 Hamiltonian eps_i*sigma_z - ebar_i*sigma_x on box ``i``, internal units."""
    cfg.qubit(i)
    _require_spectators_idle(cfg, (i,))
    coeff = effective_coefficients(cfg, i)
    return Operator(coeff.epsilon * PAULI_Z - coeff.ebar * PAULI_X)


def pair_hamiltonian(cfg: DeviceConfig, i: int, j: int) -> Operator:
    """4x4 Hamiltonian on boxes (i, j), internal units.

    Sum of the two single-box terms plus the interbit term
    pi * sigma_x(i) sigma_x(j).  The interbit coupling has no closed form
    in this model and must be supplied via ``pi_override``.
    """
    if i == j:
        raise ValueError(f"need two distinct boxes, got i = j = {i}")
    cfg.qubit(i)
    cfg.qubit(j)
    _require_spectators_idle(cfg, (i, j))
    if cfg.pi_override is None:
        raise ValueError(
            "interbit coupling requires pi_override; there is no flux map "
            "for it in this model"
        )
    ci = effective_coefficients(cfg, i)
    cj = effective_coefficients(cfg, j)
    pi_ij = float(cfg.pi_override)
    h = (
        ci.epsilon * np.kron(PAULI_Z, IDENTITY_2)
        + cj.epsilon * np.kron(IDENTITY_2, PAULI_Z)
        - ci.ebar * np.kron(PAULI_X, IDENTITY_2)
        - cj.ebar * np.kron(IDENTITY_2, PAULI_X)
        + pi_ij * np.kron(PAULI_X, PAULI_X)
    )
    return Operator(h)


def default_device(
    n_qubits: int,
    tau: float = 1e-10,
    inductance: float = 30e-9,
) -> DeviceConfig:
    """A plausible n-box device, all boxes parked at the idle bias.

    Box constants sit in the charging regime (E_c about 16x ej0); the
    defaults for ``tau`` and ``inductance`` match readily fabricated
    hardware (0.1 ns switching, 30 nH shared inductance).
    """
    box = QubitParams(
        ej0=1.3e-24,
        c_j=6e-16,
        c_gate=6e-18,
        n_offset=0,
        flux_x=0.0,
        v_x=0.0,
    )
    qubits = tuple(make_idle(box) for _ in range(n_qubits))
    return DeviceConfig(qubits=qubits, inductance=inductance, flux_e=0.0, tau=tau)
