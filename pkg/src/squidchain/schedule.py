"""Compile cluster targets into timed device-control schedules.

A schedule step records, for every box, the bias settings as dimensionless
multipliers (flux in units of Phi0, gate voltage in units of e/C_gate,
duration in units of tau) so documents stay exact and device-independent;
the device section carries the SI constants needed to reconstruct real
biases.  The entangling couplings are recorded per step rather than
derived from fluxes, because the flux-to-coupling map is out of scope: the
protocol pins them to -pi/4 in units of hbar/tau.

Serialized documents are JSON with a fixed key order; ``import`` of
``export`` reproduces the schedule field for field and re-export is byte
identical.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from ._exact import phase_half_turns
from .device import (
    DeviceConfig,
    E_CHARGE,
    FLUX_QUANTUM,
    PROTOCOL_COUPLING,
    QubitParams,
    at_degeneracy_voltage,
    idle_settings,
    pair_hamiltonian,
)
from .hilbert import StateVector, expm_hermitian
from .dynamics import apply_pair_gate
from .protocol import ClusterSpec, initial_state

SCHEDULE_FORMAT_VERSION = 1

_UNITS = {"flux_x": "Phi0", "v_x": "e_over_c_gate", "duration": "tau"}

IDLE_FLUX = 0.5  # units of Phi0
ACTIVE_FLUX = 0.0  # placeholder: couplings come from the recorded overrides


class SchemaError(ValueError):
    """Schedule document violates the schema; message names the offending path."""


@dataclass(frozen=True)
class BoxBias:
    """One box's bias during a step: flux in Phi0, voltage in e/C_gate units."""

    flux_x: float
    v_x: float


@dataclass(frozen=True)
class GateStep:
    """One timed entangling step with full per-box bias settings.

    ``couplings_ebar`` applies to both active boxes and ``couplings_pi`` to
    the pair, in internal units (hbar/tau).  ``phase_correction`` is the
    unit scalar applied after the evolution (exp(i*pi/4) as compiled).
    """

    active_pair: tuple[int, int]
    duration: float
    box_settings: tuple[BoxBias, ...]
    couplings_ebar: float
    couplings_pi: float
    phase_correction: complex

    def __post_init__(self) -> None:
        i, j = self.active_pair
        if i == j:
            raise ValueError(f"active pair must be two distinct boxes, got {self.active_pair}")
        if self.duration <= 0:
            raise ValueError(f"step duration must be positive, got {self.duration!r}")
        if abs(abs(self.phase_correction) - 1.0) > 1e-12:
            raise ValueError(
                f"phase correction must be a unit scalar, got {self.phase_correction!r}"
            )
        object.__setattr__(self, "active_pair", (int(i), int(j)))
        object.__setattr__(self, "box_settings", tuple(self.box_settings))


@dataclass(frozen=True)
class Schedule:
    """Ordered entangling steps for one device and one cluster target."""

    device: DeviceConfig
    steps: tuple[GateStep, ...]
    target: ClusterSpec

    def __post_init__(self) -> None:
        object.__setattr__(self, "steps", tuple(self.steps))
        n = self.target.n_qubits
        if self.device.n_qubits < n:
            raise ValueError(
                f"device has {self.device.n_qubits} boxes, target needs {n}"
            )
        if len(self.steps) != n - 1:
            raise ValueError(
                f"expected {n - 1} steps for an {n}-qubit chain, got {len(self.steps)}"
            )
        pairs = sorted(step.active_pair for step in self.steps)
        expected = sorted(self.target.pair_order)
        if pairs != expected:
            raise ValueError(
                f"step pairs {pairs} do not match the chain pairs {expected}"
            )
        for idx, step in enumerate(self.steps):
            if len(step.box_settings) != self.device.n_qubits:
                raise ValueError(
                    f"steps[{idx}] has {len(step.box_settings)} box settings, "
                    f"device has {self.device.n_qubits} boxes"
                )
            for q in step.active_pair:
                if not 1 <= q <= self.device.n_qubits:
                    raise ValueError(f"steps[{idx}] drives box {q}, out of range")


def compile_schedule(spec: ClusterSpec, device: DeviceConfig) -> Schedule:
    """One step per chain bond in ``spec.pair_order``, with the bias prescription:
    spectators parked at (Phi0/2, degeneracy), active boxes at degeneracy
    voltage with the pinned couplings, duration tau."""
    if device.n_qubits < spec.n_qubits:
        raise ValueError(
            f"device has {device.n_qubits} boxes but the target needs {spec.n_qubits}"
        )
    steps = []
    for i, j in spec.pair_order:
        settings = []
        for k in range(1, device.n_qubits + 1):
            q = device.qubits[k - 1]
            degeneracy_units = float(2 * q.n_offset + 1)
            flux = ACTIVE_FLUX if k in (i, j) else IDLE_FLUX
            settings.append(BoxBias(flux_x=flux, v_x=degeneracy_units))
        steps.append(
            GateStep(
                active_pair=(i, j),
                duration=1.0,
                box_settings=tuple(settings),
                couplings_ebar=PROTOCOL_COUPLING,
                couplings_pi=PROTOCOL_COUPLING,
                phase_correction=phase_half_turns(0.25),
            )
        )
    return Schedule(device=device, steps=tuple(steps), target=spec)


def _reconstruct_box(device: DeviceConfig, k: int, bias: BoxBias) -> QubitParams:
    base = device.qubits[k - 1]
    return QubitParams(
        ej0=base.ej0,
        c_j=base.c_j,
        c_gate=base.c_gate,
        n_offset=base.n_offset,
        flux_x=bias.flux_x * FLUX_QUANTUM,
        v_x=bias.v_x * (E_CHARGE / base.c_gate),
    )


def simulate_schedule(schedule: Schedule) -> StateVector:
    """Round-trip validation: rebuild each step's Hamiltonian from its bias
    settings via the device model, evolve, apply the phase correction.

    The recorded per-step couplings are authoritative; device-level
    overrides are ignored here.  Steps whose spectators are not idle or
    whose active boxes are off degeneracy raise instead of evolving.
    """
    n = schedule.target.n_qubits
    state = initial_state(n)
    for idx, step in enumerate(schedule.steps):
        i, j = step.active_pair
        boxes = tuple(
            _reconstruct_box(schedule.device, k, step.box_settings[k - 1])
            for k in range(1, schedule.device.n_qubits + 1)
        )
        for k, box in enumerate(boxes, start=1):
            if k in (i, j):
                if not at_degeneracy_voltage(box):
                    raise ValueError(
                        f"steps[{idx}]: active box {k} is biased off the "
                        f"degeneracy voltage"
                    )
            elif not idle_settings(box):
                raise ValueError(
                    f"steps[{idx}]: spectator box {k} is not idle"
                )
        cfg = DeviceConfig(
            qubits=boxes,
            inductance=schedule.device.inductance,
            flux_e=schedule.device.flux_e,
            tau=schedule.device.tau,
            ebar_overrides={i: step.couplings_ebar, j: step.couplings_ebar},
            pi_override=step.couplings_pi,
            screening=schedule.device.screening,
        )
        H = pair_hamiltonian(cfg, i, j)
        U = expm_hermitian(H, step.duration)
        state = apply_pair_gate(state, i, j, U)
        state = StateVector(n, state.amplitudes * step.phase_correction)
    return state


# ---------------------------------------------------------------------------
# Document serialization


def _get(obj, path: str, key: str, kind: str, required: bool = True, default=None):
    label = f"{path}.{key}" if path else key
    if not isinstance(obj, dict):
        raise SchemaError(f"{path or 'document'}: expected an object")
    if key not in obj:
        if required:
            raise SchemaError(f"{label}: missing required field")
        return default
    value = obj[key]
    if kind == "number":
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise SchemaError(f"{label}: expected a number, got {type(value).__name__}")
        return float(value)
    if kind == "int":
        if isinstance(value, bool) or not isinstance(value, int):
            raise SchemaError(f"{label}: expected an integer, got {type(value).__name__}")
        return value
    if kind == "list":
        if not isinstance(value, list):
            raise SchemaError(f"{label}: expected an array, got {type(value).__name__}")
        return value
    if kind == "object":
        if not isinstance(value, dict):
            raise SchemaError(f"{label}: expected an object, got {type(value).__name__}")
        return value
    raise AssertionError(f"unknown schema kind {kind}")


def _pair_from(value, label: str) -> tuple[int, int]:
    if (
        not isinstance(value, list)
        or len(value) != 2
        or any(isinstance(x, bool) or not isinstance(x, int) for x in value)
    ):
        raise SchemaError(f"{label}: expected a pair of integers")
    return (value[0], value[1])


def _overrides_to_doc(overrides: Mapping[int, float] | None):
    if overrides is None:
        return None
    return {str(k): overrides[k] for k in sorted(overrides)}


def _overrides_from_doc(obj, label: str) -> dict[int, float] | None:
    if obj is None:
        return None
    if not isinstance(obj, dict):
        raise SchemaError(f"{label}: expected an object")
    out = {}
    for key, value in obj.items():
        try:
            idx = int(key)
        except ValueError:
            raise SchemaError(f"{label}.{key}: expected an integer box index") from None
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise SchemaError(f"{label}.{key}: expected a number")
        out[idx] = float(value)
    return out


def device_to_document(device: DeviceConfig) -> dict:
    doc = {
        "tau_seconds": device.tau,
        "inductance_henry": device.inductance,
        "flux_e_weber": device.flux_e,
        "screening": device.screening,
        "qubits": [
            {
                "ej0_joule": q.ej0,
                "c_j_farad": q.c_j,
                "c_gate_farad": q.c_gate,
                "n_offset": q.n_offset,
                "flux_x_weber": q.flux_x,
                "v_x_volt": q.v_x,
            }
            for q in device.qubits
        ],
    }
    if device.epsilon_overrides is not None:
        doc["epsilon_overrides"] = _overrides_to_doc(device.epsilon_overrides)
    if device.ebar_overrides is not None:
        doc["ebar_overrides"] = _overrides_to_doc(device.ebar_overrides)
    if device.pi_override is not None:
        doc["pi_override"] = device.pi_override
    return doc


def device_from_document(obj, path: str = "device") -> DeviceConfig:
    tau = _get(obj, path, "tau_seconds", "number")
    inductance = _get(obj, path, "inductance_henry", "number")
    flux_e = _get(obj, path, "flux_e_weber", "number")
    screening = _get(obj, path, "screening", "number", required=False, default=1.0)
    qubit_docs = _get(obj, path, "qubits", "list")
    qubits = []
    for k, qdoc in enumerate(qubit_docs):
        qpath = f"{path}.qubits[{k}]"
        qubits.append(
            QubitParams(
                ej0=_get(qdoc, qpath, "ej0_joule", "number"),
                c_j=_get(qdoc, qpath, "c_j_farad", "number"),
                c_gate=_get(qdoc, qpath, "c_gate_farad", "number"),
                n_offset=_get(qdoc, qpath, "n_offset", "int"),
                flux_x=_get(qdoc, qpath, "flux_x_weber", "number"),
                v_x=_get(qdoc, qpath, "v_x_volt", "number"),
            )
        )
    if not qubits:
        raise SchemaError(f"{path}.qubits: must not be empty")
    pi_override = None
    if "pi_override" in obj:
        pi_override = _get(obj, path, "pi_override", "number")
    return DeviceConfig(
        qubits=tuple(qubits),
        inductance=inductance,
        flux_e=flux_e,
        tau=tau,
        epsilon_overrides=_overrides_from_doc(
            obj.get("epsilon_overrides"), f"{path}.epsilon_overrides"
        ),
        ebar_overrides=_overrides_from_doc(
            obj.get("ebar_overrides"), f"{path}.ebar_overrides"
        ),
        pi_override=pi_override,
        screening=screening,
    )


def export_schedule(schedule: Schedule) -> dict:
    """Schedule as a JSON-ready document with documented key order."""
    return {
        "version": SCHEDULE_FORMAT_VERSION,
        "units": dict(_UNITS),
        "device": device_to_document(schedule.device),
        "target": {
            "n_qubits": schedule.target.n_qubits,
            "pair_order": [list(p) for p in schedule.target.pair_order],
        },
        "steps": [
            {
                "active_pair": list(step.active_pair),
                "duration": step.duration,
                "couplings": {
                    "ebar": step.couplings_ebar,
                    "pi": step.couplings_pi,
                },
                "phase_correction": [
                    step.phase_correction.real,
                    step.phase_correction.imag,
                ],
                "box_settings": [
                    {"flux_x": b.flux_x, "v_x": b.v_x} for b in step.box_settings
                ],
            }
            for step in schedule.steps
        ],
    }


def import_schedule(doc) -> Schedule:
    """Parse and validate a schedule document; rejects unknown versions."""
    version = _get(doc, "", "version", "int")
    if version != SCHEDULE_FORMAT_VERSION:
        raise SchemaError(
            f"version: unsupported schedule format version {version}, "
            f"expected {SCHEDULE_FORMAT_VERSION}"
        )
    units = _get(doc, "", "units", "object")
    if units != _UNITS:
        raise SchemaError(f"units: expected {_UNITS}, got {units}")
    device = device_from_document(_get(doc, "", "device", "object"))
    target_doc = _get(doc, "", "target", "object")
    n_qubits = _get(target_doc, "target", "n_qubits", "int")
    order_doc = _get(target_doc, "target", "pair_order", "list")
    pair_order = tuple(
        _pair_from(p, f"target.pair_order[{k}]") for k, p in enumerate(order_doc)
    )
    try:
        target = ClusterSpec(n_qubits=n_qubits, pair_order=pair_order)
    except ValueError as exc:
        raise SchemaError(f"target: {exc}") from None
    steps = []
    for idx, sdoc in enumerate(_get(doc, "", "steps", "list")):
        spath = f"steps[{idx}]"
        pair = _pair_from(
            _get(sdoc, spath, "active_pair", "list"), f"{spath}.active_pair"
        )
        duration = _get(sdoc, spath, "duration", "number")
        couplings = _get(sdoc, spath, "couplings", "object")
        ebar = _get(couplings, f"{spath}.couplings", "ebar", "number")
        pi_value = _get(couplings, f"{spath}.couplings", "pi", "number")
        phase_doc = _get(sdoc, spath, "phase_correction", "list")
        if len(phase_doc) != 2 or any(
            isinstance(x, bool) or not isinstance(x, (int, float)) for x in phase_doc
        ):
            raise SchemaError(
                f"{spath}.phase_correction: expected [real, imaginary] numbers"
            )
        box_docs = _get(sdoc, spath, "box_settings", "list")
        settings = tuple(
            BoxBias(
                flux_x=_get(b, f"{spath}.box_settings[{k}]", "flux_x", "number"),
                v_x=_get(b, f"{spath}.box_settings[{k}]", "v_x", "number"),
            )
            for k, b in enumerate(box_docs)
        )
        try:
            steps.append(
                GateStep(
                    active_pair=pair,
                    duration=duration,
                    box_settings=settings,
                    couplings_ebar=ebar,
                    couplings_pi=pi_value,
                    phase_correction=complex(phase_doc[0], phase_doc[1]),
                )
            )
        except ValueError as exc:
            raise SchemaError(f"{spath}: {exc}") from None
    try:
        return Schedule(device=device, steps=tuple(steps), target=target)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def document_text(schedule: Schedule) -> str:
    return json.dumps(export_schedule(schedule), indent=2, ensure_ascii=False) + "\n"


def save_schedule(schedule: Schedule, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(document_text(schedule))


def load_schedule(path) -> Schedule:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            doc = json.load(handle)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not valid JSON: {exc}") from None
    return import_schedule(doc)


def load_device_config(path) -> DeviceConfig:
    """Read a DeviceConfig from a (possibly schedule-) document with a
    ``device`` section."""
    with open(path, "r", encoding="utf-8") as handle:
        try:
            doc = json.load(handle)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or "device" not in doc:
        raise SchemaError("device: missing required field")
    return device_from_document(doc["device"])
