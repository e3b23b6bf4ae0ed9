"""Sequential generation of linear cluster states with charge qubits
coupled through a shared inductance: exact state-vector protocol,
device-control schedule compilation, and a pure-dephasing noise layer.
"""

from .hilbert import (
    DensityMatrix,
    Operator,
    StateVector,
    apply_local,
    embed_local,
    expm_hermitian,
    fidelity,
    tensor,
)
from .device import (
    DeviceConfig,
    EffectiveCoefficients,
    FLUX_QUANTUM,
    PROTOCOL_COUPLING,
    QubitParams,
    default_device,
    idle_settings,
    make_idle,
    pair_hamiltonian,
    single_qubit_hamiltonian,
    squid_coupling,
)
from .dynamics import (
    PlusMinusBasis,
    apply_pair_gate,
    entangling_gate,
    entangling_hamiltonian,
    evolve,
    pm_coordinates,
    state_from_pm_coordinates,
)
from .protocol import (
    ClusterSpec,
    StabilizerSpec,
    entanglement_entropy,
    generate_cluster,
    ideal_cluster,
    initial_state,
    persistency_probe,
    stabilizer_expectations,
)
from .noise import (
    NoiseParams,
    SweepResult,
    dephase,
    dephasing_sweep,
    manipulation_budget,
    run_noisy_protocol,
    state_fidelity,
    timing_sweep,
)
from .schedule import (
    GateStep,
    Schedule,
    SchemaError,
    compile_schedule,
    export_schedule,
    import_schedule,
    load_device_config,
    load_schedule,
    save_schedule,
    simulate_schedule,
)

__version__ = "0.1.0"

__all__ = [
    "ClusterSpec",
    "DensityMatrix",
    "DeviceConfig",
    "EffectiveCoefficients",
    "FLUX_QUANTUM",
    "GateStep",
    "NoiseParams",
    "Operator",
    "PROTOCOL_COUPLING",
    "PlusMinusBasis",
    "QubitParams",
    "Schedule",
    "SchemaError",
    "StabilizerSpec",
    "StateVector",
    "SweepResult",
    "apply_local",
    "apply_pair_gate",
    "compile_schedule",
    "default_device",
    "dephase",
    "dephasing_sweep",
    "embed_local",
    "entangling_gate",
    "entangling_hamiltonian",
    "entanglement_entropy",
    "evolve",
    "export_schedule",
    "expm_hermitian",
    "fidelity",
    "generate_cluster",
    "ideal_cluster",
    "idle_settings",
    "import_schedule",
    "initial_state",
    "load_device_config",
    "load_schedule",
    "make_idle",
    "manipulation_budget",
    "pair_hamiltonian",
    "persistency_probe",
    "pm_coordinates",
    "run_noisy_protocol",
    "save_schedule",
    "simulate_schedule",
    "single_qubit_hamiltonian",
    "squid_coupling",
    "stabilizer_expectations",
    "state_fidelity",
    "state_from_pm_coordinates",
    "tensor",
    "timing_sweep",
]
