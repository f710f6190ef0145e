"""Quantum process tomography under different preparation procedures.

Simulates a qubit coupled to a one-qubit environment, prepares the
tomographic inputs with a chosen procedure (ideal pin, faulty rotation,
mixed pin, correlated pin, inconsistent pins, no pin), reconstructs the
process map by linear inversion and checks whether that map is
completely positive and trace preserving.
"""
from .dynamics import Evolution, hamiltonian, process_output, unitary
from .errors import (
    ConfigError,
    ConsistencyError,
    DimensionError,
    LinearDependenceError,
    NotHermitianError,
    NotPhysicalError,
    NotPreparableError,
    PreptomoError,
)
from .operators import (
    BipartiteState,
    QubitState,
    bloch_to_state,
    hermitian_eigenvalues,
    partial_trace_env,
    pauli,
    state_to_bloch,
    tensor,
)
from .preparation import (
    CorrelatedFamily,
    IdealPin,
    MixedPin,
    MultiPin,
    NoPin,
    PinWithControlError,
    apply_pin,
    erroneous_rotation,
    initial_state,
    prepare_input,
    rotation_for_target,
)
from .scenarios import ScenarioConfig, build_scenario, oracle_map, run_scenario, sweep
from .states import DualSet, InputSet, compute_duals, expand_in_inputs, standard_inputs
from .tomography import (
    DiagnosticsReport,
    ProcessMap,
    apply_map,
    cp_spectrum,
    diagnose,
    linearity_probe,
    reconstruct_map,
    tp_check,
)

__version__ = "0.1.0"

__all__ = [
    "BipartiteState",
    "ConfigError",
    "ConsistencyError",
    "CorrelatedFamily",
    "DiagnosticsReport",
    "DimensionError",
    "DualSet",
    "Evolution",
    "IdealPin",
    "InputSet",
    "LinearDependenceError",
    "MixedPin",
    "MultiPin",
    "NoPin",
    "NotHermitianError",
    "NotPhysicalError",
    "NotPreparableError",
    "PinWithControlError",
    "PreptomoError",
    "ProcessMap",
    "QubitState",
    "ScenarioConfig",
    "apply_map",
    "apply_pin",
    "bloch_to_state",
    "build_scenario",
    "compute_duals",
    "cp_spectrum",
    "diagnose",
    "erroneous_rotation",
    "expand_in_inputs",
    "hamiltonian",
    "hermitian_eigenvalues",
    "initial_state",
    "linearity_probe",
    "oracle_map",
    "partial_trace_env",
    "pauli",
    "prepare_input",
    "process_output",
    "reconstruct_map",
    "rotation_for_target",
    "run_scenario",
    "standard_inputs",
    "state_to_bloch",
    "sweep",
    "tensor",
    "tp_check",
    "unitary",
]
