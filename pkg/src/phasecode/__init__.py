"""Simulation and closed-form analytics for coding against phase damping.

A logical qubit is spread over N physical qubits so that dephasing jumps push
the state out of the code space, where a projective ancilla measurement can
reject them. The package simulates that pipeline exactly with dense density
matrices and checks it against the analytic predictions.
"""

from phasecode.bitstring import BitString, hamming_distance, hamming_weight, jump_selector
from phasecode.channels import (
    AmplitudeDampingChannel,
    PhaseDampingChannel,
    apply_amplitude_damping,
    apply_phase_damping,
)
from phasecode.codes import (
    Code,
    encode,
    representation_manifold_projector,
    standard_code,
    symmetric_code,
    two_qubit_code,
)
from phasecode.protocol import (
    ProtocolReport,
    ProtocolRun,
    run_amplitude,
    run_once,
    run_periodic,
)
from phasecode.qstate import DensityMatrix, QState
from phasecode.trajectories import TrajectoryEnsemble, branch_weights, decompose, sample_branch

__all__ = [
    "AmplitudeDampingChannel",
    "BitString",
    "Code",
    "DensityMatrix",
    "PhaseDampingChannel",
    "ProtocolReport",
    "ProtocolRun",
    "QState",
    "TrajectoryEnsemble",
    "apply_amplitude_damping",
    "apply_phase_damping",
    "branch_weights",
    "decompose",
    "encode",
    "hamming_distance",
    "hamming_weight",
    "jump_selector",
    "representation_manifold_projector",
    "run_amplitude",
    "run_once",
    "run_periodic",
    "sample_branch",
    "standard_code",
    "symmetric_code",
    "two_qubit_code",
]
