"""Six-state QKD eavesdropping model with entangled probe states.

The package builds Eve's attack unitary from the disturbance and the
probe-state entanglement parameters, simulates the intercepted
protocol round, evaluates the legitimate and eavesdropper mutual
information, and maps where a secret key survives over the
(concurrence, disturbance) plane.
"""

from .attack import (
    AncillaSet,
    AttackParameters,
    Branch,
    ConstraintReport,
    InfeasibleAttackError,
    build_attack_operator,
    concurrence,
    concurrence_from_weight,
    equal_disturbance_target,
    flip_ancillas,
    is_feasible,
    keep_ancillas,
    solve_phases,
    tau1_sq_from_concurrence,
    validate_constraints,
    weight_from_concurrence,
)
from .infotheory import (
    binary_entropy,
    i_ab,
    i_ae_branch,
    i_ae_dependent,
    i_ae_equal_concurrence,
    i_ae_general,
    i_ae_independent,
    mutual_information,
    split_information,
)
from .keyregion import (
    BRUSS_THRESHOLD,
    CriticalPoint,
    SweepMode,
    SweepRow,
    bruss_baseline,
    critical_disturbance,
    critical_disturbance_closed_form,
    delta_i,
    figure_rows,
    sweep,
)
from .protocol import (
    disturbance_profile,
    intercept,
    prepare_pair,
    qber_monte_carlo,
    verify_ancilla_reduction,
)
from .qubits import (
    Basis,
    complete_to_unitary,
    ket,
    partial_trace,
    tensor,
    unitarity_defect,
)

__version__ = "0.1.0"

__all__ = [
    "AncillaSet",
    "AttackParameters",
    "BRUSS_THRESHOLD",
    "Basis",
    "Branch",
    "ConstraintReport",
    "CriticalPoint",
    "InfeasibleAttackError",
    "SweepMode",
    "SweepRow",
    "binary_entropy",
    "bruss_baseline",
    "build_attack_operator",
    "complete_to_unitary",
    "concurrence",
    "concurrence_from_weight",
    "critical_disturbance",
    "critical_disturbance_closed_form",
    "delta_i",
    "disturbance_profile",
    "equal_disturbance_target",
    "figure_rows",
    "flip_ancillas",
    "i_ab",
    "i_ae_branch",
    "i_ae_dependent",
    "i_ae_equal_concurrence",
    "i_ae_general",
    "i_ae_independent",
    "intercept",
    "is_feasible",
    "keep_ancillas",
    "ket",
    "mutual_information",
    "partial_trace",
    "prepare_pair",
    "qber_monte_carlo",
    "solve_phases",
    "split_information",
    "sweep",
    "tau1_sq_from_concurrence",
    "tensor",
    "unitarity_defect",
    "validate_constraints",
    "verify_ancilla_reduction",
    "weight_from_concurrence",
]
