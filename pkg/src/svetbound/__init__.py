"""Upper bounds and see-saw verification for three-qubit Svetlichny operator values."""

from .bounds import (
    CERTIFIED_NO_VIOLATION,
    CERTIFIED_VIOLATION,
    INCONCLUSIVE,
    BoundReport,
    Certificate,
    quantum_bound,
    tightness_certificate,
)
from .correlation import (
    SingularSpectrum,
    correlation_tensor,
    fold,
    local_rotate,
    singular_spectrum,
    unfold,
)
from .families import (
    BISECTION,
    CLOSED_FORM,
    GHZ_COLOR,
    GHZ_WHITE,
    FamilySpec,
    GhzClassParams,
    GmeReport,
    ScanRow,
    ThresholdReport,
    analytic_singular_values,
    ghz_class_state,
    ghz_state,
    gme_lower_bound,
    realize,
    scan,
    violation_threshold,
)
from .qcore import (
    InvariantViolation,
    StateValidationError,
    expectation,
    kron3,
    observable,
    pauli,
    pure_state,
    pure_to_density,
    unit_vector,
    validate_density,
)
from .seesaw import (
    OptimizationResult,
    OptimizerConfig,
    maximize,
    random_settings,
    seesaw_step,
)
from .svetlichny import (
    CLASSICAL_BOUND,
    MeasurementSettings,
    bilinear_value,
    build_operator,
    principal_angle,
    svetlichny_value,
)

__version__ = "0.1.0"

__all__ = [
    "BISECTION",
    "BoundReport",
    "CERTIFIED_NO_VIOLATION",
    "CERTIFIED_VIOLATION",
    "CLASSICAL_BOUND",
    "CLOSED_FORM",
    "Certificate",
    "FamilySpec",
    "GHZ_COLOR",
    "GHZ_WHITE",
    "GhzClassParams",
    "GmeReport",
    "INCONCLUSIVE",
    "InvariantViolation",
    "MeasurementSettings",
    "OptimizationResult",
    "OptimizerConfig",
    "ScanRow",
    "SingularSpectrum",
    "StateValidationError",
    "ThresholdReport",
    "analytic_singular_values",
    "bilinear_value",
    "build_operator",
    "correlation_tensor",
    "expectation",
    "fold",
    "ghz_class_state",
    "ghz_state",
    "gme_lower_bound",
    "kron3",
    "local_rotate",
    "maximize",
    "observable",
    "pauli",
    "principal_angle",
    "pure_state",
    "pure_to_density",
    "quantum_bound",
    "random_settings",
    "realize",
    "scan",
    "seesaw_step",
    "singular_spectrum",
    "svetlichny_value",
    "tightness_certificate",
    "unfold",
    "unit_vector",
    "validate_density",
    "violation_threshold",
]
