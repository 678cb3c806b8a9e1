"""QOTP-based symmetric quantum homomorphic encryption toolkit."""

from .analysis import (
    ClassifyResult,
    PauliCoefficients,
    SecurityReport,
    average_over_keys,
    check_appendix_identities,
    classify_key_independent,
    pauli_decompose,
    verify_security,
)
from .circuits import (
    Circuit,
    CircuitFormatError,
    EulerAngles,
    Gate,
    euler_decompose,
    full_matrix,
    parse_circuit,
    serialize_circuit,
    simulate,
)
from .linalg import (
    DensityState,
    PureState,
    apply_to_density,
    apply_to_wires,
    canonical_angle,
    gate_matrix,
    maximally_mixed,
    pauli_operator,
    trace_distance,
)
from .qotp import QotpKey, decrypt, encrypt, keygen
from .rewrite import (
    OperatorNotPermitted,
    RewriteResult,
    Scheme,
    evaluate,
    rewrite_circuit,
    rewrite_cnot,
    rewrite_gate,
    rewrite_rz,
    rewrite_ry,
    rewrite_u,
    scheme_evaluate,
)
from .rng import RandomSource

__all__ = [
    "Circuit",
    "CircuitFormatError",
    "ClassifyResult",
    "DensityState",
    "EulerAngles",
    "Gate",
    "OperatorNotPermitted",
    "PauliCoefficients",
    "PureState",
    "QotpKey",
    "RandomSource",
    "RewriteResult",
    "Scheme",
    "SecurityReport",
    "apply_to_density",
    "apply_to_wires",
    "average_over_keys",
    "canonical_angle",
    "check_appendix_identities",
    "classify_key_independent",
    "decrypt",
    "encrypt",
    "euler_decompose",
    "evaluate",
    "full_matrix",
    "gate_matrix",
    "keygen",
    "maximally_mixed",
    "parse_circuit",
    "pauli_decompose",
    "pauli_operator",
    "rewrite_circuit",
    "rewrite_cnot",
    "rewrite_gate",
    "rewrite_rz",
    "rewrite_ry",
    "rewrite_u",
    "scheme_evaluate",
    "serialize_circuit",
    "simulate",
    "trace_distance",
    "verify_security",
]
