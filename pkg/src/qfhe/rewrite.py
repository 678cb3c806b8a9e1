"""Key-dependent circuit rewriting and homomorphic evaluation.

Each source gate is replaced by a twin chosen from the key bits of the wires
it touches, so that running the rewritten circuit on a QOTP ciphertext equals
encrypting the plaintext result. Single-qubit gates map to exactly one gate;
cnot maps to at most three.

Density-matrix semantics are blind to global phase, but the matrix-level test
oracles are not: every dropped (-1) factor -- the cnot sign and each angle
negation that wraps past zero during canonicalization -- is counted in
RewriteResult.phase_flips so the exact sign can be reconstructed.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from . import circuits, linalg, qotp
from .circuits import Circuit, EulerAngles, Gate
from .linalg import DensityState, PureState, canonical_angle
from .qotp import QotpKey


class OperatorNotPermitted(Exception):
    """The operator is outside the scheme's permitted set."""


class Scheme(enum.Enum):
    """Single-gate schemes: which operator family Evaluate accepts."""

    RZ_ONLY = "rz-only"
    RY_ONLY = "ry-only"
    RY_HY = "ry-hy"
    COMBINED = "combined"
    CNOT_ONLY = "cnot-only"


@dataclass(frozen=True)
class RewriteResult:
    """Replacement gates for one source gate, plus dropped (-1) phase count."""

    gates: tuple[Gate, ...]
    phase_flips: int

    def __post_init__(self):
        if not 1 <= len(self.gates) <= 3:
            raise ValueError(f"replacement must hold 1..3 gates, got {len(self.gates)}")


def _negate_if(theta: float, active: int) -> tuple[float, int]:
    """Canonical (-1)^active * theta and whether canonicalization wrapped (one sign flip)."""
    if not active or theta == 0.0:
        return theta, 0
    return canonical_angle(-theta), 1


def rewrite_rz(j: int, theta: float) -> float:
    """Twin angle for Rz under an X-exponent bit j: canonical((-1)^j * theta)."""
    return _negate_if(theta, j)[0]


def rewrite_ry(j: int, k: int, theta: float, hy_variant: bool = False) -> float:
    """Twin angle for Ry: canonical((-1)^(k+j) * theta), or (-1)^j under the hy mask."""
    active = j if hy_variant else (j + k) % 2
    return _negate_if(theta, active)[0]


def rewrite_u(j: int, k: int, angles: EulerAngles) -> EulerAngles:
    """Twin of the general single-qubit gate: negate beta/delta for j, gamma for k+j."""
    beta, _ = _negate_if(angles.beta, j)
    gamma, _ = _negate_if(angles.gamma, (j + k) % 2)
    delta, _ = _negate_if(angles.delta, j)
    return EulerAngles(angles.alpha, beta, gamma, delta)


def rewrite_cnot(j_control: int, m_target: int, control: int = 0, target: int = 1) -> RewriteResult:
    """Twin of cnot: Z^m on control, then X^j on target, then cnot; drops (-1)^(j*m)."""
    gates: list[Gate] = []
    if m_target:
        gates.append(Gate.named("z", control))
    if j_control:
        gates.append(Gate.named("x", target))
    gates.append(Gate.cnot(control, target))
    return RewriteResult(tuple(gates), j_control * m_target)


def rewrite_gate(key: QotpKey, gate: Gate) -> RewriteResult:
    """Rewrite one gate against the key bits of the wires it touches."""
    if key.variant != qotp.VARIANT_XZ:
        raise ValueError(f"circuit rewriting requires the xz key variant, got {key.variant!r}")
    if gate.kind == "cnot":
        control, target = gate.wires
        j = int(key.x_bits[control])
        m = int(key.z_bits[target])
        return rewrite_cnot(j, m, control, target)
    wire = gate.wires[0]
    j = int(key.x_bits[wire])
    k = int(key.z_bits[wire])
    if gate.kind == "rz":
        theta, flips = _negate_if(gate.params[0], j)
        return RewriteResult((Gate.rz(theta, wire),), flips)
    if gate.kind == "ry":
        theta, flips = _negate_if(gate.params[0], (j + k) % 2)
        return RewriteResult((Gate.ry(theta, wire),), flips)
    if gate.kind == "u":
        alpha, beta, gamma, delta = gate.params
    else:
        # named gates lift through the ZYZ form; the general rule covers them
        alpha, beta, gamma, delta = circuits.euler_decompose(gate.matrix()).as_tuple()
    beta, f1 = _negate_if(beta, j)
    gamma, f2 = _negate_if(gamma, (j + k) % 2)
    delta, f3 = _negate_if(delta, j)
    return RewriteResult((Gate.u(alpha, beta, gamma, delta, wire),), f1 + f2 + f3)


def rewrite_circuit(key: QotpKey, circuit: Circuit) -> Circuit:
    """The evaluable twin C' of C under a fixed key; size grows at most 3x."""
    if key.n_qubits != circuit.n_qubits:
        raise ValueError(f"key is for {key.n_qubits} qubit(s), circuit has {circuit.n_qubits}")
    gates: list[Gate] = []
    for gate in circuit.gates:
        gates.extend(rewrite_gate(key, gate).gates)
    return Circuit(circuit.n_qubits, tuple(gates))


def rewrite_phase_flips(key: QotpKey, circuit: Circuit) -> int:
    """Total dropped (-1) factors for the rewrite of a whole circuit."""
    if key.n_qubits != circuit.n_qubits:
        raise ValueError(f"key is for {key.n_qubits} qubit(s), circuit has {circuit.n_qubits}")
    return sum(rewrite_gate(key, gate).phase_flips for gate in circuit.gates)


def evaluate(key: QotpKey, circuit: Circuit, ciphertext):
    """Run the rewritten circuit on the ciphertext; no decryption happens here."""
    if not isinstance(ciphertext, (PureState, DensityState)):
        raise TypeError(f"expected PureState or DensityState, got {type(ciphertext).__name__}")
    if ciphertext.n_qubits != circuit.n_qubits:
        raise ValueError(
            f"circuit has {circuit.n_qubits} qubit(s), ciphertext has {ciphertext.n_qubits}"
        )
    return circuits.simulate(rewrite_circuit(key, circuit), ciphertext)


_PERMITTED = {
    Scheme.RZ_ONLY: {"rz"},
    Scheme.RY_ONLY: {"ry"},
    Scheme.RY_HY: {"ry"},
    Scheme.COMBINED: {"rz", "ry"},
    Scheme.CNOT_ONLY: {"cnot"},
}


def scheme_evaluate(scheme: Scheme, key: QotpKey, op: Gate, ciphertext: DensityState) -> DensityState:
    """Single-gate Evaluate for the restricted schemes; rejects op outside the permitted set."""
    if op.kind not in _PERMITTED[scheme]:
        raise OperatorNotPermitted(
            f"operator {op.kind!r} is not permitted by scheme {scheme.value!r}"
        )
    expected_variant = qotp.VARIANT_HY if scheme is Scheme.RY_HY else qotp.VARIANT_XZ
    if key.variant != expected_variant:
        raise ValueError(f"scheme {scheme.value!r} requires a {expected_variant!r} key")
    if ciphertext.n_qubits != key.n_qubits:
        raise ValueError(f"key is for {key.n_qubits} qubit(s), state has {ciphertext.n_qubits}")
    if any(w >= key.n_qubits for w in op.wires):
        raise ValueError(f"gate wires {op.wires} out of range for {key.n_qubits} qubit(s)")

    if scheme is Scheme.RY_HY:
        wire = op.wires[0]
        twin = [Gate.ry(rewrite_ry(int(key.x_bits[wire]), int(key.z_bits[wire]), op.params[0], hy_variant=True), wire)]
    else:
        twin = list(rewrite_gate(key, op).gates)
    state = ciphertext
    for gate in twin:
        state = linalg.apply_to_wires(gate.matrix(), gate.wires, state)
    return state
