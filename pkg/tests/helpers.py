"""Shared builders for randomized suites."""
from __future__ import annotations

from qfhe import Circuit, Gate
from qfhe.rng import RandomSource

ALL_KINDS = ("x", "y", "z", "h", "rz", "ry", "u", "cnot")


def random_gate(n_qubits: int, rng: RandomSource, kinds=ALL_KINDS) -> Gate:
    kind = kinds[rng.integer(0, len(kinds))]
    if kind == "cnot":
        if n_qubits < 2:
            kind = "x"
        else:
            control = rng.integer(0, n_qubits)
            target = rng.integer(0, n_qubits - 1)
            if target >= control:
                target += 1
            return Gate.cnot(control, target)
    wire = rng.integer(0, n_qubits)
    if kind in ("rz", "ry"):
        return Gate(kind, (wire,), (rng.angle(),))
    if kind == "u":
        return Gate.u(*rng.angles(4), wire)
    return Gate.named(kind, wire)


def random_circuit(n_qubits: int, n_gates: int, rng: RandomSource, kinds=ALL_KINDS) -> Circuit:
    return Circuit(n_qubits, tuple(random_gate(n_qubits, rng, kinds) for _ in range(n_gates)))
