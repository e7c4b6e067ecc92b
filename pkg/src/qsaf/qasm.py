"""Gate-level export in a small OPENQASM 2.0 subset.

Emitted programs use qelib1 names plus ``u1`` for the bare phase gate and
``cp`` for the controlled phase. Angles are printed with 17 significant
digits so re-exported circuits are byte stable. Matrix-defined controlled
unitaries have no textual form and are rejected.
"""

from __future__ import annotations

from .errors import UnexportableError
from .gates import GateCircuit, GateKind

_PLAIN = {
    GateKind.H: "h", GateKind.X: "x", GateKind.Y: "y", GateKind.Z: "z",
    GateKind.S: "s", GateKind.SDG: "sdg", GateKind.T: "t",
    GateKind.TDG: "tdg", GateKind.CNOT: "cx", GateKind.CZ: "cz",
    GateKind.SWAP: "swap", GateKind.TOFFOLI: "ccx",
}

_ANGLED = {
    GateKind.RX: "rx", GateKind.RY: "ry", GateKind.RZ: "rz",
    GateKind.PHASE: "u1", GateKind.CPHASE: "cp",
}


def _angle(theta: float) -> str:
    return f"{theta:.17g}"


def export_gates(circuit: GateCircuit) -> str:
    """Render a circuit as OPENQASM 2.0 text."""
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";',
             f"qreg q[{circuit.width}];"]
    if circuit.classical_bits:
        lines.append(f"creg c[{circuit.classical_bits}];")
    for gate in circuit.ops:
        if gate.kind is GateKind.MEASURE:
            lines.append(
                f"measure q[{gate.qubits[0]}] -> c[{gate.cbit}];")
        elif gate.kind in _PLAIN:
            regs = ",".join(f"q[{q}]" for q in gate.qubits)
            lines.append(f"{_PLAIN[gate.kind]} {regs};")
        elif gate.kind in _ANGLED:
            regs = ",".join(f"q[{q}]" for q in gate.qubits)
            lines.append(
                f"{_ANGLED[gate.kind]}({_angle(gate.theta)}) {regs};")
        else:
            raise UnexportableError(
                f"{gate.kind.value} has no OPENQASM 2.0 form; decompose "
                f"it before exporting")
    return "\n".join(lines) + "\n"
