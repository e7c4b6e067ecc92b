"""Gate IR: construction rules, matrices, circuit invariants."""

import math

import numpy as np
import pytest

import qsaf.gates as g
from qsaf.errors import (DuplicateQubitError, GateArityError,
                         IndexOutOfRangeError, MeasuredQubitReuseError,
                         NonReversibleError, TooWideError)
from qsaf.gates import (Gate, GateCircuit, GateKind, apply_matrix, dagger,
                        depth, gate_counts, gate_matrix, unitary_of)

from conftest import H2, X2, Y2, Z2, apply_ref, op_on, rx_ref, ry_ref, rz_ref


def test_constructors_record_kind_and_qubits():
    assert g.h(2).kind is GateKind.H and g.h(2).qubits == (2,)
    assert g.cnot(0, 3).qubits == (0, 3)
    assert g.toffoli(1, 2, 0).qubits == (1, 2, 0)
    assert g.rx(0.5, 1).theta == 0.5
    assert g.measure(4, 2).cbit == 2


def test_gate_validation_rejects_bad_shapes():
    with pytest.raises(DuplicateQubitError):
        g.cnot(1, 1)
    with pytest.raises(GateArityError):
        Gate(GateKind.H, (0, 1))
    with pytest.raises(GateArityError):
        Gate(GateKind.RX, (0,))  # missing angle
    with pytest.raises(GateArityError):
        Gate(GateKind.X, (0,), theta=1.0)  # spurious angle
    with pytest.raises(GateArityError):
        Gate(GateKind.MEASURE, (0,))  # missing classical bit


def test_controlled_u_validation():
    u = np.eye(2, dtype=complex)
    assert g.controlled_u(u, 0, [1]).qubits == (0, 1)
    with pytest.raises(GateArityError):
        g.controlled_u(np.ones((2, 2)), 0, [1])  # not unitary
    with pytest.raises(GateArityError):
        g.controlled_u(np.eye(3), 0, [1])  # not a power-of-two dimension
    with pytest.raises(GateArityError):
        g.controlled_u(np.eye(4), 0, [1])  # one target too few
    with pytest.raises(GateArityError):
        g.controlled_u(u, 0, [1], power=0)


@pytest.mark.parametrize("gate,reference", [
    (g.h(0), H2), (g.x(0), X2), (g.y(0), Y2), (g.z(0), Z2),
    (g.s(0), np.diag([1, 1j])),
    (g.t(0), np.diag([1, np.exp(1j * math.pi / 4)])),
    (g.rx(0.7, 0), rx_ref(0.7)),
    (g.ry(-1.3, 0), ry_ref(-1.3)),
    (g.rz(2.1, 0), rz_ref(2.1)),
    (g.phase(0.9, 0), np.diag([1, np.exp(0.9j)])),
])
def test_single_qubit_matrices(gate, reference):
    assert np.allclose(gate_matrix(gate), reference, atol=1e-12)


def test_s_t_daggers_invert():
    for plain, dag in ((g.s(0), g.sdg(0)), (g.t(0), g.tdg(0))):
        prod = gate_matrix(plain) @ gate_matrix(dag)
        assert np.allclose(prod, np.eye(2), atol=1e-12)


def test_two_qubit_matrices_little_endian():
    # first listed qubit indexes the least significant matrix bit
    cnot = gate_matrix(g.cnot(0, 1))
    assert cnot[3, 1] == 1 and cnot[1, 3] == 1  # |01> <-> |11>, q0 is LSB
    cphase = gate_matrix(g.cphase(math.pi / 2, 0, 1))
    assert np.allclose(np.diag(cphase), [1, 1, 1, 1j], atol=1e-12)
    swap = gate_matrix(g.swap(0, 1))
    assert swap[1, 2] == 1 and swap[2, 1] == 1


def test_controlled_u_matrix_applies_power():
    u = rz_ref(0.8)
    mat = gate_matrix(g.controlled_u(u, 0, [1], power=3))
    want = np.eye(4, dtype=complex)
    cube = np.linalg.matrix_power(u, 3)
    # control set: odd basis indices transform on the target bit
    want[1, 1], want[1, 3] = cube[0, 0], cube[0, 1]
    want[3, 1], want[3, 3] = cube[1, 0], cube[1, 1]
    assert np.allclose(mat, want, atol=1e-12)


def test_apply_matrix_agrees_with_index_arithmetic():
    rng = np.random.default_rng(5)
    for _ in range(25):
        n = int(rng.integers(1, 6))
        state = rng.normal(size=2 ** n) + 1j * rng.normal(size=2 ** n)
        state /= np.linalg.norm(state)
        k = int(rng.integers(1, min(n, 3) + 1))
        qubits = tuple(rng.choice(n, size=k, replace=False).tolist())
        matrix = np.linalg.qr(rng.normal(size=(2 ** k, 2 ** k))
                              + 1j * rng.normal(size=(2 ** k, 2 ** k)))[0]
        fast = apply_matrix(state, n, matrix, qubits)
        slow = apply_ref(state, n, matrix, qubits)
        assert np.abs(fast - slow).max() <= 1e-10


def test_circuit_append_validates_indices():
    circ = GateCircuit(2)
    with pytest.raises(IndexOutOfRangeError):
        circ.append(g.h(2))
    with pytest.raises(IndexOutOfRangeError):
        circ.append(g.measure(0, -1))


def test_circuit_blocks_gates_after_measurement():
    circ = GateCircuit(2)
    circ.append(g.h(0))
    circ.append(g.measure(0, 0))
    with pytest.raises(MeasuredQubitReuseError):
        circ.append(g.x(0))
    circ.append(g.x(1))  # untouched qubit is still fair game

    relaxed = GateCircuit(2, allow_mid_measure=True)
    relaxed.append(g.measure(0, 0))
    relaxed.append(g.x(0))


def test_classical_register_grows_with_measurements():
    circ = GateCircuit(3)
    assert circ.classical_bits == 0
    circ.append(g.measure(1, 4))
    assert circ.classical_bits == 5


def test_gate_counts_and_depth():
    circ = GateCircuit(3, [g.h(0), g.cnot(0, 1), g.cnot(1, 2),
                           g.toffoli(0, 1, 2), g.measure(2, 0)])
    counts = gate_counts(circ)
    assert counts.total == 5
    assert counts.one_qubit == 1
    assert counts.two_qubit == 2
    assert counts.three_qubit == 1
    assert counts.measurements == 1
    assert counts.entangling == 3
    # h -> cnot01 -> cnot12 -> toffoli -> measure chains on qubit 2
    assert depth(circ) == 5
    assert depth(GateCircuit(4)) == 0


def test_dagger_reverses_any_unitary_circuit():
    rng = np.random.default_rng(17)
    kinds = ["h", "x", "y", "z", "s", "sdg", "t", "tdg", "rx", "ry", "rz",
             "phase", "cnot", "cz", "swap", "cphase", "toffoli", "cu"]
    for _ in range(15):
        n = int(rng.integers(3, 6))
        circ = GateCircuit(n)
        for _ in range(12):
            kind = kinds[rng.integers(len(kinds))]
            qs = rng.choice(n, size=3, replace=False).tolist()
            theta = float(rng.uniform(-math.pi, math.pi))
            if kind in ("rx", "ry", "rz", "phase"):
                circ.append(getattr(g, kind)(theta, qs[0]))
            elif kind in ("cnot", "cz", "swap"):
                circ.append(getattr(g, kind)(qs[0], qs[1]))
            elif kind == "cphase":
                circ.append(g.cphase(theta, qs[0], qs[1]))
            elif kind == "toffoli" and n >= 3:
                circ.append(g.toffoli(*qs))
            elif kind == "cu":
                circ.append(g.controlled_u(rz_ref(theta), qs[0], [qs[1]],
                                           power=int(rng.integers(1, 4))))
            else:
                circ.append(getattr(g, kind)(qs[0]))
        inverse = dagger(circ)
        prod = unitary_of(inverse) @ unitary_of(circ)
        assert np.abs(prod - np.eye(2 ** n)).max() <= 1e-9


def test_dagger_is_an_involution_for_plain_gates():
    circ = GateCircuit(2, [g.h(0), g.s(1), g.t(0), g.cphase(0.3, 0, 1),
                           g.rx(1.1, 1)])
    assert dagger(dagger(circ)) == circ


def test_dagger_rejects_measurement():
    circ = GateCircuit(1, [g.measure(0, 0)])
    with pytest.raises(NonReversibleError):
        dagger(circ)
    with pytest.raises(NonReversibleError):
        unitary_of(circ)


def test_unitary_of_matches_reference_composition():
    circ = GateCircuit(3, [g.h(0), g.cnot(0, 1), g.toffoli(0, 1, 2),
                           g.rz(0.4, 2), g.swap(0, 2)])
    want = np.eye(8, dtype=complex)
    for gate in circ.ops:
        want = op_on(3, gate_matrix(gate), gate.qubits) @ want
    assert np.abs(unitary_of(circ) - want).max() <= 1e-10


def test_unitary_width_cap():
    with pytest.raises(TooWideError):
        unitary_of(GateCircuit(11))


def test_circuit_equality_ignores_measured_tracking():
    a = GateCircuit(2, [g.h(0), g.measure(0, 0)])
    b = GateCircuit(2)
    b.append(g.h(0))
    b.append(g.measure(0, 0))
    assert a == b
    assert a != GateCircuit(2, [g.h(0)])
