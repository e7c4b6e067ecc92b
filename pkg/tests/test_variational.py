"""Parameter-shift gradients and the classical minimization loop."""

import math

import numpy as np
import pytest

from qsaf.errors import BadParamsError
from qsaf.lowering import realize_ansatz
from qsaf.simulate import (NonDecreasingEnergyWarning, OptimizerConfig,
                           PauliObservable, expectation,
                           parameter_shift_gradient, run,
                           variational_minimize)


def _energy(pid, structure, thetas, obs):
    low = realize_ansatz(pid, structure, thetas)
    return expectation(run(low.circuit).state, obs)


@pytest.mark.parametrize("pid,structure,width", [
    (25, {"n": 2, "layers": 1}, 2),
    (26, {"n": 3, "edges": [[0, 1], [1, 2]]}, 3),
    (27, {"n": 4}, 4),
    (28, {"n": 2, "layers": 2}, 2),
    (29, {"n": 3, "steps": 1}, 3),
])
def test_shift_rule_matches_central_differences(pid, structure, width):
    obs = PauliObservable.parse("Z0*Z1 + 0.3*X0 - 0.4*Y1", width)
    rng = np.random.default_rng(pid)
    from qsaf.lowering import ansatz_theta_count
    count = ansatz_theta_count(pid, structure)
    thetas = rng.uniform(-1.5, 1.5, size=count)
    grad = parameter_shift_gradient(pid, thetas, obs, structure=structure)
    assert len(grad) == count
    eps = 1e-5
    for i in range(count):
        plus, minus = thetas.copy(), thetas.copy()
        plus[i] += eps
        minus[i] -= eps
        central = (_energy(pid, structure, plus, obs)
                   - _energy(pid, structure, minus, obs)) / (2 * eps)
        assert grad[i] == pytest.approx(central, abs=1e-7)


def test_gradient_of_a_single_rotation_is_analytic():
    # <Z> of ry(theta)|0> is cos(theta); hardware-efficient n=2 L=1
    # puts ry(theta0) on qubit 0 first
    obs = PauliObservable.parse("Z0", 2)
    structure = {"n": 2, "layers": 1}
    thetas = [0.8, 0.0, 0.0, 0.0]
    grad = parameter_shift_gradient(25, thetas, obs, structure=structure)
    assert grad[0] == pytest.approx(-math.sin(0.8), abs=1e-10)
    assert grad[1] == pytest.approx(0.0, abs=1e-10)


def test_minimize_reaches_the_single_qubit_ground_state():
    obs = PauliObservable.parse("Z0 + Z1", 2)
    result = variational_minimize(25, [0.3, 0.1, 0.2, 0.1], obs,
                                  structure={"n": 2, "layers": 1})
    assert result.best_energy == pytest.approx(-2.0, abs=1e-5)
    assert result.converged
    assert result.iterations <= 500
    assert result.trace[0] >= result.trace[-1]
    assert not result.warnings


def test_minimize_trace_is_monotone_nonincreasing():
    obs = PauliObservable.parse("Z0*Z1 + 0.5*X0", 2)
    result = variational_minimize(25, [0.1, 0.2, 0.3, 0.4, 0.5, 0.6,
                                       0.7, 0.8], obs,
                                  structure={"n": 2, "layers": 2})
    assert all(b <= a + 1e-12 for a, b in zip(result.trace,
                                              result.trace[1:]))
    assert result.best_energy == min(result.trace)


def test_minimize_respects_iteration_budget():
    obs = PauliObservable.parse("Z0*Z1 + 0.5*X0", 2)
    config = OptimizerConfig(max_iters=3)
    result = variational_minimize(25, [0.1] * 8, obs, config=config,
                                  structure={"n": 2, "layers": 2})
    assert result.iterations <= 3
    assert not result.converged


def test_minimize_warns_when_stuck_at_a_minimum():
    # start exactly at the ground state of Z0: theta = pi
    obs = PauliObservable.parse("Z0", 2)
    config = OptimizerConfig(step=0.5, max_iters=50, tol=0.0)
    with pytest.warns(NonDecreasingEnergyWarning):
        result = variational_minimize(25, [math.pi, 0.0, 0.0, 0.0], obs,
                                      config=config,
                                      structure={"n": 2, "layers": 1})
    assert result.warnings
    assert result.best_energy == pytest.approx(-1.0, abs=1e-9)


def test_minimize_propagates_bad_structure():
    obs = PauliObservable.parse("Z0", 2)
    with pytest.raises(BadParamsError):
        variational_minimize(25, [0.1] * 3, obs,
                             structure={"n": 2, "layers": 1})


def test_qaoa_flat_layout_is_gammas_then_betas():
    structure = {"n": 2, "edges": [[0, 1]]}
    low = realize_ansatz(26, structure, [0.7, 0.2])
    rz_ops = [op for op in low.circuit.ops if op.kind.value == "rz"]
    rx_ops = [op for op in low.circuit.ops if op.kind.value == "rx"]
    assert rz_ops[0].theta == pytest.approx(1.4)  # 2 * gamma
    assert all(op.theta == pytest.approx(0.4) for op in rx_ops)  # 2 * beta
