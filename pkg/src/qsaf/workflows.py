"""Executing the run directives of a parsed manifest.

``simulate`` flattens the graph, evolves the statevector, and samples
counts; measured circuits report counts over the classical register.
``minimize`` locates the optimizer component and the ansatz it drives,
then runs the variational loop against the optimizer's observable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .composition import ArchitectureGraph
from .errors import QsafError, ValidationFailedError
from .gates import GateCircuit, GateKind
from .lowering import ANSATZ_IDS, realize_ansatz
from .manifest import Manifest, RunDirective
from .simulate import (OptimizerConfig, PauliObservable, VariationalResult,
                       run, sample, variational_minimize)


@dataclass(frozen=True)
class SimulationOutcome:
    """Sampled counts from one simulate directive."""

    counts: dict
    shots: int
    register_width: int
    measured: bool


@dataclass(frozen=True)
class MinimizationOutcome:
    """Result of one minimize directive."""

    ansatz_instance: str
    observable: str
    result: VariationalResult


def execute(manifest: Manifest, seed=None) -> list:
    """Run every directive in order; outcomes come back in the same
    order. ``seed`` overrides any seed options in the manifest."""
    return [execute_directive(manifest, d, seed)
            for d in manifest.directives]


def execute_directive(manifest: Manifest, directive: RunDirective,
                      seed=None):
    if directive.verb == "simulate":
        return _run_simulate(manifest.graph, directive.options, seed)
    if directive.verb == "minimize":
        return _run_minimize(manifest.graph, directive.options, seed)
    raise QsafError(f"unknown run verb {directive.verb!r}")


def simulate_graph(graph: ArchitectureGraph, shots: int = 512,
                   seed=None) -> SimulationOutcome:
    """Flatten and sample a graph without needing a directive."""
    return _run_simulate(graph, {"shots": shots}, seed)


def _run_simulate(graph: ArchitectureGraph, options: dict, seed):
    shots = int(options.get("shots", 512))
    if seed is None:
        seed = options.get("seed")
    circuit = graph.flatten()
    unitary_ops = []
    measured = []
    for gate in circuit.ops:
        if gate.kind is GateKind.MEASURE:
            measured.append((gate.qubits[0], gate.cbit))
        else:
            unitary_ops.append(gate)
    state = run(GateCircuit(circuit.width, unitary_ops)).state
    counts = sample(state, shots, seed)
    if not measured:
        return SimulationOutcome(counts, shots, circuit.width, False)
    # keep only the measured qubits, highest classical bit leftmost
    order = [q for q, _ in sorted(measured, key=lambda qc: -qc[1])]
    projected = {}
    for key, hits in counts.items():
        bits = "".join(key[circuit.width - 1 - q] for q in order)
        projected[bits] = projected.get(bits, 0) + hits
    return SimulationOutcome(projected, shots, len(measured), True)


_CONFIG_KEYS = ("step", "max_iters", "tol", "min_step")


def _run_minimize(graph: ArchitectureGraph, options: dict, seed):
    del seed  # the descent is deterministic
    blocking = [d for d in graph.validate() if d.blocking]
    if blocking:
        raise ValidationFailedError(blocking)

    optimizers = [inst for inst in graph.components.values()
                  if inst.is_optimizer]
    if len(optimizers) != 1:
        raise QsafError("minimize needs exactly one Optimizer component, "
                        f"found {len(optimizers)}")
    opt = optimizers[0]
    ansatz = _driven_ansatz(graph, opt.instance_id)
    pid = ansatz.primitive_id
    structure = dict(ansatz.params)
    if pid == 26:
        gammas = structure.get("gammas")
        betas = structure.get("betas")
        if not gammas or betas is None:
            raise QsafError(f"{ansatz.instance_id} needs initial 'gammas' "
                            f"and 'betas'")
        init = [float(v) for v in list(gammas) + list(betas)]
    else:
        init = structure.get("thetas")
        if not init:
            raise QsafError(f"{ansatz.instance_id} needs initial 'thetas'")
        init = [float(v) for v in init]

    observable_text = opt.params.get("observable")
    if not isinstance(observable_text, str) or not observable_text:
        raise QsafError(f"{opt.instance_id} needs an 'observable' string")
    width = realize_ansatz(pid, structure, init).spec.width
    observable = PauliObservable.parse(observable_text, width)

    cfg_values = {k: opt.params[k] for k in _CONFIG_KEYS
                  if k in opt.params}
    cfg_values.update({k: options[k] for k in _CONFIG_KEYS if k in options})
    for key in options:
        if key not in _CONFIG_KEYS and key != "seed":
            raise QsafError(f"unknown minimize option {key!r}")
    if "max_iters" in cfg_values:
        cfg_values["max_iters"] = int(cfg_values["max_iters"])
    config = OptimizerConfig(**cfg_values)

    result = variational_minimize(pid, init, observable, config, structure)
    return MinimizationOutcome(ansatz.instance_id, observable_text, result)


def _driven_ansatz(graph: ArchitectureGraph, optimizer_id: str):
    driven = [w.dst_instance for w in graph.wires
              if w.src_instance == optimizer_id and w.dst_port == "params"]
    if len(driven) == 1:
        inst = graph.components[driven[0]]
    else:
        variational = [
            inst for inst in graph.components.values()
            if not inst.is_optimizer and inst.primitive_id in ANSATZ_IDS]
        if len(variational) != 1:
            raise QsafError(
                "cannot decide which component the optimizer drives; wire "
                "its out port into exactly one params port")
        inst = variational[0]
    if inst.is_optimizer or inst.primitive_id not in ANSATZ_IDS:
        raise QsafError(
            f"{inst.instance_id} is not a variational component")
    return inst


# rendering for reports and the command line


def render_simulation(outcome: SimulationOutcome) -> str:
    lines = ["[simulate]"]
    lines.append(f"shots = {outcome.shots}")
    register = "classical" if outcome.measured else "statevector"
    lines.append(f"register = {register} ({outcome.register_width} bits)")
    for key in sorted(outcome.counts):
        lines.append(f"counts[{key}] = {outcome.counts[key]}")
    return "\n".join(lines)


def render_minimization(outcome: MinimizationOutcome) -> str:
    result = outcome.result
    lines = ["[minimize]"]
    lines.append(f"ansatz = {outcome.ansatz_instance}")
    lines.append(f"observable = {outcome.observable}")
    lines.append(f"best_energy = {result.best_energy:.12f}")
    lines.append("best_params = "
                 + ", ".join(f"{v:.6f}" for v in result.best_params))
    lines.append(f"iterations = {result.iterations}")
    lines.append(f"converged = {str(result.converged).lower()}")
    for note in result.warnings:
        lines.append(f"warning = {note}")
    return "\n".join(lines)
