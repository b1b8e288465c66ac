"""Randomized checks of the invariants of every module, aggregated into one verdict"""

import json
import logging
import tempfile
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, FrozenSet, List, NamedTuple, Optional

import numpy as np
from numpy.polynomial import polynomial

from ..filters import (
    PresetName,
    FilterPreset,
    chebyshev_apply,
    estimate_lambda_max,
    fit_chebyshev,
    joint_filter,
    temporal_filter_apply,
    temporal_filter_from_preset,
    TemporalFilter,
)
from ..graph import (
    DynamicGraph,
    build_joint_laplacian,
    build_laplacian,
    build_time_ring_laplacian,
    dirichlet_s2,
    vectorize,
)
from ..spectral import (
    ad_basis,
    align_bases,
    dft_basis,
    eft_forward,
    eft_inverse,
    eft_joint_frequencies,
    eft_matrix,
    gft_basis,
    gft_bases,
    pseudospectrum_bound,
    pseudospectrum_residuals,
    transform_stability,
)
from ..synth import SynthConfig, gen_evolving_graph, gen_signal
from ..utils.io import (
    parse_graph_json,
    parse_signal_csv,
    write_graph_json,
    write_signal_csv,
)
from .compaction import run_compaction

DEFAULT_INSTANCES = 20


@dataclass
class Operations:
    """Library operations exercised by the suite, replaceable to test its sensitivity"""

    build_laplacian: Callable = build_laplacian
    build_joint_laplacian: Callable = build_joint_laplacian
    dirichlet_s2: Callable = dirichlet_s2
    gft_bases: Callable = gft_bases
    dft_basis: Callable = dft_basis
    eft_forward: Callable = eft_forward
    eft_inverse: Callable = eft_inverse
    eft_matrix: Callable = eft_matrix
    ad_basis: Callable = ad_basis
    align_bases: Callable = align_bases
    pseudospectrum_residuals: Callable = pseudospectrum_residuals
    chebyshev_apply: Callable = chebyshev_apply
    joint_filter: Callable = joint_filter


@dataclass
class Instance:
    graph: DynamicGraph
    signal: np.ndarray

    def dump(self) -> Dict[str, Any]:
        return {
            "num_nodes": self.graph.num_nodes,
            "num_timesteps": self.graph.num_timesteps,
            "edge_lists": self.graph.edge_lists(),
            "signal": np.asarray(self.signal).tolist(),
        }


@dataclass
class InvariantResult:
    name: str
    module: str
    passed: bool
    instances: int
    worst: Optional[float]
    tolerance: float
    counterexample: Optional[Dict[str, Any]] = field(default=None, repr=False)


@dataclass
class PropertySuiteResult:
    seed: int
    results: List[InvariantResult]

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    @property
    def pass_set(self) -> FrozenSet[str]:
        return frozenset(result.name for result in self.results if result.passed)

    def verdict(self) -> Dict[str, bool]:
        return {result.name: result.passed for result in self.results}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "seed": self.seed,
            "passed": self.passed,
            "invariants": self.verdict(),
            "failures": [asdict(result) for result in self.results if not result.passed],
        }


def _random_instance(rng: np.random.Generator, max_nodes: int = 12, max_timesteps: int = 8) -> Instance:
    num_nodes = int(rng.integers(2, max_nodes + 1))
    num_timesteps = int(rng.integers(1, max_timesteps + 1))
    edge_prob = rng.uniform(0.2, 0.8)
    snapshots = []
    for _ in range(num_timesteps):
        upper = np.triu(
            rng.uniform(0.1, 1.0, (num_nodes, num_nodes)) * (rng.random((num_nodes, num_nodes)) < edge_prob),
            k=1,
        )
        snapshots.append(upper + upper.T)
    return Instance(DynamicGraph(snapshots), rng.standard_normal((num_nodes, num_timesteps)))


def _static_instance(rng: np.random.Generator) -> Instance:
    instance = _random_instance(rng, max_nodes=8, max_timesteps=6)
    snapshot = instance.graph[0]
    graph = DynamicGraph([snapshot] * instance.graph.num_timesteps)
    return Instance(graph, instance.signal)


def _small_instance(rng: np.random.Generator) -> Instance:
    return _random_instance(rng, max_nodes=8, max_timesteps=6)


def _perturbed_instance(rng: np.random.Generator) -> Instance:
    cfg = SynthConfig(
        n=int(rng.integers(3, 9)),
        t=int(rng.integers(2, 7)),
        perturb_scale=0.01,
        edge_prob=0.9,
        seed=int(rng.integers(2 ** 31)),
    )
    dg = gen_evolving_graph(cfg)
    return Instance(dg, rng.standard_normal(dg.shape))


def _relative(difference: Any, reference: Any) -> float:
    return float(np.linalg.norm(difference) / max(np.linalg.norm(reference), 1e-300))


# graph


def _laplacian_self_loops(instance: Instance, ops: Operations, rng: np.random.Generator) -> float:
    adjacency = instance.graph[0].toarray()
    looped = adjacency + np.diag(rng.uniform(0.0, 2.0, adjacency.shape[0]))
    plain = ops.build_laplacian(adjacency).toarray()
    return float(np.max(np.abs(ops.build_laplacian(looped).toarray() - plain)))


def _joint_psd(instance: Instance, ops: Operations, rng: np.random.Generator) -> float:
    joint = ops.build_joint_laplacian(instance.graph).matrix.toarray()
    return float(-np.linalg.eigvalsh(joint)[0])


def _joint_static(instance: Instance, ops: Operations, rng: np.random.Generator) -> float:
    dg = instance.graph
    ring = build_time_ring_laplacian(dg.num_timesteps).toarray()
    snapshot = build_laplacian(dg[0]).toarray()
    expected = np.kron(ring, np.eye(dg.num_nodes)) + np.kron(np.eye(dg.num_timesteps), snapshot)
    return float(np.max(np.abs(ops.build_joint_laplacian(dg).matrix.toarray() - expected)))


def _dirichlet_form(instance: Instance, ops: Operations, rng: np.random.Generator) -> float:
    dg, signal = instance.graph, instance.signal
    vector = vectorize(signal)
    quadratic = float(vector @ (ops.build_joint_laplacian(dg).matrix @ vector))
    s2 = ops.dirichlet_s2(dg, signal)
    return abs(s2 - quadratic) / (1.0 + abs(s2))


# spectral


def _gft_orthonormal(instance: Instance, ops: Operations, rng: np.random.Generator) -> float:
    identity = np.eye(instance.graph.num_nodes)
    return max(
        float(np.max(np.abs(basis.vectors @ basis.vectors.T - identity)))
        for basis in ops.gft_bases(instance.graph)
    )


def _dft_unitary(instance: Instance, ops: Operations, rng: np.random.Generator) -> float:
    vectors = ops.dft_basis(instance.graph.num_timesteps).vectors
    return float(np.max(np.abs(vectors @ vectors.conj().T - np.eye(len(vectors)))))


def _round_trip(instance: Instance, ops: Operations, rng: np.random.Generator) -> float:
    dg, signal = instance.graph, instance.signal
    coefficients = ops.eft_forward(dg, signal)
    return _relative(ops.eft_inverse(dg, coefficients) - signal, signal)


def _parseval(instance: Instance, ops: Operations, rng: np.random.Generator) -> float:
    coefficients = ops.eft_forward(instance.graph, instance.signal).values
    norm = np.linalg.norm(instance.signal)
    return abs(np.linalg.norm(coefficients) - norm) / norm


def _matrix_unitary(instance: Instance, ops: Operations, rng: np.random.Generator) -> float:
    matrix = ops.eft_matrix(instance.graph)
    return float(np.max(np.abs(matrix @ matrix.conj().T - np.eye(len(matrix)))))


def _matrix_consistency(instance: Instance, ops: Operations, rng: np.random.Generator) -> float:
    dg, signal = instance.graph, instance.signal
    expected = vectorize(ops.eft_forward(dg, signal).values)
    return _relative(ops.eft_matrix(dg) @ vectorize(signal) - expected, signal)


def _order_invariance(instance: Instance, ops: Operations, rng: np.random.Generator) -> float:
    dg, signal = instance.graph, instance.signal
    vertex_first = ops.eft_forward(dg, signal, order="vertex_first").values
    time_first = ops.eft_forward(dg, signal, order="time_first").values
    return float(np.max(np.abs(vertex_first - time_first)))


def _static_spectrum(instance: Instance, ops: Operations, rng: np.random.Generator) -> float:
    dg = instance.graph
    joint = ops.build_joint_laplacian(dg)
    exact = ops.ad_basis(joint)
    bases = ops.gft_bases(dg)
    frequencies = eft_joint_frequencies(dg, real=True, bases=bases)
    spectrum_gap = float(np.max(np.abs(np.sort(exact.eigenvalues) - np.sort(frequencies))))
    rows = ops.eft_matrix(dg, real=True, bases=bases)
    residuals = rows @ joint.matrix.toarray() - frequencies[:, None] * rows
    return max(spectrum_gap, float(np.max(np.linalg.norm(residuals, axis=1))))


def _stability(instance: Instance, ops: Operations, rng: np.random.Generator) -> float:
    matrix = ops.eft_matrix(instance.graph)
    perturbation = 1e-3 * rng.standard_normal(matrix.shape)
    vector = rng.standard_normal(len(matrix))
    vector /= np.linalg.norm(vector)
    change, bound = transform_stability(matrix, perturbation, vector)
    return change - bound


def _alignment_recovery(instance: Instance, ops: Operations, rng: np.random.Generator) -> float:
    exact = ops.ad_basis(ops.build_joint_laplacian(instance.graph))
    permutation = rng.permutation(len(exact.vectors))
    signs = rng.choice([-1.0, 1.0], size=len(exact.vectors))
    shuffled = signs[:, None] * exact.vectors[permutation]
    alignment = ops.align_bases(
        exact.vectors, shuffled, exact.eigenvalues, exact.eigenvalues[permutation]
    )
    return alignment.difference


def _pseudospectrum(instance: Instance, ops: Operations, rng: np.random.Generator) -> float:
    residuals = ops.pseudospectrum_residuals(instance.graph)
    return float(np.max(residuals) - pseudospectrum_bound(instance.graph))


# filters


def _chebyshev_exact(instance: Instance, ops: Operations, rng: np.random.Generator) -> float:
    laplacian = build_laplacian(instance.graph[0])
    lambda_max = estimate_lambda_max(laplacian)
    degree = int(rng.integers(0, 6))
    poly = rng.standard_normal(degree + 1)
    fitted = fit_chebyshev(lambda x: polynomial.polyval(x, poly), 5, lambda_max)
    basis = gft_basis(laplacian)
    exact = basis.vectors.T @ (polynomial.polyval(basis.eigenvalues, poly)[:, None] * (basis.vectors @ instance.signal))
    approximation = ops.chebyshev_apply(laplacian, fitted, instance.signal)
    return float(np.linalg.norm(approximation - exact) / (1.0 + np.linalg.norm(exact)))


def _heat_filters(dg: DynamicGraph):
    filters = []
    for graph in dg.snapshots:
        lambda_max = estimate_lambda_max(build_laplacian(graph))
        filters.append(fit_chebyshev(lambda x, lm=lambda_max: np.exp(-2.0 * x / lm), 16, lambda_max))
    return filters


def _low_pass(num_timesteps: int) -> TemporalFilter:
    return temporal_filter_from_preset(FilterPreset(PresetName.LOW_PASS, (0.5,)), num_timesteps)


def _filter_linearity(instance: Instance, ops: Operations, rng: np.random.Generator) -> float:
    dg, first = instance.graph, instance.signal
    second = rng.standard_normal(first.shape)
    a, b = rng.standard_normal(2)
    filters, temporal = _heat_filters(dg), _low_pass(dg.num_timesteps)
    combined = ops.joint_filter(dg, a * first + b * second, filters, temporal)
    separate = a * ops.joint_filter(dg, first, filters, temporal) + b * ops.joint_filter(
        dg, second, filters, temporal
    )
    return float(np.linalg.norm(combined - separate) / (1.0 + np.linalg.norm(separate)))


def _temporal_real(instance: Instance, ops: Operations, rng: np.random.Generator) -> float:
    num_timesteps = instance.graph.num_timesteps
    response = np.fft.fft(rng.standard_normal(num_timesteps))
    filtered = temporal_filter_apply(TemporalFilter(response), instance.signal.T)
    return float(np.max(np.abs(np.imag(filtered)))) if np.iscomplexobj(filtered) else 0.0


def _filter_energy(instance: Instance, ops: Operations, rng: np.random.Generator) -> float:
    dg, signal = instance.graph, instance.signal
    filtered = ops.joint_filter(dg, signal, _heat_filters(dg), _low_pass(dg.num_timesteps))
    return float(np.linalg.norm(filtered) - np.linalg.norm(signal))


def _filter_order_swap(instance: Instance, ops: Operations, rng: np.random.Generator) -> float:
    dg, signal = instance.graph, instance.signal
    filters, temporal = _heat_filters(dg), _low_pass(dg.num_timesteps)
    vertex_first = ops.joint_filter(dg, signal, filters, temporal, order="vertex_first")
    time_first = ops.joint_filter(dg, signal, filters, temporal, order="time_first")
    return float(np.max(np.abs(vertex_first - time_first)))


# synth, io and experiments


def _synth_config(rng: np.random.Generator) -> SynthConfig:
    return SynthConfig(
        n=int(rng.integers(3, 9)), t=int(rng.integers(2, 9)), seed=int(rng.integers(2 ** 31))
    )


def _synth_determinism(instance: Instance, ops: Operations, rng: np.random.Generator) -> float:
    cfg = _synth_config(rng)
    first, second = gen_evolving_graph(cfg), gen_evolving_graph(cfg)
    same_signals = all(
        np.array_equal(a, b) for a, b in zip(gen_signal(first, cfg), gen_signal(second, cfg))
    )
    return 0.0 if first == second and same_signals else 1.0


def _synth_validity(instance: Instance, ops: Operations, rng: np.random.Generator) -> float:
    dg = gen_evolving_graph(_synth_config(rng))
    worst = 0.0
    for graph in dg.snapshots:
        dense = graph.toarray()
        worst = max(worst, float(np.max(np.abs(dense - dense.T))), float(-dense.min()))
    return worst


def _config_round_trip(instance: Instance, ops: Operations, rng: np.random.Generator) -> float:
    cfg = _synth_config(rng).with_updates(noise_std=float(rng.uniform(0.0, 1.0)))
    return 0.0 if SynthConfig.from_dict(json.loads(json.dumps(cfg.to_dict()))) == cfg else 1.0


def _file_round_trip(instance: Instance, ops: Operations, rng: np.random.Generator) -> float:
    with tempfile.TemporaryDirectory() as folder:
        write_graph_json(Path(folder) / "graph.json", instance.graph)
        write_signal_csv(Path(folder) / "signal.csv", instance.signal)
        graph = parse_graph_json(Path(folder) / "graph.json")
        signal = parse_signal_csv(Path(folder) / "signal.csv")
    if graph != instance.graph or signal.shape != instance.signal.shape:
        return 1.0
    return float(np.max(np.abs(signal - instance.signal)))


def _compaction_monotone(instance: Instance, ops: Operations, rng: np.random.Generator) -> float:
    reports = run_compaction(instance.graph, instance.signal, percentiles=range(0, 101, 10))
    worst = 0.0
    for method in {report.method for report in reports}:
        errors = np.array([r.error for r in reports if r.method == method])
        worst = max(worst, errors[0], abs(errors[-1] - 1.0), float(np.max(-np.diff(errors))))
    return worst


class Invariant(NamedTuple):
    name: str
    module: str
    measure: Callable[[Instance, Operations, np.random.Generator], float]
    tolerance: float
    instance: Callable[[np.random.Generator], Instance] = _random_instance


INVARIANTS = (
    Invariant("laplacian_self_loop_invariance", "graph", _laplacian_self_loops, 1e-12),
    Invariant("joint_laplacian_psd", "graph", _joint_psd, 1e-8),
    Invariant("joint_laplacian_static_kronecker", "graph", _joint_static, 0.0, _static_instance),
    Invariant("dirichlet_quadratic_form", "graph", _dirichlet_form, 1e-8),
    Invariant("gft_orthonormal", "spectral", _gft_orthonormal, 1e-10),
    Invariant("dft_unitary", "spectral", _dft_unitary, 1e-10),
    Invariant("eft_round_trip", "spectral", _round_trip, 1e-9),
    Invariant("eft_parseval", "spectral", _parseval, 1e-8),
    Invariant("eft_matrix_unitary", "spectral", _matrix_unitary, 1e-8, _small_instance),
    Invariant("eft_matrix_matches_forward", "spectral", _matrix_consistency, 1e-9, _small_instance),
    Invariant("eft_order_invariance", "spectral", _order_invariance, 1e-10),
    Invariant("static_spectrum_match", "spectral", _static_spectrum, 1e-8, _static_instance),
    Invariant("transform_stability", "spectral", _stability, 1e-12, _small_instance),
    Invariant("alignment_recovers_permutation", "spectral", _alignment_recovery, 1e-8, _small_instance),
    Invariant("pseudospectrum_residual_bound", "spectral", _pseudospectrum, 1e-8, _perturbed_instance),
    Invariant("chebyshev_polynomial_exact", "filters", _chebyshev_exact, 1e-8),
    Invariant("joint_filter_linearity", "filters", _filter_linearity, 1e-9),
    Invariant("temporal_real_output", "filters", _temporal_real, 1e-10),
    Invariant("joint_filter_energy", "filters", _filter_energy, 1e-8),
    Invariant("joint_filter_order_swap", "filters", _filter_order_swap, 1e-10),
    Invariant("synth_determinism", "synth", _synth_determinism, 0.0),
    Invariant("synth_graph_validity", "synth", _synth_validity, 0.0),
    Invariant("synth_config_round_trip", "synth", _config_round_trip, 0.0),
    Invariant("file_format_round_trip", "io", _file_round_trip, 0.0, _small_instance),
    Invariant("compaction_monotone", "experiments", _compaction_monotone, 1e-9, _small_instance),
)


def _check(
    index: int, invariant: Invariant, seed: int, n_instances: int, ops: Operations
) -> InvariantResult:
    worst = 0.0
    for i in range(n_instances):
        rng = np.random.default_rng([seed, index, i])
        instance = invariant.instance(rng)
        try:
            value = float(invariant.measure(instance, ops, rng))
            error = None
        except Exception as exception:  # failures are reported, not raised
            value, error = float("nan"), repr(exception)
        if not value <= invariant.tolerance:
            logging.warning("Invariant %s failed on instance %d: %s", invariant.name, i, error or value)
            counterexample = {"instance": i, "value": None if np.isnan(value) else value}
            if error is not None:
                counterexample["error"] = error
            counterexample.update(instance.dump())
            return InvariantResult(
                invariant.name,
                invariant.module,
                passed=False,
                instances=i + 1,
                worst=counterexample["value"],
                tolerance=invariant.tolerance,
                counterexample=counterexample,
            )
        worst = max(worst, value)
    return InvariantResult(
        invariant.name, invariant.module, True, n_instances, worst, invariant.tolerance
    )


def run_property_suite(
    seed: int = 0,
    n_instances: int = DEFAULT_INSTANCES,
    operations: Optional[Operations] = None,
) -> PropertySuiteResult:
    """Check every invariant on randomized instances

    Args:
        seed (int, optional): Seed of the instance generator. Defaults to 0.
        n_instances (int, optional): Instances per invariant. Defaults to 20.
        operations (Optional[Operations], optional): Operations under test. Defaults to
            the library implementations.

    Returns:
        PropertySuiteResult: Pass/fail per invariant with the first counterexample of
            every failure. Exceptions raised by an operation count as failures.
    """
    ops = Operations() if operations is None else operations
    results = [
        _check(index, invariant, seed, n_instances, ops)
        for index, invariant in enumerate(INVARIANTS)
    ]
    logging.info(
        "Property suite: %d of %d invariants passed",
        sum(result.passed for result in results),
        len(results),
    )
    return PropertySuiteResult(seed=seed, results=results)
