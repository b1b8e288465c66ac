"""Generators of synthetic evolving graphs, time-vertex signals and dynamic meshes"""

import logging
from dataclasses import fields
from typing import Optional, Tuple

import h5py
import networkx as nx
import numpy as np
import scipy.sparse as sp

from ..graph import DynamicGraph
from ..pipeline import PipelineStep
from ..spectral import gft_bases
from ..utils.errors import DomainError, ShapeError
from .config import SynthConfig

SIGNAL_STREAM = 1
MESH_CHANNELS = 3


def _draw_seed(rng: np.random.Generator) -> int:
    return int(rng.integers(np.iinfo(np.uint32).max))


def gen_evolving_graph(cfg: SynthConfig) -> DynamicGraph:
    """Random skeleton with |N(0, 1)| weights evolved by Gaussian weight perturbations

    Snapshot t + 1 adds perturb_scale * N(0, 1) to every skeleton edge of snapshot t.
    The normal draws do not depend on perturb_scale, so graphs generated with the same
    seed differ only by the scale of their perturbations.

    Args:
        cfg (SynthConfig): Generator config.

    Raises:
        DomainError: When a weight becomes negative and clamp_negative is off.

    Returns:
        DynamicGraph: cfg.t snapshots over cfg.n nodes.
    """
    rng = np.random.default_rng(cfg.seed)
    skeleton = nx.erdos_renyi_graph(cfg.n, cfg.edge_prob, seed=_draw_seed(rng))
    rows, cols = np.triu_indices(cfg.n, k=1)
    num_pairs = len(rows)
    pair_index = {(int(u), int(v)): i for i, (u, v) in enumerate(zip(rows, cols))}
    present = np.zeros(num_pairs, dtype=bool)
    for u, v in skeleton.edges():
        present[pair_index[(min(u, v), max(u, v))]] = True
    weights = np.where(present, np.abs(rng.standard_normal(num_pairs)), 0.0)

    snapshots = [_symmetric(weights, rows, cols, cfg.n)]
    for t in range(1, cfg.t):
        weights = weights + cfg.perturb_scale * rng.standard_normal(num_pairs) * present
        if cfg.struct_prob > 0:
            flips = rng.random(num_pairs) < cfg.struct_prob
            fresh = np.abs(rng.standard_normal(num_pairs))
            added = flips & ~present
            weights = np.where(flips & present, 0.0, weights)
            weights = np.where(added, fresh, weights)
            present = present ^ flips
        if np.any(weights < 0):
            if not cfg.clamp_negative:
                raise DomainError(
                    f"Perturbed edge weight became negative at timestep {t}; enable clamp_negative"
                )
            weights = np.maximum(weights, 0.0)
        snapshots.append(_symmetric(weights, rows, cols, cfg.n))
    logging.debug(
        "Generated evolving graph with %d skeleton edges over %d timesteps",
        skeleton.number_of_edges(),
        cfg.t,
    )
    return DynamicGraph(snapshots, num_nodes=cfg.n)


def _symmetric(weights: np.ndarray, rows: np.ndarray, cols: np.ndarray, num_nodes: int) -> sp.csr_matrix:
    upper = sp.coo_matrix((weights, (rows, cols)), shape=(num_nodes, num_nodes))
    return sp.csr_matrix(upper + upper.T)


def gen_signal(dg: DynamicGraph, cfg: SynthConfig) -> Tuple[np.ndarray, np.ndarray]:
    """Eigenvector mixture plus sinusoids, with additive Gaussian noise

    clean[i, t] = sum_k alpha_k v_k^t[i] + sum_f beta_f cos(omega_f t), where v_k^t is
    eigenvector k of snapshot t sign-aligned through time.

    Args:
        dg (DynamicGraph): Graph generated for cfg.
        cfg (SynthConfig): Generator config.

    Raises:
        ShapeError: When the graph is not cfg.n x cfg.t.
        DomainError: When an eigenvector index is not below N.

    Returns:
        Tuple[np.ndarray, np.ndarray]: Clean and noisy N x T signals.
    """
    if dg.shape != (cfg.n, cfg.t):
        raise ShapeError(f"Graph of shape {dg.shape} does not match config ({cfg.n}, {cfg.t})")
    rng = np.random.default_rng([cfg.seed, SIGNAL_STREAM])
    if cfg.eigvec_index is None:
        # the constant eigenvector is left to the sinusoids
        indices = rng.choice(
            np.arange(1, cfg.n), size=len(cfg.alpha), replace=len(cfg.alpha) > cfg.n - 1
        )
    else:
        indices = np.asarray(cfg.eigvec_index, dtype=int)
        if np.any(indices >= cfg.n):
            raise DomainError(f"Eigenvector index {indices.max()} out of range for N={cfg.n}")
    bases = gft_bases(dg, cfg.kind, continuity=True)
    clean = np.zeros(dg.shape)
    for alpha, index in zip(cfg.alpha, indices):
        clean += alpha * np.stack([basis.vectors[index] for basis in bases], axis=1)
    time = np.arange(cfg.t)
    for beta, omega in zip(cfg.beta, cfg.frequencies):
        clean += beta * np.cos(omega * time)[None, :]
    if cfg.noise_std > 0:
        noisy = clean + rng.normal(0.0, cfg.noise_std, size=clean.shape)
    else:
        noisy = clean.copy()
    return clean, noisy


def gen_dynamic_mesh(
    frames: int,
    resolution: int,
    seed: Optional[int] = None,
    phase: float = 0.0,
    wave_period: float = 8.0,
    wavelength: float = 1.0,
) -> Tuple[DynamicGraph, np.ndarray]:
    """Square grid mesh animated by a travelling sine wave on the height channel

    Vertex (i, j) sits at x = i / (m - 1), y = j / (m - 1) and
    z = sin(2 pi (x / wavelength - t / wave_period) + phase).

    Args:
        frames (int): Number of frames T.
        resolution (int): Grid side m.
        seed (Optional[int], optional): When set, the phase is drawn uniformly from
            [0, 2 pi) with this seed. Defaults to None.
        phase (float, optional): Wave phase when no seed is given. Defaults to 0.0.
        wave_period (float, optional): Period of the wave in frames. Defaults to 8.0.
        wavelength (float, optional): Wavelength along x. Defaults to 1.0.

    Raises:
        DomainError: When resolution < 2, frames < 1 or the wave parameters are not positive.

    Returns:
        Tuple[DynamicGraph, np.ndarray]: Static grid graph and the N x T x 3 positions.
    """
    if resolution < 2:
        raise DomainError(f"Mesh resolution must be >= 2, got {resolution}")
    if frames < 1:
        raise DomainError(f"Number of frames must be positive, got {frames}")
    if wave_period <= 0 or wavelength <= 0:
        raise DomainError("Wave period and wavelength must be positive")
    if seed is not None:
        phase = float(np.random.default_rng(seed).uniform(0.0, 2.0 * np.pi))
    grid = nx.grid_2d_graph(resolution, resolution)
    nodelist = sorted(grid.nodes())
    adjacency = sp.csr_matrix(nx.to_scipy_sparse_array(grid, nodelist=nodelist, dtype=float))
    dg = DynamicGraph([adjacency] * frames, num_nodes=len(nodelist))

    coords = np.asarray(nodelist, dtype=float) / (resolution - 1)
    x, y = coords[:, 0], coords[:, 1]
    time = np.arange(frames)
    signal = np.empty((len(nodelist), frames, MESH_CHANNELS))
    signal[:, :, 0] = x[:, None]
    signal[:, :, 1] = y[:, None]
    signal[:, :, 2] = np.sin(
        2.0 * np.pi * (x[:, None] / wavelength - time[None, :] / wave_period) + phase
    )
    return dg, signal


def _write_graph(output_file: h5py.File, dg: DynamicGraph) -> None:
    output_file.create_dataset(
        "adjacency",
        data=np.stack([graph.toarray() for graph in dg.snapshots]),
        compression="gzip",
        compression_opts=9,
    )


def _read_graph(input_file: h5py.File) -> DynamicGraph:
    return DynamicGraph(list(input_file["adjacency"][()]))


class EvolvingGraphGenerator(PipelineStep):
    """Pipeline step generating an evolving graph from a seed"""

    def __init__(self, **kwargs) -> None:
        """
        Args:
            Any SynthConfig field, the remaining keyword arguments go to PipelineStep.
        """
        logging.debug("*** Evolving Graph Generator ***")
        names = {f.name for f in fields(SynthConfig)}
        self.config = SynthConfig(**{k: kwargs.pop(k) for k in list(kwargs) if k in names})
        super().__init__(**kwargs)

    def __repr__(self) -> str:
        values = ",".join(f"{k}={v}" for k, v in sorted(self.config.to_dict().items()))
        return f"{self.__class__.__name__}({values})".replace(" ", "").replace("'", "")

    def _process(self, seed: int) -> DynamicGraph:  # type: ignore[override]
        return gen_evolving_graph(self.config.with_updates(seed=int(seed)))

    def _set_outputs(self, output_file: h5py.File, outputs: DynamicGraph) -> None:
        _write_graph(output_file, outputs)

    def _get_outputs(self, input_file: h5py.File) -> DynamicGraph:
        return _read_graph(input_file)


class SyntheticSignalGenerator(PipelineStep):
    """Pipeline step generating the clean and noisy signals on a graph"""

    def __init__(self, **kwargs) -> None:
        """
        Args:
            Any SynthConfig field except n and t, which are taken from the graph.
        """
        logging.debug("*** Synthetic Signal Generator ***")
        names = {f.name for f in fields(SynthConfig)} - {"n", "t"}
        self.signal_params = {k: kwargs.pop(k) for k in list(kwargs) if k in names}
        SynthConfig(**self.signal_params)
        super().__init__(**kwargs)

    def _process(  # type: ignore[override]
        self, graph: DynamicGraph, seed: int
    ) -> Tuple[np.ndarray, np.ndarray]:
        params = dict(self.signal_params, seed=int(seed))
        cfg = SynthConfig(n=graph.num_nodes, t=graph.num_timesteps, **params)
        return gen_signal(graph, cfg)


class DynamicMeshGenerator(PipelineStep):
    """Pipeline step generating a synthetic dynamic mesh"""

    def __init__(
        self,
        frames: int = 16,
        resolution: int = 8,
        wave_period: float = 8.0,
        wavelength: float = 1.0,
        **kwargs,
    ) -> None:
        logging.debug("*** Dynamic Mesh Generator ***")
        self.frames = frames
        self.resolution = resolution
        self.wave_period = wave_period
        self.wavelength = wavelength
        super().__init__(**kwargs)

    def _process(  # type: ignore[override]
        self, seed: int
    ) -> Tuple[DynamicGraph, np.ndarray]:
        return gen_dynamic_mesh(
            self.frames,
            self.resolution,
            seed=int(seed),
            wave_period=self.wave_period,
            wavelength=self.wavelength,
        )

    def _set_outputs(self, output_file: h5py.File, outputs: Tuple[DynamicGraph, np.ndarray]) -> None:
        dg, signal = outputs
        _write_graph(output_file, dg)
        output_file.create_dataset("signal", data=signal, compression="gzip", compression_opts=9)

    def _get_outputs(self, input_file: h5py.File) -> Tuple[DynamicGraph, np.ndarray]:
        return _read_graph(input_file), input_file["signal"][()]
