"""This module builds the graph, time ring and joint dynamic-graph Laplacians"""

import logging
from enum import Enum
from pathlib import Path
from typing import Union

import numpy as np
import scipy.sparse as sp

from ..pipeline import PipelineStep
from ..utils.errors import DomainError, SizeGuardError
from .dynamic_graph import DynamicGraph, to_weighted_graph

DENSE_SIZE_GUARD = 4096


class LaplacianKind(str, Enum):
    COMBINATORIAL = "combinatorial"
    NORMALIZED = "normalized"

    @classmethod
    def parse(cls, value: Union[str, "LaplacianKind"]) -> "LaplacianKind":
        """Accept enum members, full names and the short CLI names comb/norm"""
        if isinstance(value, LaplacianKind):
            return value
        aliases = {"comb": cls.COMBINATORIAL, "norm": cls.NORMALIZED}
        value = str(value).lower()
        if value in aliases:
            return aliases[value]
        try:
            return cls(value)
        except ValueError:
            raise DomainError(f"Unknown Laplacian kind {value!r}")


class Laplacian:
    """N x N graph Laplacian of a single snapshot"""

    def __init__(self, matrix: sp.spmatrix, kind: LaplacianKind) -> None:
        self.matrix = sp.csr_matrix(matrix)
        self.kind = LaplacianKind.parse(kind)

    @property
    def num_nodes(self) -> int:
        return self.matrix.shape[0]

    def toarray(self) -> np.ndarray:
        return self.matrix.toarray()


class TimeRingLaplacian:
    """T x T circulant Laplacian of the ring over timesteps"""

    def __init__(self, matrix: sp.spmatrix) -> None:
        self.matrix = sp.csr_matrix(matrix)

    @property
    def num_timesteps(self) -> int:
        return self.matrix.shape[0]

    def toarray(self) -> np.ndarray:
        return self.matrix.toarray()


class JointLaplacian:
    """NT x NT joint Laplacian, timestep-major: block t spans rows tN..tN+N-1"""

    def __init__(
        self, matrix: sp.spmatrix, num_nodes: int, num_timesteps: int, kind: LaplacianKind
    ) -> None:
        self.matrix = sp.csr_matrix(matrix)
        self.num_nodes = num_nodes
        self.num_timesteps = num_timesteps
        self.kind = LaplacianKind.parse(kind)

    @property
    def size(self) -> int:
        return self.num_nodes * self.num_timesteps

    def toarray(
        self, max_size: int = DENSE_SIZE_GUARD, force_dense: bool = False
    ) -> np.ndarray:
        """Materialize the dense matrix

        Args:
            max_size (int, optional): Size guard on NT. Defaults to DENSE_SIZE_GUARD.
            force_dense (bool, optional): Bypass the size guard. Defaults to False.

        Raises:
            SizeGuardError: When NT exceeds the guard and force_dense is not set.

        Returns:
            np.ndarray: Dense NT x NT matrix.
        """
        check_size_guard(self.size, max_size=max_size, force_dense=force_dense)
        return self.matrix.toarray()


def check_size_guard(size: int, max_size: int = DENSE_SIZE_GUARD, force_dense: bool = False) -> None:
    """Refuse dense NT x NT objects above the guard unless forced

    Args:
        size (int): NT.
        max_size (int, optional): Largest allowed NT. Defaults to DENSE_SIZE_GUARD.
        force_dense (bool, optional): Override the guard. Defaults to False.

    Raises:
        SizeGuardError: When size > max_size and force_dense is False.
    """
    if size <= max_size:
        return
    if not force_dense:
        raise SizeGuardError(
            f"Refusing to materialize a {size}x{size} matrix (guard {max_size}); use force_dense"
        )
    logging.warning("Size guard overridden for a %dx%d dense matrix", size, size)


def build_laplacian(
    graph: Union[np.ndarray, sp.spmatrix],
    kind: Union[str, LaplacianKind] = LaplacianKind.COMBINATORIAL,
) -> Laplacian:
    """Build the combinatorial (D - A) or normalized (I - D^-1/2 A D^-1/2) Laplacian

    Self-loops cancel in D - A. Degree-0 nodes get a zero row and column in both kinds.

    Args:
        graph (Union[np.ndarray, sp.spmatrix]): Symmetric nonnegative adjacency.
        kind (Union[str, LaplacianKind], optional): Laplacian kind. Defaults to combinatorial.

    Returns:
        Laplacian: The Laplacian.
    """
    kind = LaplacianKind.parse(kind)
    adjacency = to_weighted_graph(graph)
    degrees = np.asarray(adjacency.sum(axis=1)).ravel()
    combinatorial = sp.diags(degrees) - adjacency
    if kind == LaplacianKind.COMBINATORIAL:
        return Laplacian(combinatorial, kind)
    inv_sqrt = np.zeros_like(degrees)
    connected = degrees > 0
    inv_sqrt[connected] = 1.0 / np.sqrt(degrees[connected])
    scaling = sp.diags(inv_sqrt)
    return Laplacian(scaling @ combinatorial @ scaling, kind)


def build_time_ring_laplacian(num_timesteps: int) -> TimeRingLaplacian:
    """Laplacian of the cycle over T timesteps

    T >= 3 gives the circulant with first row (2, -1, 0, ..., 0, -1); T = 2 a single
    unit edge; T = 1 the 1 x 1 zero matrix.

    Args:
        num_timesteps (int): T.

    Raises:
        DomainError: When T < 1.

    Returns:
        TimeRingLaplacian: The ring Laplacian.
    """
    if num_timesteps < 1:
        raise DomainError(f"Number of timesteps must be positive, got {num_timesteps}")
    if num_timesteps == 1:
        return TimeRingLaplacian(sp.csr_matrix((1, 1)))
    if num_timesteps == 2:
        return TimeRingLaplacian(sp.csr_matrix(np.array([[1.0, -1.0], [-1.0, 1.0]])))
    ring = sp.diags(
        [-1.0, -1.0, 2.0, -1.0, -1.0],
        [-(num_timesteps - 1), -1, 0, 1, num_timesteps - 1],
        shape=(num_timesteps, num_timesteps),
    )
    return TimeRingLaplacian(ring)


def ring_eigenvalues(num_timesteps: int) -> np.ndarray:
    """Eigenvalue mu_k of the ring Laplacian for DFT row k

    Args:
        num_timesteps (int): T.

    Returns:
        np.ndarray: Length-T vector, not sorted (indexed by DFT bin).
    """
    if num_timesteps < 1:
        raise DomainError(f"Number of timesteps must be positive, got {num_timesteps}")
    if num_timesteps == 1:
        return np.zeros(1)
    if num_timesteps == 2:
        return np.array([0.0, 2.0])
    k = np.arange(num_timesteps)
    return 2.0 - 2.0 * np.cos(2.0 * np.pi * k / num_timesteps)


def build_joint_laplacian(
    dg: DynamicGraph,
    kind: Union[str, LaplacianKind] = LaplacianKind.COMBINATORIAL,
) -> JointLaplacian:
    """L_T (x) I_N + blockdiag(L_G0, ..., L_G(T-1)) in timestep-major layout

    Args:
        dg (DynamicGraph): Dynamic graph.
        kind (Union[str, LaplacianKind], optional): Kind of the snapshot Laplacians.
            Defaults to combinatorial.

    Returns:
        JointLaplacian: Sparse joint Laplacian.
    """
    kind = LaplacianKind.parse(kind)
    ring = build_time_ring_laplacian(dg.num_timesteps)
    blocks = [build_laplacian(graph, kind).matrix for graph in dg.snapshots]
    matrix = sp.kron(ring.matrix, sp.identity(dg.num_nodes)) + sp.block_diag(blocks)
    return JointLaplacian(matrix, dg.num_nodes, dg.num_timesteps, kind)


def vectorize(signal: np.ndarray) -> np.ndarray:
    """Timestep-major vectorization: entry tN + i holds X[i, t]"""
    return np.asarray(signal).reshape(-1, order="F")


def unvectorize(vector: np.ndarray, num_nodes: int, num_timesteps: int) -> np.ndarray:
    """Inverse of vectorize"""
    return np.asarray(vector).reshape((num_nodes, num_timesteps), order="F")


def _ring_offsets(num_timesteps: int):
    if num_timesteps >= 3:
        return (-1, 1)
    if num_timesteps == 2:
        return (1,)
    return ()


def dirichlet_s2(dg: DynamicGraph, signal: np.ndarray) -> float:
    """2-Dirichlet variation of a time-vertex signal by direct neighbour differences

    Computes 1/2 sum_t sum_i [sum_{j~i at t} w_ij (X[j,t] - X[i,t])^2
    + sum_{s ring-neighbour of t} (X[i,s] - X[i,t])^2], without building L_JD.

    Args:
        dg (DynamicGraph): Dynamic graph.
        signal (np.ndarray): N x T signal.

    Returns:
        float: S_2(X) >= 0.
    """
    signal = dg.check_signal(signal)
    vertex_term = 0.0
    for t, graph in enumerate(dg.snapshots):
        coo = graph.tocoo()
        column = signal[:, t]
        diffs = column[coo.col] - column[coo.row]
        vertex_term += float(np.sum(coo.data * np.abs(diffs) ** 2))
    time_term = 0.0
    for offset in _ring_offsets(dg.num_timesteps):
        time_term += float(np.sum(np.abs(np.roll(signal, offset, axis=1) - signal) ** 2))
    return 0.5 * (vertex_term + time_term)


class JointLaplacianBuilder(PipelineStep):
    """Pipeline step computing the dense joint Laplacian of a dynamic graph"""

    def __init__(
        self,
        kind: str = "combinatorial",
        force_dense: bool = False,
        **kwargs,
    ) -> None:
        """
        Args:
            kind (str, optional): Laplacian kind. Defaults to "combinatorial".
            force_dense (bool, optional): Bypass the dense size guard. Defaults to False.
        """
        logging.debug("*** Joint Laplacian Builder ***")
        self.kind = LaplacianKind.parse(kind).value
        self.force_dense = force_dense
        super().__init__(**kwargs)

    def _process(self, graph: DynamicGraph) -> np.ndarray:  # type: ignore[override]
        joint = build_joint_laplacian(graph, self.kind)
        return joint.toarray(force_dense=self.force_dense)

    def precompute(
        self,
        link_path: Union[None, str, Path] = None,
        precompute_path: Union[None, str, Path] = None,
    ) -> None:
        if self.save_path is not None and link_path is not None:
            self._link_to_path(Path(link_path) / "joint_laplacians")
