"""Residual of EFT basis vectors as approximate eigenvectors of the joint Laplacian"""

from typing import List, Optional, Union

import numpy as np
import scipy.sparse.linalg as spla

from ..graph import (
    DynamicGraph,
    LaplacianKind,
    build_joint_laplacian,
    build_laplacian,
    ring_eigenvalues,
)
from ..utils.errors import DomainError
from .bases import GftBasis, dft_basis, gft_bases


def lipschitz_constant(
    dg: DynamicGraph, kind: Union[str, LaplacianKind] = LaplacianKind.COMBINATORIAL
) -> float:
    """Largest Frobenius norm of consecutive snapshot Laplacian differences (0 when T = 1)"""
    laplacians = [build_laplacian(graph, kind).matrix for graph in dg.snapshots]
    differences = [
        spla.norm(after - before, "fro")
        for before, after in zip(laplacians[:-1], laplacians[1:])
    ]
    return float(max(differences, default=0.0))


def pseudospectrum_bound(
    dg: DynamicGraph, kind: Union[str, LaplacianKind] = LaplacianKind.COMBINATORIAL
) -> float:
    """delta * N * T^2 with delta the Lipschitz constant of the snapshot Laplacians"""
    return lipschitz_constant(dg, kind) * dg.num_nodes * dg.num_timesteps ** 2


def tracked_eigenvectors(bases: List[GftBasis], index: int) -> np.ndarray:
    """Follow eigenvector index of the first snapshot through time by maximal overlap

    Args:
        bases (List[GftBasis]): Snapshot bases.
        index (int): Row l of the first basis.

    Returns:
        np.ndarray: T x N array, row t is z_l at time t sign-aligned to row t - 1.
    """
    tracked = [bases[0].vectors[index]]
    for basis in bases[1:]:
        overlaps = basis.vectors @ tracked[-1]
        best = int(np.argmax(np.abs(overlaps)))
        sign = -1.0 if overlaps[best] < 0 else 1.0
        tracked.append(sign * basis.vectors[best])
    return np.stack(tracked)


def pseudospectrum_residual(
    dg: DynamicGraph,
    time_index: int,
    graph_index: int,
    kind: Union[str, LaplacianKind] = LaplacianKind.COMBINATORIAL,
    bases: Optional[List[GftBasis]] = None,
) -> float:
    """||L_JD y - (mu_k + lambda_l) y|| / ||y|| for the candidate y built from tracked eigenvectors

    y stacks Psi_T[k, t] * z_l^t over timesteps (timestep-major), lambda_l is taken at
    the first snapshot.

    Args:
        dg (DynamicGraph): Dynamic graph.
        time_index (int): DFT bin k.
        graph_index (int): Graph frequency index l.
        kind (Union[str, LaplacianKind], optional): Laplacian kind. Defaults to combinatorial.
        bases (Optional[List[GftBasis]], optional): Precomputed snapshot bases. Defaults to None.

    Raises:
        DomainError: When an index is out of range.

    Returns:
        float: Relative residual.
    """
    if not 0 <= time_index < dg.num_timesteps:
        raise DomainError(f"Time index {time_index} out of range for T={dg.num_timesteps}")
    if not 0 <= graph_index < dg.num_nodes:
        raise DomainError(f"Graph index {graph_index} out of range for N={dg.num_nodes}")
    residuals = _residuals(
        dg, kind, bases, time_indices=[time_index], graph_indices=[graph_index]
    )
    return float(residuals[0, 0])


def pseudospectrum_residuals(
    dg: DynamicGraph,
    kind: Union[str, LaplacianKind] = LaplacianKind.COMBINATORIAL,
    bases: Optional[List[GftBasis]] = None,
) -> np.ndarray:
    """T x N array of pseudospectrum_residual over every (k, l)"""
    return _residuals(
        dg, kind, bases, range(dg.num_timesteps), range(dg.num_nodes)
    )


def _residuals(dg, kind, bases, time_indices, graph_indices) -> np.ndarray:
    if bases is None:
        bases = gft_bases(dg, kind)
    joint = build_joint_laplacian(dg, kind).matrix
    psi_t = dft_basis(dg.num_timesteps).vectors
    mu = ring_eigenvalues(dg.num_timesteps)
    time_indices, graph_indices = list(time_indices), list(graph_indices)
    out = np.zeros((len(time_indices), len(graph_indices)))
    for b, l in enumerate(graph_indices):
        tracked = tracked_eigenvectors(bases, l)
        for a, k in enumerate(time_indices):
            candidate = (psi_t[k][:, None] * tracked).ravel()
            shift = mu[k] + bases[0].eigenvalues[l]
            residual = joint @ candidate - shift * candidate
            out[a, b] = np.linalg.norm(residual) / np.linalg.norm(candidate)
    return out
