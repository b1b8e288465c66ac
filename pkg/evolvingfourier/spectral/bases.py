"""This module computes the GFT, DFT and joint (AD) spectral bases"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Union

import numpy as np
import scipy.linalg
import scipy.sparse as sp

from ..graph import (
    DENSE_SIZE_GUARD,
    DynamicGraph,
    JointLaplacian,
    Laplacian,
    LaplacianKind,
    build_laplacian,
    ring_eigenvalues,
)
from ..utils.errors import DomainError, NumericalError

SIGN_TIE_TOL = 1e-12


@dataclass(frozen=True)
class GftBasis:
    """Rows of vectors are the eigenvectors of a snapshot Laplacian, eigenvalues ascending"""

    vectors: np.ndarray
    eigenvalues: np.ndarray

    @property
    def num_nodes(self) -> int:
        return self.vectors.shape[0]

    def transform(self, signal: np.ndarray) -> np.ndarray:
        return self.vectors @ signal

    def inverse(self, coefficients: np.ndarray) -> np.ndarray:
        return self.vectors.T @ coefficients


@dataclass(frozen=True)
class DftBasis:
    """
    T x T time basis. bins[r] is the DFT bin carried by row r: the identity for
    the complex basis, k repeated for the cosine and sine rows of the real one.
    """

    vectors: np.ndarray
    bins: np.ndarray

    @property
    def num_timesteps(self) -> int:
        return self.vectors.shape[0]

    @property
    def frequencies(self) -> np.ndarray:
        """Angular frequency 2 pi k / T of every row"""
        return 2.0 * np.pi * self.bins / self.num_timesteps

    @property
    def ring_eigenvalues(self) -> np.ndarray:
        """Eigenvalue of the ring Laplacian for every row"""
        return ring_eigenvalues(self.num_timesteps)[self.bins]


@dataclass(frozen=True)
class AdBasis:
    """Rows of vectors are the eigenvectors of the joint Laplacian, eigenvalues ascending"""

    vectors: np.ndarray
    eigenvalues: np.ndarray


def fix_signs(vectors: np.ndarray) -> np.ndarray:
    """Flip every row so that its entry of largest magnitude is positive

    Ties (within 1e-12) are broken by the lowest column index.

    Args:
        vectors (np.ndarray): Real matrix whose rows are basis vectors.

    Returns:
        np.ndarray: Sign-fixed copy.
    """
    vectors = np.array(vectors, dtype=float, copy=True)
    if vectors.size == 0:
        return vectors
    magnitudes = np.abs(vectors)
    largest = magnitudes.max(axis=1, keepdims=True)
    pivots = np.argmax(magnitudes >= largest - SIGN_TIE_TOL, axis=1)
    signs = np.where(vectors[np.arange(vectors.shape[0]), pivots] < 0, -1.0, 1.0)
    return vectors * signs[:, None]


def _eigh(matrix: np.ndarray):
    try:
        return np.linalg.eigh(matrix)
    except np.linalg.LinAlgError as error:
        raise NumericalError(f"Eigendecomposition did not converge: {error}")


def gft_basis(laplacian: Union[Laplacian, np.ndarray, sp.spmatrix]) -> GftBasis:
    """Full symmetric eigendecomposition of a snapshot Laplacian

    Args:
        laplacian (Union[Laplacian, np.ndarray, sp.spmatrix]): N x N Laplacian.

    Raises:
        NumericalError: When the eigendecomposition does not converge.

    Returns:
        GftBasis: Sign-fixed eigenvector rows and ascending eigenvalues.
    """
    if isinstance(laplacian, Laplacian):
        matrix = laplacian.toarray()
    elif sp.issparse(laplacian):
        matrix = laplacian.toarray()
    else:
        matrix = np.asarray(laplacian, dtype=float)
    eigenvalues, eigenvectors = _eigh(matrix)
    return GftBasis(vectors=fix_signs(eigenvectors.T), eigenvalues=eigenvalues)


def align_signs(vectors: np.ndarray, reference: np.ndarray) -> np.ndarray:
    """Flip rows of vectors that have a negative inner product with the same row of reference"""
    overlaps = np.sum(vectors * reference, axis=1)
    signs = np.where(overlaps < 0, -1.0, 1.0)
    return vectors * signs[:, None]


def gft_bases(
    dg: DynamicGraph,
    kind: Union[str, LaplacianKind] = LaplacianKind.COMBINATORIAL,
    continuity: bool = True,
    jitter: Optional[float] = None,
    seed: int = 0,
) -> List[GftBasis]:
    """GFT basis of every snapshot

    Args:
        dg (DynamicGraph): Dynamic graph.
        kind (Union[str, LaplacianKind], optional): Laplacian kind. Defaults to combinatorial.
        continuity (bool, optional): Sign-align row l at time t to row l at time t - 1.
            Defaults to True.
        jitter (Optional[float], optional): When set, edge weights are jittered by this
            amplitude before decomposing to break eigenvalue multiplicities. Defaults to None.
        seed (int, optional): Seed of the jitter. Defaults to 0.

    Returns:
        List[GftBasis]: T bases.
    """
    if jitter is not None and jitter > 0:
        logging.debug("Jittering edge weights by %g before decomposition", jitter)
        dg = dg.jittered(scale=jitter, seed=seed)
    bases: List[GftBasis] = []
    cache = {}
    for graph in dg.snapshots:
        key = (graph.indptr.tobytes(), graph.indices.tobytes(), graph.data.tobytes())
        if key not in cache:
            cache[key] = gft_basis(build_laplacian(graph, kind))
        basis = cache[key]
        if continuity and bases:
            basis = GftBasis(
                vectors=align_signs(basis.vectors, bases[-1].vectors),
                eigenvalues=basis.eigenvalues,
            )
        bases.append(basis)
    return bases


def stack_bases(bases: List[GftBasis]) -> np.ndarray:
    """T x N x N array of the basis matrices"""
    return np.stack([basis.vectors for basis in bases])


def graph_frequency_grid(bases: List[GftBasis]) -> np.ndarray:
    """N x T array whose column t holds the eigenvalues of snapshot t"""
    return np.stack([basis.eigenvalues for basis in bases], axis=1)


def dft_basis(num_timesteps: int) -> DftBasis:
    """Unitary DFT matrix with entry (k, t) = exp(-2 pi i k t / T) / sqrt(T)

    Args:
        num_timesteps (int): T.

    Raises:
        DomainError: When T < 1.

    Returns:
        DftBasis: The complex basis.
    """
    if num_timesteps < 1:
        raise DomainError(f"Number of timesteps must be positive, got {num_timesteps}")
    return DftBasis(
        vectors=scipy.linalg.dft(num_timesteps, scale="sqrtn"),
        bins=np.arange(num_timesteps),
    )


def real_dft_basis(num_timesteps: int) -> DftBasis:
    """Real orthonormal eigenbasis of the ring Laplacian

    Rows are the constant row, then a cosine and a sine row per bin 1 <= k < T/2, then
    the alternating row (-1)^t / sqrt(T) when T is even.

    Args:
        num_timesteps (int): T.

    Raises:
        DomainError: When T < 1.

    Returns:
        DftBasis: The real basis.
    """
    if num_timesteps < 1:
        raise DomainError(f"Number of timesteps must be positive, got {num_timesteps}")
    t = np.arange(num_timesteps)
    rows = [np.full(num_timesteps, 1.0 / np.sqrt(num_timesteps))]
    bins = [0]
    scale = np.sqrt(2.0 / num_timesteps)
    for k in range(1, (num_timesteps + 1) // 2):
        angle = 2.0 * np.pi * k * t / num_timesteps
        rows.extend([scale * np.cos(angle), scale * np.sin(angle)])
        bins.extend([k, k])
    if num_timesteps % 2 == 0 and num_timesteps > 1:
        rows.append(np.where(t % 2 == 0, 1.0, -1.0) / np.sqrt(num_timesteps))
        bins.append(num_timesteps // 2)
    return DftBasis(vectors=np.stack(rows), bins=np.asarray(bins))


def ad_basis(
    joint: JointLaplacian,
    max_size: int = DENSE_SIZE_GUARD,
    force_dense: bool = False,
) -> AdBasis:
    """Exact eigendecomposition of the joint Laplacian

    Args:
        joint (JointLaplacian): NT x NT joint Laplacian.
        max_size (int, optional): Size guard on NT. Defaults to DENSE_SIZE_GUARD.
        force_dense (bool, optional): Bypass the size guard. Defaults to False.

    Raises:
        SizeGuardError: When NT exceeds the guard.
        NumericalError: When the eigendecomposition does not converge.

    Returns:
        AdBasis: Sign-fixed eigenvector rows and ascending eigenvalues.
    """
    matrix = joint.toarray(max_size=max_size, force_dense=force_dense)
    eigenvalues, eigenvectors = _eigh(matrix)
    return AdBasis(vectors=fix_signs(eigenvectors.T), eigenvalues=eigenvalues)
