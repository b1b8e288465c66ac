"""This module implements the forward and inverse evolving graph Fourier transform"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Tuple, Union

import h5py
import numpy as np

from ..graph import (
    DENSE_SIZE_GUARD,
    DynamicGraph,
    LaplacianKind,
    check_size_guard,
)
from ..pipeline import PipelineStep
from ..utils.errors import DomainError, ShapeError
from .bases import (
    GftBasis,
    dft_basis,
    gft_bases,
    graph_frequency_grid,
    real_dft_basis,
    stack_bases,
)

TRANSFORM_ORDERS = ("vertex_first", "time_first")


def time_frequencies(num_timesteps: int) -> np.ndarray:
    """Angular frequencies 2 pi k / T of the DFT bins"""
    return 2.0 * np.pi * np.arange(num_timesteps) / num_timesteps


@dataclass
class EftCoefficients:
    """
    N x T time-vertex coefficients. Column k is DFT bin k and row l is graph
    frequency index l (ascending eigenvalue at every timestep).
    """

    values: np.ndarray
    graph_freqs: Optional[np.ndarray]
    time_freqs: np.ndarray
    kind: LaplacianKind = LaplacianKind.COMBINATORIAL

    @property
    def shape(self) -> Tuple[int, int]:
        return self.values.shape


def _resolve_bases(
    dg: DynamicGraph,
    kind: Union[str, LaplacianKind],
    bases: Optional[List[GftBasis]],
) -> List[GftBasis]:
    if bases is None:
        return gft_bases(dg, kind)
    if len(bases) != dg.num_timesteps or any(
        basis.num_nodes != dg.num_nodes for basis in bases
    ):
        raise ShapeError(
            f"Expected {dg.num_timesteps} bases of size {dg.num_nodes}, got {len(bases)}"
        )
    return bases


def unitary_time_fft(values: np.ndarray) -> np.ndarray:
    """Unitary FFT along axis 1; real input keeps exact conjugate symmetry"""
    if np.iscomplexobj(values):
        return np.fft.fft(values, axis=1, norm="ortho")
    num_timesteps = values.shape[1]
    half = np.fft.rfft(values, axis=1, norm="ortho")
    out = np.empty(values.shape, dtype=complex)
    out[:, : half.shape[1]] = half
    mirrored = np.arange(half.shape[1], num_timesteps)
    out[:, mirrored] = np.conj(half[:, num_timesteps - mirrored])
    return out


def eft_forward(
    dg: DynamicGraph,
    signal: np.ndarray,
    kind: Union[str, LaplacianKind] = LaplacianKind.COMBINATORIAL,
    bases: Optional[List[GftBasis]] = None,
    order: str = "vertex_first",
) -> EftCoefficients:
    """Evolving graph Fourier transform of an N x T signal

    vertex_first transforms column t with the basis of snapshot t and then applies the
    DFT along time. time_first contracts the DFT first while keeping the time index,
    then applies the snapshot bases. Both compute the same coefficients.

    Args:
        dg (DynamicGraph): Dynamic graph.
        signal (np.ndarray): Real or complex N x T signal.
        kind (Union[str, LaplacianKind], optional): Laplacian kind. Defaults to combinatorial.
        bases (Optional[List[GftBasis]], optional): Precomputed snapshot bases. Defaults to None.
        order (str, optional): vertex_first or time_first. Defaults to "vertex_first".

    Raises:
        ShapeError: When the signal is not N x T.
        NumericalError: When an eigendecomposition fails.

    Returns:
        EftCoefficients: Coefficients and frequency grids.
    """
    kind = LaplacianKind.parse(kind)
    signal = dg.check_signal(signal)
    if signal.ndim != 2:
        raise ShapeError(f"Expected an N x T signal, got shape {signal.shape}")
    if order not in TRANSFORM_ORDERS:
        raise DomainError(f"Unknown transform order {order!r}")
    bases = _resolve_bases(dg, kind, bases)
    stack = stack_bases(bases)
    if order == "vertex_first":
        intermediate = np.einsum("tij,jt->it", stack, signal)
        values = unitary_time_fft(intermediate)
    else:
        psi_t = dft_basis(dg.num_timesteps).vectors
        spread = np.einsum("kt,mt->ktm", psi_t, signal)
        values = np.einsum("tim,ktm->ik", stack, spread)
    return EftCoefficients(
        values=values,
        graph_freqs=graph_frequency_grid(bases),
        time_freqs=time_frequencies(dg.num_timesteps),
        kind=kind,
    )


def eft_inverse(
    dg: DynamicGraph,
    coefficients: Union[EftCoefficients, np.ndarray],
    kind: Union[str, LaplacianKind] = LaplacianKind.COMBINATORIAL,
    bases: Optional[List[GftBasis]] = None,
) -> np.ndarray:
    """Inverse DFT along time followed by the transposed snapshot basis at every timestep

    Args:
        dg (DynamicGraph): Dynamic graph the coefficients were computed on.
        coefficients (Union[EftCoefficients, np.ndarray]): N x T coefficients.
        kind (Union[str, LaplacianKind], optional): Laplacian kind. Defaults to combinatorial.
        bases (Optional[List[GftBasis]], optional): Precomputed snapshot bases. Defaults to None.

    Raises:
        ShapeError: When the coefficients are not N x T.

    Returns:
        np.ndarray: Complex N x T signal.
    """
    values = (
        coefficients.values
        if isinstance(coefficients, EftCoefficients)
        else np.asarray(coefficients)
    )
    if values.shape != dg.shape:
        raise ShapeError(
            f"Coefficients of shape {values.shape} do not match graph shape {dg.shape}"
        )
    bases = _resolve_bases(dg, kind, bases)
    intermediate = np.fft.ifft(values, axis=1, norm="ortho")
    return np.einsum("tji,jt->it", stack_bases(bases), intermediate)


def eft_matrix(
    dg: DynamicGraph,
    kind: Union[str, LaplacianKind] = LaplacianKind.COMBINATORIAL,
    real: bool = False,
    bases: Optional[List[GftBasis]] = None,
    max_size: int = DENSE_SIZE_GUARD,
    force_dense: bool = False,
) -> np.ndarray:
    """Explicit NT x NT transform matrix

    Entry (jN + i, kN + m) is Psi_T[j, k] * Psi_Gk[i, m], so that the matrix applied
    to vectorize(X) gives vectorize(eft_forward(X).values) for the complex DFT.

    Args:
        dg (DynamicGraph): Dynamic graph.
        kind (Union[str, LaplacianKind], optional): Laplacian kind. Defaults to combinatorial.
        real (bool, optional): Use the real cosine/sine ring basis. Defaults to False.
        bases (Optional[List[GftBasis]], optional): Precomputed snapshot bases. Defaults to None.
        max_size (int, optional): Size guard on NT. Defaults to DENSE_SIZE_GUARD.
        force_dense (bool, optional): Bypass the size guard. Defaults to False.

    Raises:
        SizeGuardError: When NT exceeds the guard.

    Returns:
        np.ndarray: Complex (or real) NT x NT matrix.
    """
    size = dg.num_nodes * dg.num_timesteps
    check_size_guard(size, max_size=max_size, force_dense=force_dense)
    bases = _resolve_bases(dg, kind, bases)
    time_basis = real_dft_basis(dg.num_timesteps) if real else dft_basis(dg.num_timesteps)
    matrix = np.einsum("jk,kim->jikm", time_basis.vectors, stack_bases(bases))
    return matrix.reshape(size, size)


def eft_joint_frequencies(
    dg: DynamicGraph,
    kind: Union[str, LaplacianKind] = LaplacianKind.COMBINATORIAL,
    real: bool = False,
    bases: Optional[List[GftBasis]] = None,
) -> np.ndarray:
    """Nominal joint frequency mu_k + lambda_l of the first snapshot for every row of eft_matrix"""
    bases = _resolve_bases(dg, kind, bases)
    time_basis = real_dft_basis(dg.num_timesteps) if real else dft_basis(dg.num_timesteps)
    return (time_basis.ring_eigenvalues[:, None] + bases[0].eigenvalues[None, :]).ravel()


def transform_stability(
    matrix: np.ndarray, perturbation: np.ndarray, vector: np.ndarray
) -> Tuple[float, float]:
    """Relative change of a unitary transform's output under an additive perturbation

    For unitary matrix, ||(M + E) x - M x|| / ||M x|| <= ||E||_2.

    Args:
        matrix (np.ndarray): Unitary matrix M.
        perturbation (np.ndarray): Perturbation E of the same shape.
        vector (np.ndarray): Input x.

    Raises:
        ShapeError: When the shapes do not match.

    Returns:
        Tuple[float, float]: The relative change and the bound ||E||_2.
    """
    matrix = np.asarray(matrix)
    perturbation = np.asarray(perturbation)
    vector = np.asarray(vector)
    if matrix.shape != perturbation.shape or matrix.shape[1] != vector.shape[0]:
        raise ShapeError(
            f"Incompatible shapes {matrix.shape}, {perturbation.shape}, {vector.shape}"
        )
    reference = matrix @ vector
    change = np.linalg.norm(perturbation @ vector) / np.linalg.norm(reference)
    return float(change), float(np.linalg.norm(perturbation, ord=2))


class EFTransformer(PipelineStep):
    """Pipeline step computing the evolving graph Fourier transform"""

    def __init__(
        self,
        kind: str = "combinatorial",
        order: str = "vertex_first",
        **kwargs,
    ) -> None:
        """
        Args:
            kind (str, optional): Laplacian kind. Defaults to "combinatorial".
            order (str, optional): Contraction order. Defaults to "vertex_first".
        """
        logging.debug("*** EFT Transformer ***")
        self.kind = LaplacianKind.parse(kind).value
        self.order = order
        super().__init__(**kwargs)

    def _process(  # type: ignore[override]
        self, graph: DynamicGraph, signal: np.ndarray
    ) -> EftCoefficients:
        return eft_forward(graph, signal, kind=self.kind, order=self.order)

    def _set_outputs(self, output_file: h5py.File, outputs: EftCoefficients) -> None:
        output_file.attrs["kind"] = LaplacianKind.parse(outputs.kind).value
        for key in ("values", "graph_freqs", "time_freqs"):
            output_file.create_dataset(
                key,
                data=np.asarray(getattr(outputs, key)),
                compression="gzip",
                compression_opts=9,
            )

    def _get_outputs(self, input_file: h5py.File) -> EftCoefficients:
        return EftCoefficients(
            values=input_file["values"][()],
            graph_freqs=input_file["graph_freqs"][()],
            time_freqs=input_file["time_freqs"][()],
            kind=LaplacianKind.parse(input_file.attrs["kind"]),
        )

    def precompute(
        self,
        link_path: Union[None, str, Path] = None,
        precompute_path: Union[None, str, Path] = None,
    ) -> None:
        if self.save_path is not None and link_path is not None:
            self._link_to_path(Path(link_path) / "eft_coefficients")


class InverseEFTransformer(PipelineStep):
    """Pipeline step reconstructing a signal from its coefficients"""

    def __init__(
        self,
        kind: str = "combinatorial",
        real_output: bool = True,
        **kwargs,
    ) -> None:
        """
        Args:
            kind (str, optional): Laplacian kind. Defaults to "combinatorial".
            real_output (bool, optional): Keep only the real part. Defaults to True.
        """
        logging.debug("*** Inverse EFT Transformer ***")
        self.kind = LaplacianKind.parse(kind).value
        self.real_output = real_output
        super().__init__(**kwargs)

    def _process(  # type: ignore[override]
        self, graph: DynamicGraph, coefficients: EftCoefficients
    ) -> np.ndarray:
        signal = eft_inverse(graph, coefficients, kind=self.kind)
        return signal.real if self.real_output else signal
