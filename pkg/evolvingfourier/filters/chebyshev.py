"""Chebyshev polynomial filters on the vertex domain"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np
import scipy.sparse as sp
from numpy.polynomial import chebyshev
from scipy.sparse.linalg import ArpackNoConvergence, eigsh

from ..graph import Laplacian, LaplacianKind
from ..utils.errors import DomainError, ShapeError

LAMBDA_MAX_FLOOR = 1e-12
LAMBDA_MAX_MARGIN = 1.01
POWER_ITERATION_TOL = 1e-6
POWER_ITERATION_MAXITER = 500


@dataclass(frozen=True)
class ChebyshevFilter:
    """Response sum_k c_k T_k(2 lambda / lambda_max - 1) on [0, lambda_max]"""

    coeffs: np.ndarray
    lambda_max: float

    def __post_init__(self) -> None:
        coeffs = np.atleast_1d(np.asarray(self.coeffs, dtype=float))
        if coeffs.ndim != 1 or coeffs.size == 0:
            raise DomainError("Chebyshev coefficients must be a non-empty vector")
        if not np.all(np.isfinite(coeffs)):
            raise DomainError("Chebyshev coefficients must be finite")
        if not np.isfinite(self.lambda_max) or self.lambda_max <= 0:
            raise DomainError(f"lambda_max must be positive and finite, got {self.lambda_max}")
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "lambda_max", float(self.lambda_max))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def response(self, eigenvalues: np.ndarray) -> np.ndarray:
        """Evaluate the filter response at the given eigenvalues"""
        rescaled = 2.0 * np.asarray(eigenvalues, dtype=float) / self.lambda_max - 1.0
        return chebyshev.chebval(rescaled, self.coeffs)


def _as_operator(laplacian: Union[Laplacian, np.ndarray, sp.spmatrix]):
    if isinstance(laplacian, Laplacian):
        return laplacian.matrix
    if sp.issparse(laplacian):
        return sp.csr_matrix(laplacian)
    return np.asarray(laplacian, dtype=float)


def chebyshev_apply(
    laplacian: Union[Laplacian, np.ndarray, sp.spmatrix],
    chebyshev_filter: ChebyshevFilter,
    signal: np.ndarray,
) -> np.ndarray:
    """Filter a graph signal with the three-term Chebyshev recurrence

    Only matrix-vector products with the (sparse) Laplacian are used.

    Args:
        laplacian (Union[Laplacian, np.ndarray, sp.spmatrix]): N x N Laplacian.
        chebyshev_filter (ChebyshevFilter): Filter to apply.
        signal (np.ndarray): N or N x d signal.

    Raises:
        ShapeError: When the signal does not have N rows.
        DomainError: When lambda_max is not positive.

    Returns:
        np.ndarray: Filtered signal of the same shape.
    """
    operator = _as_operator(laplacian)
    signal = np.asarray(signal)
    if signal.shape[0] != operator.shape[0]:
        raise ShapeError(
            f"Signal with {signal.shape[0]} rows does not match a {operator.shape[0]}-node Laplacian"
        )
    if chebyshev_filter.lambda_max <= 0:
        raise DomainError("lambda_max must be positive")
    scale = 2.0 / chebyshev_filter.lambda_max
    coeffs = chebyshev_filter.coeffs

    def rescaled(vectors: np.ndarray) -> np.ndarray:
        return scale * (operator @ vectors) - vectors

    previous = signal
    out = coeffs[0] * previous
    if len(coeffs) == 1:
        return out
    current = rescaled(signal)
    out = out + coeffs[1] * current
    for coeff in coeffs[2:]:
        previous, current = current, 2.0 * rescaled(current) - previous
        out = out + coeff * current
    return out


def _vectorized(target: Callable, points: np.ndarray) -> np.ndarray:
    values = np.asarray(target(points), dtype=float)
    if values.shape != points.shape:
        values = np.broadcast_to(values, points.shape)
    return values


def chebyshev_nodes(order: int, lambda_max: float) -> np.ndarray:
    """Chebyshev points of the first kind mapped to [0, lambda_max]"""
    return (chebyshev.chebpts1(order + 1) + 1.0) * lambda_max / 2.0


def fit_chebyshev(target: Callable, order: int, lambda_max: float) -> ChebyshevFilter:
    """Interpolate a response on [0, lambda_max] at the order + 1 Chebyshev nodes

    Args:
        target (Callable): Response as a function of the eigenvalue, vectorized or scalar.
        order (int): Polynomial order.
        lambda_max (float): Upper end of the spectrum.

    Raises:
        DomainError: When the order is negative or lambda_max is not positive.

    Returns:
        ChebyshevFilter: Filter reproducing target at the nodes.
    """
    if order < 0:
        raise DomainError(f"Chebyshev order must be nonnegative, got {order}")
    if not np.isfinite(lambda_max) or lambda_max <= 0:
        raise DomainError(f"lambda_max must be positive and finite, got {lambda_max}")
    coeffs = chebyshev.chebinterpolate(
        lambda x: _vectorized(target, (x + 1.0) * lambda_max / 2.0), order
    )
    return ChebyshevFilter(coeffs=coeffs, lambda_max=lambda_max)


def estimate_lambda_max(
    laplacian: Union[Laplacian, np.ndarray, sp.spmatrix],
    kind: Optional[Union[str, LaplacianKind]] = None,
) -> float:
    """Upper estimate of the largest Laplacian eigenvalue

    Runs a Lanczos iteration (relative tolerance 1e-6, at most 500 iterations) and inflates
    the result by 1%. Normalized Laplacians use the bound 2. When the iteration does not
    converge, the trace is returned with a warning.

    Args:
        laplacian (Union[Laplacian, np.ndarray, sp.spmatrix]): PSD Laplacian.
        kind (Optional[Union[str, LaplacianKind]], optional): Laplacian kind, taken from
            the Laplacian object when None. Defaults to None.

    Returns:
        float: Positive estimate, at least 1e-12.
    """
    if kind is None and isinstance(laplacian, Laplacian):
        kind = laplacian.kind
    operator = sp.csr_matrix(_as_operator(laplacian))
    operator.eliminate_zeros()
    if operator.nnz == 0:
        return LAMBDA_MAX_FLOOR
    if kind is not None and LaplacianKind.parse(kind) == LaplacianKind.NORMALIZED:
        return 2.0
    num_nodes = operator.shape[0]
    if num_nodes <= 2:
        largest = float(np.linalg.eigvalsh(operator.toarray())[-1])
    else:
        start = np.random.default_rng(0).uniform(0.5, 1.5, size=num_nodes)
        try:
            largest = float(
                eigsh(
                    operator,
                    k=1,
                    which="LA",
                    tol=POWER_ITERATION_TOL,
                    maxiter=POWER_ITERATION_MAXITER,
                    v0=start,
                    return_eigenvectors=False,
                )[0]
            )
        except ArpackNoConvergence:
            bound = float(operator.diagonal().sum())
            logging.warning(
                "Largest eigenvalue estimation did not converge, using trace bound %g", bound
            )
            return max(bound, LAMBDA_MAX_FLOOR)
    return max(largest * LAMBDA_MAX_MARGIN, LAMBDA_MAX_FLOOR)
