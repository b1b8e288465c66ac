"""Spectral transforms compared in the experiments and coefficient selection rules"""

import math
from abc import ABC, abstractmethod
from enum import Enum
from typing import Sequence, Union

import numpy as np

from ..graph import (
    DENSE_SIZE_GUARD,
    DynamicGraph,
    LaplacianKind,
    build_joint_laplacian,
    unvectorize,
    vectorize,
)
from ..spectral import (
    ad_basis,
    eft_forward,
    eft_inverse,
    gft_bases,
    stack_bases,
    unitary_time_fft,
)
from ..utils.errors import DomainError


class MethodName(str, Enum):
    EFT = "EFT"
    AD = "AD"
    DFT_ONLY = "DFTOnly"
    GFT_ONLY = "GFTOnly"

    @classmethod
    def parse(cls, value: Union[str, "MethodName"]) -> "MethodName":
        if isinstance(value, MethodName):
            return value
        for member in cls:
            if member.value.lower() == str(value).lower():
                return member
        raise DomainError(f"Unknown method {value!r}")


ALL_METHODS = tuple(MethodName)


class SpectralMethod(ABC):
    """Orthonormal transform of N x T signals, applied channel-wise to N x T x C signals"""

    name: MethodName

    def __init__(
        self,
        dg: DynamicGraph,
        kind: Union[str, LaplacianKind] = LaplacianKind.COMBINATORIAL,
    ) -> None:
        self.dg = dg
        self.kind = LaplacianKind.parse(kind)

    @abstractmethod
    def _forward(self, signal: np.ndarray) -> np.ndarray:
        """Coefficients of an N x T signal"""

    @abstractmethod
    def _inverse(self, coefficients: np.ndarray) -> np.ndarray:
        """N x T signal of coefficients"""

    def forward(self, signal: np.ndarray) -> np.ndarray:
        signal = self.dg.check_signal(signal)
        if signal.ndim == 3:
            return np.stack(
                [self._forward(signal[..., c]) for c in range(signal.shape[2])], axis=-1
            )
        return self._forward(signal)

    def inverse(self, coefficients: np.ndarray) -> np.ndarray:
        """Reconstruction, real part only"""
        if coefficients.ndim == 3:
            return np.stack(
                [self.inverse(coefficients[..., c]) for c in range(coefficients.shape[2])],
                axis=-1,
            )
        return np.real(self._inverse(coefficients))


class EFTMethod(SpectralMethod):
    name = MethodName.EFT

    def __init__(self, dg: DynamicGraph, kind=LaplacianKind.COMBINATORIAL) -> None:
        super().__init__(dg, kind)
        self.bases = gft_bases(dg, self.kind)

    def _forward(self, signal: np.ndarray) -> np.ndarray:
        return eft_forward(self.dg, signal, self.kind, bases=self.bases).values

    def _inverse(self, coefficients: np.ndarray) -> np.ndarray:
        return eft_inverse(self.dg, coefficients, self.kind, bases=self.bases)


class ADMethod(SpectralMethod):
    name = MethodName.AD

    def __init__(
        self,
        dg: DynamicGraph,
        kind=LaplacianKind.COMBINATORIAL,
        max_size: int = DENSE_SIZE_GUARD,
    ) -> None:
        super().__init__(dg, kind)
        self.basis = ad_basis(build_joint_laplacian(dg, self.kind), max_size=max_size)

    def _forward(self, signal: np.ndarray) -> np.ndarray:
        return unvectorize(self.basis.vectors @ vectorize(signal), *self.dg.shape)

    def _inverse(self, coefficients: np.ndarray) -> np.ndarray:
        return unvectorize(self.basis.vectors.T @ vectorize(coefficients), *self.dg.shape)


class DFTOnlyMethod(SpectralMethod):
    name = MethodName.DFT_ONLY

    def _forward(self, signal: np.ndarray) -> np.ndarray:
        return unitary_time_fft(signal)

    def _inverse(self, coefficients: np.ndarray) -> np.ndarray:
        return np.fft.ifft(coefficients, axis=1, norm="ortho")


class GFTOnlyMethod(SpectralMethod):
    name = MethodName.GFT_ONLY

    def __init__(self, dg: DynamicGraph, kind=LaplacianKind.COMBINATORIAL) -> None:
        super().__init__(dg, kind)
        self.stack = stack_bases(gft_bases(dg, self.kind))

    def _forward(self, signal: np.ndarray) -> np.ndarray:
        return np.einsum("tij,jt->it", self.stack, signal)

    def _inverse(self, coefficients: np.ndarray) -> np.ndarray:
        return np.einsum("tji,jt->it", self.stack, coefficients)


METHODS = {
    MethodName.EFT: EFTMethod,
    MethodName.AD: ADMethod,
    MethodName.DFT_ONLY: DFTOnlyMethod,
    MethodName.GFT_ONLY: GFTOnlyMethod,
}


def build_method(
    name: Union[str, MethodName],
    dg: DynamicGraph,
    kind: Union[str, LaplacianKind] = LaplacianKind.COMBINATORIAL,
    max_size: int = DENSE_SIZE_GUARD,
) -> SpectralMethod:
    """Instantiate a method by name

    Raises:
        DomainError: When the name is unknown.
        SizeGuardError: When AD is requested above max_size.
    """
    name = MethodName.parse(name)
    if name == MethodName.AD:
        return ADMethod(dg, kind, max_size=max_size)
    return METHODS[name](dg, kind)


def parse_methods(names: Union[None, str, Sequence[Union[str, MethodName]]]) -> tuple:
    if names is None:
        return ALL_METHODS
    if isinstance(names, str):
        names = [n for n in names.split(",") if n.strip()]
    return tuple(MethodName.parse(n.strip() if isinstance(n, str) else n) for n in names)


def _ranking(coefficients: np.ndarray) -> np.ndarray:
    return np.argsort(-np.abs(coefficients).ravel(), kind="stable")


def keep_top_fraction(coefficients: np.ndarray, keep_fraction: float) -> np.ndarray:
    """Zero all but the ceil(keep * size) coefficients of largest magnitude

    Args:
        coefficients (np.ndarray): Coefficients of any shape.
        keep_fraction (float): Fraction in (0, 1].

    Raises:
        DomainError: When the fraction is outside (0, 1].

    Returns:
        np.ndarray: Thresholded copy.
    """
    if not 0.0 < keep_fraction <= 1.0:
        raise DomainError(f"keep_fraction must lie in (0, 1], got {keep_fraction}")
    count = min(coefficients.size, math.ceil(keep_fraction * coefficients.size - 1e-9))
    kept = np.zeros(coefficients.size, dtype=bool)
    kept[_ranking(coefficients)[:count]] = True
    return np.where(kept.reshape(coefficients.shape), coefficients, 0)


def remove_lowest_percentile(coefficients: np.ndarray, percentile: float) -> np.ndarray:
    """Zero the floor(p / 100 * size) coefficients of smallest magnitude

    Args:
        coefficients (np.ndarray): Coefficients of any shape.
        percentile (float): Percentile in [0, 100].

    Raises:
        DomainError: When the percentile is outside [0, 100].

    Returns:
        np.ndarray: Thresholded copy.
    """
    if not 0.0 <= percentile <= 100.0:
        raise DomainError(f"Percentile must lie in [0, 100], got {percentile}")
    removed = math.floor(percentile / 100.0 * coefficients.size + 1e-9)
    kept = np.zeros(coefficients.size, dtype=bool)
    kept[_ranking(coefficients)[: coefficients.size - removed]] = True
    return np.where(kept.reshape(coefficients.shape), coefficients, 0)


def relative_error(reference: np.ndarray, estimate: np.ndarray) -> float:
    """||reference - estimate||_F / ||reference||_F (0 for a zero reference matched exactly)"""
    norm = np.linalg.norm(reference)
    difference = np.linalg.norm(np.asarray(reference) - np.asarray(estimate))
    if norm == 0:
        return 0.0 if difference == 0 else float("inf")
    return float(difference / norm)
