"""Element-wise filtering of the DFT coefficients along time"""

import logging
from dataclasses import dataclass

import numpy as np

from ..utils.errors import ShapeError

SYMMETRY_TOL = 1e-12


@dataclass(frozen=True)
class TemporalFilter:
    """
    Response F[k] per DFT bin k. A T x d response filters every channel with its
    own column.
    """

    response: np.ndarray

    def __post_init__(self) -> None:
        response = np.asarray(self.response)
        if response.ndim not in (1, 2) or response.shape[0] == 0:
            raise ShapeError(f"Temporal response must be T or T x d, got shape {response.shape}")
        object.__setattr__(self, "response", response)

    @property
    def num_timesteps(self) -> int:
        return self.response.shape[0]

    def is_conjugate_symmetric(self, tol: float = SYMMETRY_TOL) -> bool:
        """Whether F[k] == conj(F[(T - k) mod T]) for every bin"""
        mirrored = np.roll(self.response[::-1], 1, axis=0)
        return bool(np.all(np.abs(self.response - np.conj(mirrored)) <= tol))

    @classmethod
    def all_pass(cls, num_timesteps: int) -> "TemporalFilter":
        return cls(np.ones(num_timesteps))


def temporal_filter_apply(temporal_filter: TemporalFilter, signal: np.ndarray) -> np.ndarray:
    """IDFT(F * DFT(X)) along axis 0 of a time-major signal

    Real signals filtered with a conjugate-symmetric response give a real output;
    otherwise the output is complex.

    Args:
        temporal_filter (TemporalFilter): Filter to apply.
        signal (np.ndarray): T or T x d signal.

    Raises:
        ShapeError: When the response length or channel count does not match.

    Returns:
        np.ndarray: Filtered signal.
    """
    signal = np.asarray(signal)
    response = temporal_filter.response
    if response.shape[0] != signal.shape[0]:
        raise ShapeError(
            f"Temporal response of length {response.shape[0]} does not match {signal.shape[0]} timesteps"
        )
    if response.ndim == 2:
        if signal.ndim != 2 or signal.shape[1] != response.shape[1]:
            raise ShapeError(
                f"Per-channel response of shape {response.shape} does not match signal {signal.shape}"
            )
    else:
        response = response.reshape((-1,) + (1,) * (signal.ndim - 1))
    spectrum = np.fft.fft(signal, axis=0, norm="ortho")
    filtered = np.fft.ifft(response * spectrum, axis=0, norm="ortho")
    if np.iscomplexobj(signal):
        return filtered
    if temporal_filter.is_conjugate_symmetric():
        return filtered.real
    logging.warning("Temporal response is not conjugate-symmetric, output of a real signal is complex")
    return filtered
