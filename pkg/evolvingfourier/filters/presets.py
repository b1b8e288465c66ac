"""Ideal brick-wall filter presets on normalized frequency grids"""

from dataclasses import dataclass
from enum import Enum
from typing import List, Sequence, Tuple, Union

import numpy as np

from ..graph import DynamicGraph, LaplacianKind, build_laplacian
from ..utils.errors import DomainError
from .chebyshev import ChebyshevFilter, estimate_lambda_max, fit_chebyshev
from .temporal import TemporalFilter


class PresetName(str, Enum):
    LOW_PASS = "LowPass"
    HIGH_PASS = "HighPass"
    BAND_PASS = "BandPass"
    BAND_STOP = "BandStop"
    ALL_PASS = "AllPass"

    @classmethod
    def parse(cls, value: Union[str, "PresetName"]) -> "PresetName":
        """Accept LowPass, lowpass, low_pass, low-pass, ..."""
        if isinstance(value, PresetName):
            return value
        normalized = str(value).replace("_", "").replace("-", "").lower()
        for member in cls:
            if member.value.lower() == normalized:
                return member
        raise DomainError(f"Unknown filter preset {value!r}")


CUTOFF_COUNT = {
    PresetName.LOW_PASS: 1,
    PresetName.HIGH_PASS: 1,
    PresetName.BAND_PASS: 2,
    PresetName.BAND_STOP: 2,
    PresetName.ALL_PASS: 0,
}


@dataclass(frozen=True)
class FilterPreset:
    """Named ideal filter with cutoffs in normalized units, bands half-open [low, high)"""

    name: PresetName
    cutoffs: Tuple[float, ...] = ()

    def __post_init__(self) -> None:
        name = PresetName.parse(self.name)
        cutoffs = tuple(float(c) for c in self.cutoffs)
        if len(cutoffs) != CUTOFF_COUNT[name]:
            raise DomainError(
                f"{name.value} takes {CUTOFF_COUNT[name]} cutoff(s), got {len(cutoffs)}"
            )
        if any(not 0.0 < c < 1.0 for c in cutoffs):
            raise DomainError(f"Cutoffs must lie strictly inside (0, 1), got {cutoffs}")
        if len(cutoffs) == 2 and not cutoffs[0] < cutoffs[1]:
            raise DomainError(f"Band cutoffs must be increasing, got {cutoffs}")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "cutoffs", cutoffs)


def preset_response(preset: FilterPreset, grid: np.ndarray) -> np.ndarray:
    """Sample the ideal response of a preset on a normalized frequency grid

    Args:
        preset (FilterPreset): Preset.
        grid (np.ndarray): Normalized frequencies.

    Returns:
        np.ndarray: 0/1 response of the same shape as the grid.
    """
    grid = np.asarray(grid, dtype=float)
    if preset.name == PresetName.ALL_PASS:
        passed = np.ones(grid.shape, dtype=bool)
    elif preset.name == PresetName.LOW_PASS:
        passed = grid < preset.cutoffs[0]
    elif preset.name == PresetName.HIGH_PASS:
        passed = grid >= preset.cutoffs[0]
    else:
        low, high = preset.cutoffs
        band = (grid >= low) & (grid < high)
        passed = band if preset.name == PresetName.BAND_PASS else ~band
    return passed.astype(float)


def temporal_grid(num_timesteps: int) -> np.ndarray:
    """Fraction of the Nyquist frequency carried by every DFT bin, min(k, T - k) / (T / 2)"""
    k = np.arange(num_timesteps)
    return np.minimum(k, num_timesteps - k) / (num_timesteps / 2.0)


def vertex_grid(eigenvalues: np.ndarray, lambda_max: float) -> np.ndarray:
    """Eigenvalues as a fraction of lambda_max"""
    return np.asarray(eigenvalues, dtype=float) / lambda_max


def temporal_filter_from_preset(preset: FilterPreset, num_timesteps: int) -> TemporalFilter:
    """Conjugate-symmetric temporal filter realizing a preset on the DFT bins"""
    return TemporalFilter(preset_response(preset, temporal_grid(num_timesteps)))


def vertex_filters_from_preset(
    dg: DynamicGraph,
    preset: FilterPreset,
    order: int = 16,
    kind: Union[str, LaplacianKind] = LaplacianKind.COMBINATORIAL,
) -> List[ChebyshevFilter]:
    """One Chebyshev fit of the preset per snapshot, each with its own lambda_max

    Args:
        dg (DynamicGraph): Dynamic graph.
        preset (FilterPreset): Preset on the lambda / lambda_max axis.
        order (int, optional): Chebyshev order. Defaults to 16.
        kind (Union[str, LaplacianKind], optional): Laplacian kind. Defaults to combinatorial.

    Returns:
        List[ChebyshevFilter]: T filters.
    """
    filters = []
    for graph in dg.snapshots:
        lambda_max = estimate_lambda_max(build_laplacian(graph, kind))
        filters.append(
            fit_chebyshev(
                lambda x, lm=lambda_max: preset_response(preset, vertex_grid(x, lm)),
                order,
                lambda_max,
            )
        )
    return filters


def parse_preset(name: str, cutoffs: Sequence[float] = ()) -> FilterPreset:
    return FilterPreset(PresetName.parse(name), tuple(cutoffs))
