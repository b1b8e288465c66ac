"""Joint low-pass filtering of a noisy dynamic mesh"""

from dataclasses import dataclass
from typing import List

import numpy as np

from ..filters import (
    FilterPreset,
    PresetName,
    joint_filter,
    temporal_filter_from_preset,
    vertex_filters_from_preset,
)
from ..graph import dirichlet_s2
from ..synth import gen_dynamic_mesh
from .methods import relative_error


@dataclass
class FilterDemoReport:
    channel: int
    s2_clean: float
    s2_noisy: float
    s2_filtered: float
    error_noisy: float
    error_filtered: float
    seed: int


def run_filter_demo(
    frames: int = 16,
    resolution: int = 8,
    noise_std: float = 0.05,
    vertex_cutoff: float = 0.3,
    temporal_cutoff: float = 0.5,
    order: int = 16,
    seed: int = 0,
) -> List[FilterDemoReport]:
    """Smoothness and error of every mesh channel before and after a joint low-pass

    Args:
        frames (int, optional): Number of frames. Defaults to 16.
        resolution (int, optional): Grid side. Defaults to 8.
        noise_std (float, optional): Standard deviation of the added noise. Defaults to 0.05.
        vertex_cutoff (float, optional): Low-pass cutoff as a fraction of lambda_max. Defaults to 0.3.
        temporal_cutoff (float, optional): Low-pass cutoff as a fraction of Nyquist. Defaults to 0.5.
        order (int, optional): Chebyshev order. Defaults to 16.
        seed (int, optional): Seed of the mesh phase and of the noise. Defaults to 0.

    Returns:
        List[FilterDemoReport]: One report per channel.
    """
    dg, clean = gen_dynamic_mesh(frames, resolution, seed=seed)
    noisy = clean + np.random.default_rng([seed, 2]).normal(0.0, noise_std, clean.shape)
    vertex_filters = vertex_filters_from_preset(
        dg, FilterPreset(PresetName.LOW_PASS, (vertex_cutoff,)), order
    )
    temporal_filter = temporal_filter_from_preset(
        FilterPreset(PresetName.LOW_PASS, (temporal_cutoff,)), frames
    )
    filtered = joint_filter(dg, noisy, vertex_filters, temporal_filter)
    return [
        FilterDemoReport(
            channel=c,
            s2_clean=dirichlet_s2(dg, clean[..., c]),
            s2_noisy=dirichlet_s2(dg, noisy[..., c]),
            s2_filtered=dirichlet_s2(dg, filtered[..., c]),
            error_noisy=relative_error(clean[..., c], noisy[..., c]),
            error_filtered=relative_error(clean[..., c], filtered[..., c]),
            seed=seed,
        )
        for c in range(clean.shape[2])
    ]
