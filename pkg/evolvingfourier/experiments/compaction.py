"""Energy compaction: error after removing the weakest coefficients"""

import logging
from dataclasses import dataclass
from functools import partial
from typing import List, Optional, Sequence, Union

import numpy as np

from ..graph import DENSE_SIZE_GUARD, DynamicGraph, LaplacianKind
from ..synth import gen_dynamic_mesh
from ..utils.errors import DomainError, SizeGuardError
from ..utils.parallel import run_parallel
from .methods import build_method, parse_methods, relative_error, remove_lowest_percentile

DEFAULT_PERCENTILES = (0, 10, 20, 30, 40, 50, 60, 70, 80, 90, 95, 100)


@dataclass
class CompactionReport:
    method: str
    percentile_removed: float
    error: float
    seed: Optional[int] = None
    skipped: bool = False


def _check_percentiles(percentiles: Sequence[float]) -> List[float]:
    percentiles = [float(p) for p in percentiles]
    if len(percentiles) == 0:
        raise DomainError("At least one percentile is required")
    for p in percentiles:
        if not 0.0 <= p <= 100.0:
            raise DomainError(f"Percentile must lie in [0, 100], got {p}")
    return percentiles


def run_compaction(
    dg: DynamicGraph,
    signal: np.ndarray,
    methods: Optional[Sequence] = None,
    percentiles: Sequence[float] = DEFAULT_PERCENTILES,
    kind: Union[str, LaplacianKind] = LaplacianKind.COMBINATORIAL,
    max_ad_size: int = DENSE_SIZE_GUARD,
    seed: Optional[int] = None,
) -> List[CompactionReport]:
    """Relative error ||X - X_r||_F / ||X||_F after zeroing the lowest-magnitude coefficients

    Args:
        dg (DynamicGraph): Dynamic graph.
        signal (np.ndarray): N x T or N x T x C signal, channels are transformed separately
            and ranked together.
        methods (Optional[Sequence], optional): Methods to compare. Defaults to all of them.
        percentiles (Sequence[float], optional): Percentages of coefficients removed.
            Defaults to DEFAULT_PERCENTILES.
        kind (Union[str, LaplacianKind], optional): Laplacian kind. Defaults to combinatorial.
        max_ad_size (int, optional): Largest N*T for which AD runs. Defaults to 4096.
        seed (Optional[int], optional): Seed echoed in the reports. Defaults to None.

    Raises:
        DomainError: When a percentile is outside [0, 100].
        ShapeError: When the signal does not match the graph.

    Returns:
        List[CompactionReport]: One report per method and percentile.
    """
    percentiles = _check_percentiles(percentiles)
    signal = dg.check_signal(signal)
    reports = []
    for name in parse_methods(methods):
        try:
            method = build_method(name, dg, kind, max_size=max_ad_size)
        except SizeGuardError:
            logging.info("Skipping %s: N*T=%d above %d", name.value, dg.num_nodes * dg.num_timesteps, max_ad_size)
            reports.extend(
                CompactionReport(name.value, p, float("nan"), seed, skipped=True) for p in percentiles
            )
            continue
        coefficients = method.forward(signal)
        for p in percentiles:
            estimate = method.inverse(remove_lowest_percentile(coefficients, p))
            reports.append(
                CompactionReport(
                    method=name.value,
                    percentile_removed=p,
                    error=relative_error(signal, estimate),
                    seed=seed,
                )
            )
    return reports


def _mesh_seed(
    seed: int,
    frames: int,
    resolution: int,
    methods: Sequence,
    percentiles: Sequence[float],
    max_ad_size: int,
) -> List[CompactionReport]:
    dg, signal = gen_dynamic_mesh(frames, resolution, seed=seed)
    return run_compaction(
        dg, signal, methods=methods, percentiles=percentiles, max_ad_size=max_ad_size, seed=seed
    )


def run_mesh_compaction(
    frames: int = 16,
    resolution: int = 8,
    methods: Optional[Sequence] = None,
    percentiles: Sequence[float] = (50, 80, 95),
    seeds: Sequence[int] = (0,),
    max_ad_size: int = DENSE_SIZE_GUARD,
    cores: int = 1,
) -> List[CompactionReport]:
    """run_compaction on synthetic dynamic meshes, one mesh phase per seed"""
    task = partial(
        _mesh_seed,
        frames=frames,
        resolution=resolution,
        methods=parse_methods(methods),
        percentiles=_check_percentiles(percentiles),
        max_ad_size=max_ad_size,
    )
    per_seed = run_parallel(task, [int(seed) for seed in seeds], cores=cores, description="compaction")
    return [report for reports in per_seed for report in reports]
