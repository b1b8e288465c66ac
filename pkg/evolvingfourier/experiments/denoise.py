"""Denoising of synthetic time-vertex signals by coefficient thresholding"""

import logging
from dataclasses import dataclass, field
from functools import partial
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from ..graph import DENSE_SIZE_GUARD
from ..synth import SynthConfig, gen_evolving_graph, gen_signal
from ..utils.errors import DomainError, SizeGuardError
from ..utils.parallel import run_parallel
from .methods import (
    MethodName,
    build_method,
    keep_top_fraction,
    parse_methods,
    relative_error,
)

DEFAULT_KEEP_FRACTIONS = (0.05, 0.1, 0.2, 0.5)


@dataclass
class DenoiseReport:
    method: str
    keep_fraction: float
    error: float
    seed: int
    skipped: bool = False
    config: Dict[str, Any] = field(default_factory=dict, repr=False)


def _denoise_seed(
    cfg: SynthConfig,
    methods: Sequence[MethodName],
    keep_fractions: Sequence[float],
    max_ad_size: int,
) -> List[DenoiseReport]:
    dg = gen_evolving_graph(cfg)
    clean, noisy = gen_signal(dg, cfg)
    echo = cfg.to_dict()
    reports = []
    for name in methods:
        try:
            method = build_method(name, dg, cfg.kind, max_size=max_ad_size)
        except SizeGuardError:
            logging.info(
                "Skipping %s for seed %d: N*T=%d above %d", name.value, cfg.seed, cfg.n * cfg.t, max_ad_size
            )
            reports.extend(
                DenoiseReport(name.value, keep, float("nan"), cfg.seed, skipped=True, config=echo)
                for keep in keep_fractions
            )
            continue
        coefficients = method.forward(noisy)
        for keep in keep_fractions:
            estimate = method.inverse(keep_top_fraction(coefficients, keep))
            reports.append(
                DenoiseReport(
                    method=name.value,
                    keep_fraction=float(keep),
                    error=relative_error(clean, estimate),
                    seed=cfg.seed,
                    config=echo,
                )
            )
    return reports


def run_denoise(
    cfg: SynthConfig,
    methods: Optional[Sequence] = None,
    keep_fractions: Sequence[float] = DEFAULT_KEEP_FRACTIONS,
    seeds: Sequence[int] = (0,),
    max_ad_size: int = DENSE_SIZE_GUARD,
    cores: int = 1,
) -> List[DenoiseReport]:
    """Reconstruction error of every method after keeping the largest coefficients of the noisy signal

    Args:
        cfg (SynthConfig): Generator config, its seed is replaced by every entry of seeds.
        methods (Optional[Sequence], optional): Methods to compare. Defaults to all of them.
        keep_fractions (Sequence[float], optional): Fractions of coefficients kept.
            Defaults to DEFAULT_KEEP_FRACTIONS.
        seeds (Sequence[int], optional): Repetitions. Defaults to (0,).
        max_ad_size (int, optional): Largest N*T for which AD runs. Defaults to 4096.
        cores (int, optional): Worker processes over seeds. Defaults to 1.

    Raises:
        DomainError: When a fraction is outside (0, 1] or no seeds are given.

    Returns:
        List[DenoiseReport]: One report per seed, method and keep fraction.
    """
    methods = parse_methods(methods)
    keep_fractions = [float(keep) for keep in keep_fractions]
    if len(seeds) == 0 or len(keep_fractions) == 0:
        raise DomainError("Denoising needs at least one seed and one keep fraction")
    for keep in keep_fractions:
        if not 0.0 < keep <= 1.0 or not np.isfinite(keep):
            raise DomainError(f"keep_fraction must lie in (0, 1], got {keep}")
    task = partial(
        _denoise_seed, methods=methods, keep_fractions=keep_fractions, max_ad_size=max_ad_size
    )
    configs = [cfg.with_updates(seed=int(seed)) for seed in seeds]
    per_seed = run_parallel(task, configs, cores=cores, description="denoise")
    return [report for reports in per_seed for report in reports]
