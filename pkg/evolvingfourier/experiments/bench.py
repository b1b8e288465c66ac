"""Wall-clock scaling of the EFT against the exact joint eigendecomposition"""

import logging
import time
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
import pandas as pd

from ..graph import DENSE_SIZE_GUARD, build_joint_laplacian
from ..spectral import ad_basis, eft_forward
from ..synth import SynthConfig, gen_evolving_graph

EFT_FORWARD = "eft_forward"
AD_BASIS = "ad_basis"


@dataclass
class ScalingBench:
    """
    timings has one row per (method, n, t) with the median seconds over repeats and a
    skipped flag; slopes has the fitted log-log slope of time against T per (method, n).
    """

    timings: pd.DataFrame
    slopes: pd.DataFrame

    def median_seconds(self, method: str, n: int, t: int) -> float:
        row = self.timings[
            (self.timings.method == method) & (self.timings.n == n) & (self.timings.t == t)
        ]
        return float(row.seconds.iloc[0])

    def slope(self, method: str, n: int) -> float:
        row = self.slopes[(self.slopes.method == method) & (self.slopes.n == n)]
        return float(row.slope.iloc[0])


def _median_time(function: Callable[[], object], repeats: int) -> float:
    durations = []
    for _ in range(repeats):
        start = time.perf_counter()
        function()
        durations.append(time.perf_counter() - start)
    return float(np.median(durations))


def run_scaling_bench(
    n_grid: Sequence[int] = (16,),
    t_grid: Sequence[int] = (16, 32, 64, 128),
    repeats: int = 3,
    max_ad_size: int = DENSE_SIZE_GUARD,
    seed: int = 0,
) -> ScalingBench:
    """Median wall-clock time of eft_forward and ad_basis over a grid of sizes

    The EFT time includes the snapshot eigendecompositions, the AD time excludes building
    the joint Laplacian. AD cells with N*T above max_ad_size are marked skipped.

    Args:
        n_grid (Sequence[int], optional): Node counts. Defaults to (16,).
        t_grid (Sequence[int], optional): Timestep counts. Defaults to (16, 32, 64, 128).
        repeats (int, optional): Timed repetitions per cell. Defaults to 3.
        max_ad_size (int, optional): Largest N*T for AD. Defaults to 4096.
        seed (int, optional): Generator seed. Defaults to 0.

    Returns:
        ScalingBench: Timing and slope tables.
    """
    rows = []
    for n in n_grid:
        for t in t_grid:
            cfg = SynthConfig(n=int(n), t=int(t), seed=seed, edge_prob=0.5)
            dg = gen_evolving_graph(cfg)
            signal = np.random.default_rng(seed).standard_normal(dg.shape)
            rows.append(
                {
                    "method": EFT_FORWARD,
                    "n": n,
                    "t": t,
                    "seconds": _median_time(lambda: eft_forward(dg, signal), repeats),
                    "skipped": False,
                }
            )
            if n * t > max_ad_size:
                logging.info("Skipping ad_basis at N=%d, T=%d", n, t)
                rows.append({"method": AD_BASIS, "n": n, "t": t, "seconds": np.nan, "skipped": True})
                continue
            joint = build_joint_laplacian(dg)
            rows.append(
                {
                    "method": AD_BASIS,
                    "n": n,
                    "t": t,
                    "seconds": _median_time(lambda: ad_basis(joint, max_size=max_ad_size), repeats),
                    "skipped": False,
                }
            )
            logging.debug("Timed N=%d, T=%d", n, t)
    timings = pd.DataFrame(rows)

    slopes = []
    for (method, n), group in timings.groupby(["method", "n"], sort=True):
        group = group[~group.skipped]
        slope = np.nan
        if group.t.nunique() >= 2:
            slope = float(
                np.polyfit(np.log(group.t.to_numpy(float)), np.log(group.seconds.to_numpy(float)), 1)[0]
            )
        slopes.append({"method": method, "n": n, "slope": slope})
    return ScalingBench(timings=timings, slopes=pd.DataFrame(slopes))
