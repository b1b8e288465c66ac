"""Probe of the distance between the EFT basis and the exact joint eigenbasis"""

import math
from dataclasses import dataclass
from functools import partial
from typing import List, Optional, Sequence, Union

import numpy as np

from ..graph import (
    DENSE_SIZE_GUARD,
    DynamicGraph,
    LaplacianKind,
    build_joint_laplacian,
    check_size_guard,
)
from ..spectral import (
    ad_basis,
    align_bases,
    eft_joint_frequencies,
    eft_matrix,
    gft_bases,
    lipschitz_constant,
    pseudospectrum_bound,
    pseudospectrum_residuals,
)
from ..synth import SynthConfig, gen_evolving_graph
from ..utils.errors import DomainError
from ..utils.parallel import run_parallel

OMEGA_MAX = 2.0 * math.pi


@dataclass
class BoundReport:
    """
    diff_norm is the aligned Frobenius distance between the real EFT matrix and the AD
    basis, lipschitz the largest Frobenius norm of consecutive snapshot Laplacian
    differences, min_gap_g and min_gap_j the smallest eigenvalue gaps of the snapshot
    Laplacians and of the joint Laplacian.
    """

    perturb_scale: float
    diff_norm: float
    lipschitz: float
    min_gap_g: float
    min_gap_j: float
    residual_max: float
    bound_value: float
    omega_max: float = OMEGA_MAX
    seed: Optional[int] = None


def _min_gap(eigenvalues: np.ndarray) -> float:
    if len(eigenvalues) < 2:
        return 0.0
    return float(np.min(np.diff(np.sort(eigenvalues))))


def bound_report_for(
    dg: DynamicGraph,
    perturb_scale: float = 0.0,
    kind: Union[str, LaplacianKind] = LaplacianKind.COMBINATORIAL,
    max_size: int = DENSE_SIZE_GUARD,
    force_dense: bool = False,
    seed: Optional[int] = None,
) -> BoundReport:
    """Every BoundReport quantity of one dynamic graph

    Raises:
        SizeGuardError: When N*T exceeds max_size and force_dense is not set.
    """
    kind = LaplacianKind.parse(kind)
    check_size_guard(dg.num_nodes * dg.num_timesteps, max_size=max_size, force_dense=force_dense)
    bases = gft_bases(dg, kind)
    joint = build_joint_laplacian(dg, kind)
    exact = ad_basis(joint, max_size=max_size, force_dense=force_dense)
    approximate = eft_matrix(dg, kind, real=True, bases=bases, max_size=max_size, force_dense=force_dense)
    alignment = align_bases(
        exact.vectors,
        approximate,
        exact.eigenvalues,
        eft_joint_frequencies(dg, kind, real=True, bases=bases),
    )
    return BoundReport(
        perturb_scale=float(perturb_scale),
        diff_norm=alignment.difference,
        lipschitz=lipschitz_constant(dg, kind),
        min_gap_g=min(_min_gap(basis.eigenvalues) for basis in bases),
        min_gap_j=_min_gap(exact.eigenvalues),
        residual_max=float(pseudospectrum_residuals(dg, kind, bases).max()),
        bound_value=pseudospectrum_bound(dg, kind),
        seed=seed,
    )


def _probe(
    item, base_cfg: SynthConfig, max_size: int, force_dense: bool
) -> BoundReport:
    scale, seed = item
    cfg = base_cfg.with_updates(perturb_scale=scale * base_cfg.perturb_scale, seed=seed)
    dg = gen_evolving_graph(cfg)
    return bound_report_for(
        dg, scale, cfg.kind, max_size=max_size, force_dense=force_dense, seed=seed
    )


def run_bound_probe(
    base_cfg: SynthConfig,
    scales: Sequence[float] = (0.0, 0.25, 0.5, 1.0),
    seeds: Sequence[int] = (0,),
    max_size: int = DENSE_SIZE_GUARD,
    force_dense: bool = False,
    cores: int = 1,
) -> List[BoundReport]:
    """BoundReport for every scale and seed, perturbation scale s * base_cfg.perturb_scale

    The same seed draws the same skeleton and perturbation directions at every scale.

    Args:
        base_cfg (SynthConfig): Generator config at scale 1.
        scales (Sequence[float], optional): Multipliers of the perturbation, must include 0.
            Defaults to (0, 1/4, 1/2, 1).
        seeds (Sequence[int], optional): Repetitions. Defaults to (0,).
        max_size (int, optional): Size guard on N*T. Defaults to 4096.
        force_dense (bool, optional): Bypass the size guard. Defaults to False.
        cores (int, optional): Worker processes. Defaults to 1.

    Raises:
        DomainError: When the scales do not include 0 or contain negative values.
        SizeGuardError: When the grid is too large for AD.

    Returns:
        List[BoundReport]: Reports ordered by scale, then seed.
    """
    scales = [float(s) for s in scales]
    if 0.0 not in scales:
        raise DomainError("Bound probe scales must include 0")
    if any(s < 0 or not np.isfinite(s) for s in scales):
        raise DomainError(f"Scales must be finite and nonnegative, got {scales}")
    check_size_guard(base_cfg.n * base_cfg.t, max_size=max_size, force_dense=force_dense)
    task = partial(_probe, base_cfg=base_cfg, max_size=max_size, force_dense=force_dense)
    items = [(scale, int(seed)) for scale in scales for seed in seeds]
    return run_parallel(task, items, cores=cores, description="bound")
