"""Joint time-vertex filtering"""

import logging
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..graph import DynamicGraph, LaplacianKind, build_laplacian
from ..pipeline import PipelineStep
from ..utils.errors import DomainError, ShapeError
from .chebyshev import ChebyshevFilter, chebyshev_apply, estimate_lambda_max
from .presets import (
    parse_preset,
    temporal_filter_from_preset,
    vertex_filters_from_preset,
)
from .temporal import TemporalFilter, temporal_filter_apply

FILTER_ORDERS = ("vertex_first", "time_first")

VertexFilters = Union[None, ChebyshevFilter, Sequence[ChebyshevFilter]]


def _per_timestep(vertex_filters: VertexFilters, num_timesteps: int) -> List[Optional[ChebyshevFilter]]:
    if vertex_filters is None or isinstance(vertex_filters, ChebyshevFilter):
        return [vertex_filters] * num_timesteps
    vertex_filters = list(vertex_filters)
    if len(vertex_filters) != num_timesteps:
        raise ShapeError(
            f"Expected {num_timesteps} vertex filters, got {len(vertex_filters)}"
        )
    return vertex_filters


def _temporal_kernel(temporal_filter: TemporalFilter) -> np.ndarray:
    """T x T matrix K with K[s, t] the weight of source time t in output time s"""
    num_timesteps = temporal_filter.num_timesteps
    identity = np.eye(num_timesteps)
    spectrum = np.fft.fft(identity, axis=0, norm="ortho")
    return np.fft.ifft(temporal_filter.response[:, None] * spectrum, axis=0, norm="ortho")


def joint_filter(
    dg: DynamicGraph,
    signal: np.ndarray,
    vertex_filters: VertexFilters = None,
    temporal_filter: Optional[TemporalFilter] = None,
    kind: Union[str, LaplacianKind] = LaplacianKind.COMBINATORIAL,
    order: str = "vertex_first",
) -> np.ndarray:
    """Filter a time-vertex signal along the vertex and the time domain

    vertex_first applies the Chebyshev filter of every snapshot to its column and then
    the temporal filter to every node row. time_first spreads every column over the
    output times with the temporal kernel before applying the vertex filter of its
    source snapshot. Both orders give the same output.

    Args:
        dg (DynamicGraph): Dynamic graph.
        signal (np.ndarray): N x T signal, or N x T x C for C channels filtered independently.
        vertex_filters (VertexFilters, optional): One filter for all snapshots or one per
            snapshot. None is the identity. Defaults to None.
        temporal_filter (Optional[TemporalFilter], optional): Temporal filter. None is
            all-pass. Defaults to None.
        kind (Union[str, LaplacianKind], optional): Laplacian kind. Defaults to combinatorial.
        order (str, optional): vertex_first or time_first. Defaults to "vertex_first".

    Raises:
        ShapeError: When the filters do not match the graph.
        DomainError: When the order is unknown.

    Returns:
        np.ndarray: Filtered signal, real for real input and a conjugate-symmetric temporal response.
    """
    if order not in FILTER_ORDERS:
        raise DomainError(f"Unknown filter order {order!r}")
    signal = dg.check_signal(signal)
    if signal.ndim == 3:
        return np.stack(
            [
                joint_filter(dg, signal[..., c], vertex_filters, temporal_filter, kind, order)
                for c in range(signal.shape[2])
            ],
            axis=-1,
        )
    if signal.ndim != 2:
        raise ShapeError(f"Expected an N x T signal, got shape {signal.shape}")
    if temporal_filter is None:
        temporal_filter = TemporalFilter.all_pass(dg.num_timesteps)
    if temporal_filter.num_timesteps != dg.num_timesteps or temporal_filter.response.ndim != 1:
        raise ShapeError(
            f"Temporal response of shape {temporal_filter.response.shape} does not match T={dg.num_timesteps}"
        )
    filters = _per_timestep(vertex_filters, dg.num_timesteps)
    laplacians = [build_laplacian(graph, kind) for graph in dg.snapshots]

    def vertex_step(t: int, values: np.ndarray) -> np.ndarray:
        if filters[t] is None:
            return values
        return chebyshev_apply(laplacians[t], filters[t], values)

    if order == "vertex_first":
        vertex_filtered = np.stack(
            [vertex_step(t, signal[:, t]) for t in range(dg.num_timesteps)], axis=1
        )
        return temporal_filter_apply(temporal_filter, vertex_filtered.T).T

    kernel = _temporal_kernel(temporal_filter)
    out = np.zeros(signal.shape, dtype=complex)
    for t in range(dg.num_timesteps):
        out += vertex_step(t, np.outer(signal[:, t], kernel[:, t]))
    if not np.iscomplexobj(signal) and temporal_filter.is_conjugate_symmetric():
        return out.real
    return out


def filters_from_spec(
    spec: Dict[str, Any],
    dg: DynamicGraph,
    kind: Union[str, LaplacianKind] = LaplacianKind.COMBINATORIAL,
) -> Tuple[VertexFilters, Optional[TemporalFilter]]:
    """Build the filters described by a filter JSON document

    Args:
        spec (Dict[str, Any]): {"vertex": {...}, "temporal": {...}}; missing or empty
            sections mean identity.
        dg (DynamicGraph): Graph the filters will be applied on.
        kind (Union[str, LaplacianKind], optional): Laplacian kind. Defaults to combinatorial.

    Raises:
        DomainError: When a section has an unknown type or invalid parameters.
        ShapeError: When an explicit temporal response has the wrong length.

    Returns:
        Tuple[VertexFilters, Optional[TemporalFilter]]: Per-snapshot vertex filters and
            the temporal filter.
    """
    vertex = spec.get("vertex") or {}
    temporal = spec.get("temporal") or {}

    vertex_filters: VertexFilters = None
    vertex_type = vertex.get("type")
    if vertex_type == "chebyshev":
        coeffs = vertex.get("coeffs")
        if not coeffs:
            raise DomainError("Chebyshev vertex filter needs 'coeffs'")
        if "lambda_max" in vertex:
            vertex_filters = ChebyshevFilter(np.asarray(coeffs, dtype=float), vertex["lambda_max"])
        else:
            vertex_filters = [
                ChebyshevFilter(
                    np.asarray(coeffs, dtype=float),
                    estimate_lambda_max(build_laplacian(graph, kind)),
                )
                for graph in dg.snapshots
            ]
    elif vertex_type == "preset":
        preset = parse_preset(vertex.get("preset", "AllPass"), vertex.get("cutoffs", ()))
        vertex_filters = vertex_filters_from_preset(dg, preset, int(vertex.get("order", 16)), kind)
    elif vertex_type is not None:
        raise DomainError(f"Unknown vertex filter type {vertex_type!r}")

    temporal_filter = None
    temporal_type = temporal.get("type")
    if temporal_type == "preset":
        preset = parse_preset(temporal.get("preset", "AllPass"), temporal.get("cutoffs", ()))
        temporal_filter = temporal_filter_from_preset(preset, dg.num_timesteps)
    elif temporal_type == "explicit":
        real = np.asarray(temporal.get("response_re", []), dtype=float)
        imag = np.asarray(temporal.get("response_im", np.zeros_like(real)), dtype=float)
        if real.shape != (dg.num_timesteps,) or imag.shape != real.shape:
            raise ShapeError(
                f"Explicit temporal response must have {dg.num_timesteps} real and imaginary entries"
            )
        response = real if not np.any(imag) else real + 1j * imag
        temporal_filter = TemporalFilter(response)
    elif temporal_type is not None:
        raise DomainError(f"Unknown temporal filter type {temporal_type!r}")
    return vertex_filters, temporal_filter


class JointFilter(PipelineStep):
    """Pipeline step applying preset vertex and temporal filters"""

    def __init__(
        self,
        vertex_preset: str = "AllPass",
        vertex_cutoffs: Sequence[float] = (),
        temporal_preset: str = "AllPass",
        temporal_cutoffs: Sequence[float] = (),
        chebyshev_order: int = 16,
        kind: str = "combinatorial",
        **kwargs,
    ) -> None:
        """
        Args:
            vertex_preset (str, optional): Vertex preset name. Defaults to "AllPass".
            vertex_cutoffs (Sequence[float], optional): Vertex cutoffs as a fraction of
                lambda_max. Defaults to ().
            temporal_preset (str, optional): Temporal preset name. Defaults to "AllPass".
            temporal_cutoffs (Sequence[float], optional): Temporal cutoffs as a fraction of
                Nyquist. Defaults to ().
            chebyshev_order (int, optional): Order of the vertex fits. Defaults to 16.
            kind (str, optional): Laplacian kind. Defaults to "combinatorial".
        """
        logging.debug("*** Joint Filter ***")
        self.vertex_preset = parse_preset(vertex_preset, vertex_cutoffs).name.value
        self.vertex_cutoffs = tuple(float(c) for c in vertex_cutoffs)
        self.temporal_preset = parse_preset(temporal_preset, temporal_cutoffs).name.value
        self.temporal_cutoffs = tuple(float(c) for c in temporal_cutoffs)
        self.chebyshev_order = chebyshev_order
        self.kind = LaplacianKind.parse(kind).value
        super().__init__(**kwargs)

    def _process(  # type: ignore[override]
        self, graph: DynamicGraph, signal: np.ndarray
    ) -> np.ndarray:
        vertex_preset = parse_preset(self.vertex_preset, self.vertex_cutoffs)
        temporal_preset = parse_preset(self.temporal_preset, self.temporal_cutoffs)
        vertex_filters = vertex_filters_from_preset(
            graph, vertex_preset, self.chebyshev_order, self.kind
        )
        temporal_filter = temporal_filter_from_preset(temporal_preset, graph.num_timesteps)
        return joint_filter(graph, signal, vertex_filters, temporal_filter, kind=self.kind)
