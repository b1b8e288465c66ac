"""This module handles the dynamic graph representation"""

import logging
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np
import scipy.sparse as sp

from ..utils.errors import DomainError, ShapeError, SymmetryError

SYMMETRY_TOL = 1e-12

WeightedGraph = sp.csr_matrix
Edge = Tuple[int, int, float]


def to_weighted_graph(
    adjacency: Union[np.ndarray, sp.spmatrix, Sequence[Sequence[float]]]
) -> WeightedGraph:
    """Convert a dense or sparse adjacency to a validated csr matrix

    Args:
        adjacency (Union[np.ndarray, sp.spmatrix, Sequence[Sequence[float]]]): Square adjacency.

    Raises:
        ShapeError: When the adjacency is not square.
        DomainError: When a weight is negative or not finite.
        SymmetryError: When the adjacency is not symmetric.

    Returns:
        WeightedGraph: Symmetric csr adjacency with explicit zeros removed.
    """
    if sp.issparse(adjacency):
        matrix = sp.csr_matrix(adjacency, dtype=float)
    else:
        matrix = sp.csr_matrix(np.asarray(adjacency, dtype=float))
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ShapeError(f"Adjacency must be square, got shape {matrix.shape}")
    matrix.eliminate_zeros()
    if not np.all(np.isfinite(matrix.data)):
        raise DomainError("Edge weights must be finite")
    if np.any(matrix.data < 0):
        raise DomainError("Edge weights must be nonnegative")
    asymmetry = abs(matrix - matrix.T)
    if asymmetry.nnz > 0 and asymmetry.max() > SYMMETRY_TOL:
        rows, cols = (asymmetry > SYMMETRY_TOL).nonzero()
        raise SymmetryError(
            f"Adjacency is not symmetric, e.g. A[{rows[0]}][{cols[0]}] != A[{cols[0]}][{rows[0]}]"
        )
    matrix.sort_indices()
    return matrix


class DynamicGraph:
    """
    Fixed node set observed through T time-ordered weighted undirected snapshots.
    """

    def __init__(
        self,
        snapshots: Sequence[Union[np.ndarray, sp.spmatrix]],
        num_nodes: Optional[int] = None,
    ) -> None:
        """Create a dynamic graph from its snapshot adjacencies

        Args:
            snapshots (Sequence[Union[np.ndarray, sp.spmatrix]]): One N x N adjacency per timestep.
            num_nodes (Optional[int], optional): Expected N. Inferred from the first
                snapshot when None. Defaults to None.

        Raises:
            DomainError: When there is no snapshot or N < 1.
            ShapeError: When a snapshot does not have N nodes.
        """
        if len(snapshots) == 0:
            raise DomainError("A dynamic graph needs at least one snapshot")
        graphs = tuple(to_weighted_graph(adjacency) for adjacency in snapshots)
        if num_nodes is None:
            num_nodes = graphs[0].shape[0]
        if num_nodes < 1:
            raise DomainError(f"Number of nodes must be positive, got {num_nodes}")
        for t, graph in enumerate(graphs):
            if graph.shape[0] != num_nodes:
                raise ShapeError(
                    f"Snapshot {t} has {graph.shape[0]} nodes, expected {num_nodes}"
                )
        self._num_nodes = int(num_nodes)
        self._snapshots = graphs

    @property
    def num_nodes(self) -> int:
        return self._num_nodes

    @property
    def num_timesteps(self) -> int:
        return len(self._snapshots)

    @property
    def snapshots(self) -> Tuple[WeightedGraph, ...]:
        return self._snapshots

    @property
    def shape(self) -> Tuple[int, int]:
        """Shape (N, T) of a signal living on this graph"""
        return self._num_nodes, len(self._snapshots)

    def __len__(self) -> int:
        return len(self._snapshots)

    def __getitem__(self, t: int) -> WeightedGraph:
        return self._snapshots[t]

    def __iter__(self):
        return iter(self._snapshots)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DynamicGraph):
            return NotImplemented
        if self.shape != other.shape:
            return False
        return all(
            (a != b).nnz == 0 for a, b in zip(self._snapshots, other.snapshots)
        )

    def __repr__(self) -> str:
        return f"DynamicGraph(num_nodes={self.num_nodes},num_timesteps={self.num_timesteps})"

    def is_static(self) -> bool:
        """Whether all snapshots are identical"""
        first = self._snapshots[0]
        return all((first != graph).nnz == 0 for graph in self._snapshots[1:])

    def check_signal(self, signal: np.ndarray) -> np.ndarray:
        """Validate that a signal is N x T (optionally with trailing channels)

        Args:
            signal (np.ndarray): Signal to check.

        Raises:
            ShapeError: When the leading dimensions are not (N, T).
            DomainError: When the signal contains non-finite values.

        Returns:
            np.ndarray: The signal as an array.
        """
        signal = np.asarray(signal)
        if signal.ndim < 2 or signal.shape[:2] != self.shape:
            raise ShapeError(
                f"Signal of shape {signal.shape} does not match graph shape {self.shape}"
            )
        if not np.all(np.isfinite(signal)):
            raise DomainError("Signal contains non-finite values")
        return signal

    def edge_lists(self) -> List[List[Edge]]:
        """Per-snapshot edge lists with every undirected edge listed once (u <= v)

        Returns:
            List[List[Edge]]: (u, v, weight) triplets per timestep.
        """
        out = []
        for graph in self._snapshots:
            upper = sp.triu(graph, format="coo")
            order = np.lexsort((upper.col, upper.row))
            out.append(
                [
                    (int(upper.row[i]), int(upper.col[i]), float(upper.data[i]))
                    for i in order
                ]
            )
        return out

    def jittered(self, scale: float = 1e-9, seed: int = 0) -> "DynamicGraph":
        """Perturb existing edge weights with symmetric uniform noise in [-scale, scale]

        Used to break eigenvalue multiplicities on request. Weights are clamped at 0.

        Args:
            scale (float, optional): Jitter amplitude. Defaults to 1e-9.
            seed (int, optional): Random seed. Defaults to 0.

        Returns:
            DynamicGraph: Jittered copy.
        """
        rng = np.random.default_rng(seed)
        snapshots = []
        for graph in self._snapshots:
            upper = sp.triu(graph, format="coo")
            data = np.maximum(
                upper.data + rng.uniform(-scale, scale, size=upper.nnz), 0.0
            )
            upper = sp.coo_matrix((data, (upper.row, upper.col)), shape=graph.shape)
            snapshots.append(upper + sp.triu(upper, k=1).T)
        return DynamicGraph(snapshots, num_nodes=self.num_nodes)

    @classmethod
    def from_edge_lists(
        cls, num_nodes: int, edge_lists: Sequence[Iterable[Edge]]
    ) -> "DynamicGraph":
        """Build a dynamic graph from undirected edge lists

        Args:
            num_nodes (int): Number of nodes N.
            edge_lists (Sequence[Iterable[Edge]]): Per-timestep (u, v, weight) triplets,
                every undirected edge listed once.

        Raises:
            DomainError: When a node id is out of range.
            SymmetryError: When an edge is listed in both directions with different weights.

        Returns:
            DynamicGraph: The dynamic graph.
        """
        snapshots = []
        for t, edges in enumerate(edge_lists):
            weights: Dict[Tuple[int, int], float] = {}
            for u, v, w in edges:
                u, v, w = int(u), int(v), float(w)
                if not (0 <= u < num_nodes and 0 <= v < num_nodes):
                    raise DomainError(
                        f"Edge ({u}, {v}) at timestep {t} is out of range for {num_nodes} nodes"
                    )
                key = (min(u, v), max(u, v))
                if key in weights:
                    if weights[key] != w:
                        raise SymmetryError(
                            f"Edge ({u}, {v}) at timestep {t} is listed with weights "
                            f"{weights[key]} and {w}"
                        )
                    logging.debug("Duplicate edge %s at timestep %d ignored", key, t)
                    continue
                weights[key] = w
            rows = [k[0] for k in weights]
            cols = [k[1] for k in weights]
            data = list(weights.values())
            upper = sp.coo_matrix(
                (data, (rows, cols)), shape=(num_nodes, num_nodes), dtype=float
            )
            snapshots.append(upper + sp.triu(upper, k=1).T)
        return cls(snapshots, num_nodes=num_nodes)

    @classmethod
    def from_networkx(
        cls,
        graphs: Sequence[nx.Graph],
        nodelist: Optional[Sequence[Hashable]] = None,
        weight: str = "weight",
    ) -> "DynamicGraph":
        """Build a dynamic graph from networkx snapshots

        Args:
            graphs (Sequence[nx.Graph]): Undirected snapshots.
            nodelist (Optional[Sequence[Hashable]], optional): Node ordering. Defaults to
                the sorted union of all snapshot nodes.
            weight (str, optional): Edge attribute holding the weight. Defaults to "weight".

        Returns:
            DynamicGraph: The dynamic graph.
        """
        if nodelist is None:
            nodelist = sorted(set().union(*[set(g.nodes) for g in graphs]))
        snapshots = []
        for graph in graphs:
            padded = nx.Graph()
            padded.add_nodes_from(nodelist)
            padded.add_edges_from(graph.edges(data=True))
            snapshots.append(
                sp.csr_matrix(
                    nx.to_scipy_sparse_array(padded, nodelist=nodelist, weight=weight)
                )
            )
        return cls(snapshots, num_nodes=len(nodelist))

    @classmethod
    def from_labeled_snapshots(
        cls,
        snapshots: Sequence[Iterable[Tuple[Hashable, Hashable, float]]],
        nodes: Optional[Sequence[Hashable]] = None,
    ) -> Tuple["DynamicGraph", Dict[Hashable, int]]:
        """Build a dynamic graph whose node set varies over time

        Nodes missing at a timestep are kept as isolated dummy nodes so that all
        snapshots share the same node set.

        Args:
            snapshots (Sequence[Iterable[Tuple[Hashable, Hashable, float]]]): Per-timestep
                labelled edges.
            nodes (Optional[Sequence[Hashable]], optional): Full node set, e.g. including
                nodes without any edge. Defaults to the union of the edge endpoints in
                order of first appearance.

        Returns:
            Tuple[DynamicGraph, Dict[Hashable, int]]: The graph and the label to index map.
        """
        snapshots = [list(edges) for edges in snapshots]
        if nodes is None:
            nodes = []
            for edges in snapshots:
                for u, v, _ in edges:
                    for label in (u, v):
                        if label not in nodes:
                            nodes.append(label)
        index = {label: i for i, label in enumerate(nodes)}
        edge_lists = [
            [(index[u], index[v], w) for u, v, w in edges] for edges in snapshots
        ]
        return cls.from_edge_lists(len(index), edge_lists), index
