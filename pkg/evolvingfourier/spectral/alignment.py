"""Matching of two bases up to row permutation, sign and rotation inside degenerate eigenspaces"""

from typing import List, NamedTuple, Optional

import numpy as np
from scipy.linalg import orthogonal_procrustes

from ..utils.errors import ShapeError

EIGENVALUE_GROUP_TOL = 1e-6


class Alignment(NamedTuple):
    permutation: np.ndarray
    signs: np.ndarray
    difference: float
    aligned: np.ndarray


class _DisjointSets:
    def __init__(self, size: int) -> None:
        self.parent = list(range(size))

    def find(self, item: int) -> int:
        while self.parent[item] != item:
            self.parent[item] = self.parent[self.parent[item]]
            item = self.parent[item]
        return item

    def union(self, a: int, b: int) -> None:
        root_a, root_b = self.find(a), self.find(b)
        if root_a != root_b:
            self.parent[max(root_a, root_b)] = min(root_a, root_b)


def eigenvalue_groups(eigenvalues: np.ndarray, tol: float = EIGENVALUE_GROUP_TOL) -> List[np.ndarray]:
    """Split indices into groups of eigenvalues chained by consecutive gaps <= tol

    Args:
        eigenvalues (np.ndarray): Eigenvalues in any order.
        tol (float, optional): Grouping tolerance. Defaults to 1e-6.

    Returns:
        List[np.ndarray]: Index groups, in ascending eigenvalue order.
    """
    eigenvalues = np.asarray(eigenvalues, dtype=float)
    order = np.argsort(eigenvalues, kind="stable")
    groups = []
    start = 0
    for position in range(1, len(order) + 1):
        if (
            position == len(order)
            or eigenvalues[order[position]] - eigenvalues[order[position - 1]] > tol
        ):
            groups.append(order[start:position])
            start = position
    return groups


def align_bases(
    reference: np.ndarray,
    candidate: np.ndarray,
    eig_reference: Optional[np.ndarray] = None,
    eig_candidate: Optional[np.ndarray] = None,
    tol: float = EIGENVALUE_GROUP_TOL,
) -> Alignment:
    """Align the rows of candidate onto the rows of reference

    Rows are matched greedily by decreasing |inner product|. Matched rows whose
    eigenvalues fall in a common degenerate group (on either side) are aligned jointly
    by an orthogonal Procrustes rotation; an isolated row reduces to a sign flip.

    Args:
        reference (np.ndarray): Basis A, one vector per row.
        candidate (np.ndarray): Basis B of the same shape.
        eig_reference (Optional[np.ndarray], optional): Eigenvalues of the rows of A.
            Defaults to None (no grouping).
        eig_candidate (Optional[np.ndarray], optional): Eigenvalues of the rows of B.
            Defaults to None (no grouping).
        tol (float, optional): Eigenvalue grouping tolerance. Defaults to 1e-6.

    Raises:
        ShapeError: When the shapes differ or the eigenvalue vectors have the wrong length.

    Returns:
        Alignment: permutation[i] is the row of B matched to row i of A, signs[i] the sign
            of their inner product, difference the Frobenius norm ||A - B_aligned||.
    """
    reference = np.asarray(reference)
    candidate = np.asarray(candidate)
    if reference.shape != candidate.shape or reference.ndim != 2:
        raise ShapeError(
            f"Bases must have the same 2d shape, got {reference.shape} and {candidate.shape}"
        )
    size = reference.shape[0]
    for name, eigenvalues in (("eig_reference", eig_reference), ("eig_candidate", eig_candidate)):
        if eigenvalues is not None and len(eigenvalues) != size:
            raise ShapeError(f"{name} has length {len(eigenvalues)}, expected {size}")

    overlaps = reference @ candidate.conj().T
    magnitudes = np.abs(overlaps)
    permutation = np.full(size, -1, dtype=int)
    taken = np.zeros(size, dtype=bool)
    for flat in np.argsort(-magnitudes.ravel(), kind="stable"):
        row, column = divmod(int(flat), size)
        if permutation[row] < 0 and not taken[column]:
            permutation[row] = column
            taken[column] = True

    components = _DisjointSets(size)
    if eig_reference is not None:
        for group in eigenvalue_groups(eig_reference, tol):
            for row in group[1:]:
                components.union(int(group[0]), int(row))
    if eig_candidate is not None:
        matched_row = np.empty(size, dtype=int)
        matched_row[permutation] = np.arange(size)
        for group in eigenvalue_groups(eig_candidate, tol):
            for column in group[1:]:
                components.union(int(matched_row[group[0]]), int(matched_row[column]))

    members = {}
    for row in range(size):
        members.setdefault(components.find(row), []).append(row)

    aligned = candidate[permutation].astype(np.result_type(reference, candidate), copy=True)
    for rows in members.values():
        rows = np.asarray(rows)
        rotation, _ = orthogonal_procrustes(aligned[rows].T, reference[rows].T)
        aligned[rows] = rotation.T @ aligned[rows]

    matched = overlaps[np.arange(size), permutation]
    signs = np.where(np.real(matched) < 0, -1, 1)
    difference = float(np.linalg.norm(reference - aligned))
    return Alignment(permutation=permutation, signs=signs, difference=difference, aligned=aligned)
