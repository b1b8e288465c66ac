# dynamic graph
from .dynamic_graph import DynamicGraph
from .dynamic_graph import to_weighted_graph

# laplacians
from .laplacian import DENSE_SIZE_GUARD
from .laplacian import LaplacianKind
from .laplacian import Laplacian
from .laplacian import TimeRingLaplacian
from .laplacian import JointLaplacian
from .laplacian import check_size_guard
from .laplacian import build_laplacian
from .laplacian import build_time_ring_laplacian
from .laplacian import build_joint_laplacian
from .laplacian import ring_eigenvalues
from .laplacian import dirichlet_s2
from .laplacian import vectorize
from .laplacian import unvectorize
from .laplacian import JointLaplacianBuilder

__all__ = [
    'DynamicGraph',
    'to_weighted_graph',
    'DENSE_SIZE_GUARD',
    'LaplacianKind',
    'Laplacian',
    'TimeRingLaplacian',
    'JointLaplacian',
    'check_size_guard',
    'build_laplacian',
    'build_time_ring_laplacian',
    'build_joint_laplacian',
    'ring_eigenvalues',
    'dirichlet_s2',
    'vectorize',
    'unvectorize',
    'JointLaplacianBuilder',
]
