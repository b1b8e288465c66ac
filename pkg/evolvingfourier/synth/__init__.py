# config
from .config import SynthConfig

# generators
from .generators import gen_evolving_graph
from .generators import gen_signal
from .generators import gen_dynamic_mesh
from .generators import EvolvingGraphGenerator
from .generators import SyntheticSignalGenerator
from .generators import DynamicMeshGenerator

__all__ = [
    'SynthConfig',
    'gen_evolving_graph',
    'gen_signal',
    'gen_dynamic_mesh',
    'EvolvingGraphGenerator',
    'SyntheticSignalGenerator',
    'DynamicMeshGenerator',
]
