from .io import DynamicGraphLoader
from .io import SignalLoader
from .stats import DirichletEnergy
from .stats import ParsevalResidual

__all__ = [
    'DynamicGraphLoader',
    'SignalLoader',
    'DirichletEnergy',
    'ParsevalResidual',
]
