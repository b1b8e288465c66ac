# chebyshev
from .chebyshev import ChebyshevFilter
from .chebyshev import chebyshev_apply
from .chebyshev import chebyshev_nodes
from .chebyshev import fit_chebyshev
from .chebyshev import estimate_lambda_max

# temporal
from .temporal import TemporalFilter
from .temporal import temporal_filter_apply

# presets
from .presets import PresetName
from .presets import FilterPreset
from .presets import preset_response
from .presets import parse_preset
from .presets import temporal_grid
from .presets import vertex_grid
from .presets import temporal_filter_from_preset
from .presets import vertex_filters_from_preset

# joint
from .joint import joint_filter
from .joint import filters_from_spec
from .joint import JointFilter

__all__ = [
    'ChebyshevFilter',
    'chebyshev_apply',
    'chebyshev_nodes',
    'fit_chebyshev',
    'estimate_lambda_max',
    'TemporalFilter',
    'temporal_filter_apply',
    'PresetName',
    'FilterPreset',
    'preset_response',
    'parse_preset',
    'temporal_grid',
    'vertex_grid',
    'temporal_filter_from_preset',
    'vertex_filters_from_preset',
    'joint_filter',
    'filters_from_spec',
    'JointFilter',
]
