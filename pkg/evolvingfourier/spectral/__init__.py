# bases
from .bases import GftBasis
from .bases import DftBasis
from .bases import AdBasis
from .bases import fix_signs
from .bases import align_signs
from .bases import gft_basis
from .bases import gft_bases
from .bases import stack_bases
from .bases import graph_frequency_grid
from .bases import dft_basis
from .bases import real_dft_basis
from .bases import ad_basis

# transform
from .transform import EftCoefficients
from .transform import time_frequencies
from .transform import unitary_time_fft
from .transform import eft_forward
from .transform import eft_inverse
from .transform import eft_matrix
from .transform import eft_joint_frequencies
from .transform import transform_stability
from .transform import EFTransformer
from .transform import InverseEFTransformer

# alignment
from .alignment import Alignment
from .alignment import eigenvalue_groups
from .alignment import align_bases

# pseudospectrum
from .pseudospectrum import lipschitz_constant
from .pseudospectrum import pseudospectrum_bound
from .pseudospectrum import tracked_eigenvectors
from .pseudospectrum import pseudospectrum_residual
from .pseudospectrum import pseudospectrum_residuals

__all__ = [
    'GftBasis',
    'DftBasis',
    'AdBasis',
    'fix_signs',
    'align_signs',
    'gft_basis',
    'gft_bases',
    'stack_bases',
    'graph_frequency_grid',
    'dft_basis',
    'real_dft_basis',
    'ad_basis',
    'EftCoefficients',
    'time_frequencies',
    'unitary_time_fft',
    'eft_forward',
    'eft_inverse',
    'eft_matrix',
    'eft_joint_frequencies',
    'transform_stability',
    'EFTransformer',
    'InverseEFTransformer',
    'Alignment',
    'eigenvalue_groups',
    'align_bases',
    'lipschitz_constant',
    'pseudospectrum_bound',
    'tracked_eigenvectors',
    'pseudospectrum_residual',
    'pseudospectrum_residuals',
]
