# methods
from .methods import MethodName
from .methods import SpectralMethod
from .methods import EFTMethod
from .methods import ADMethod
from .methods import DFTOnlyMethod
from .methods import GFTOnlyMethod
from .methods import build_method
from .methods import parse_methods
from .methods import keep_top_fraction
from .methods import remove_lowest_percentile
from .methods import relative_error

# experiments
from .denoise import DenoiseReport
from .denoise import run_denoise
from .compaction import CompactionReport
from .compaction import run_compaction
from .compaction import run_mesh_compaction
from .bound import BoundReport
from .bound import bound_report_for
from .bound import run_bound_probe
from .bench import ScalingBench
from .bench import run_scaling_bench
from .filtering import FilterDemoReport
from .filtering import run_filter_demo
from .property_suite import Operations
from .property_suite import PropertySuiteResult
from .property_suite import run_property_suite

# reports
from ..utils.parallel import run_parallel
from .reports import reports_to_frame
from .reports import summarize_reports
from .reports import median_of
from .reports import write_report

__all__ = [
    'MethodName',
    'SpectralMethod',
    'EFTMethod',
    'ADMethod',
    'DFTOnlyMethod',
    'GFTOnlyMethod',
    'build_method',
    'parse_methods',
    'keep_top_fraction',
    'remove_lowest_percentile',
    'relative_error',
    'DenoiseReport',
    'run_denoise',
    'CompactionReport',
    'run_compaction',
    'run_mesh_compaction',
    'BoundReport',
    'bound_report_for',
    'run_bound_probe',
    'ScalingBench',
    'run_scaling_bench',
    'FilterDemoReport',
    'run_filter_demo',
    'Operations',
    'PropertySuiteResult',
    'run_property_suite',
    'run_parallel',
    'reports_to_frame',
    'summarize_reports',
    'median_of',
    'write_report',
]
