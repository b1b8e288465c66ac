from .pipeline import PipelineStep, PipelineRunner, BatchPipelineRunner

__all__ = [
    'PipelineStep',
    'PipelineRunner',
    'BatchPipelineRunner',
]
