"""Pipeline steps reading dynamic graphs and signals from disk"""
from pathlib import Path
from typing import Any, Union

import numpy as np

from ..graph import DynamicGraph
from ..pipeline import PipelineStep
from ..utils.io import parse_graph_json, parse_signal_csv


class FileLoader(PipelineStep):
    def _mkdir(self) -> None:
        """Loaders write nothing, only the base path is created"""
        Path(self.save_path).mkdir(parents=True, exist_ok=True)

    def _process_and_save(self, *args: Any, output_name: str, **kwargs: Any) -> Any:
        return self._process(*args, **kwargs)


class DynamicGraphLoader(FileLoader):
    def _process(  # type: ignore[override]
        self, path: Union[str, Path]
    ) -> DynamicGraph:
        return parse_graph_json(path)


class SignalLoader(FileLoader):
    def _process(  # type: ignore[override]
        self, path: Union[str, Path]
    ) -> np.ndarray:
        return parse_signal_csv(path)
