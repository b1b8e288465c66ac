"""Scalar statistics of graph signals, collected into one CSV per statistic"""

from abc import abstractmethod
from pathlib import Path
from typing import Optional, Union

import numpy as np
import pandas as pd

from ..graph import DynamicGraph, LaplacianKind, dirichlet_s2
from ..pipeline import PipelineStep
from ..spectral import eft_forward

COLUMNS = ("name", "value")


class StatsComputer(PipelineStep):
    """
    Step computing one float per datapoint. With a save_path every value becomes a
    row of <precompute_path>/<filename>.csv instead of a per-datapoint h5 file.
    """

    filename: str = ""

    def _mkdir(self) -> None:
        Path(self.save_path).mkdir(parents=True, exist_ok=True)

    @abstractmethod
    def _process(self, graph: DynamicGraph, signal: np.ndarray) -> float:  # type: ignore[override]
        """Statistic of a single signal"""

    def precompute(
        self,
        link_path: Union[None, str, Path] = None,
        precompute_path: Union[None, str, Path] = None,
    ) -> None:
        """Start a fresh table with only the header row

        Args:
            link_path (Union[None, str, Path], optional): Unused.
            precompute_path (Union[None, str, Path], optional): Directory of the table.
                Defaults to save_path.
        """
        self.table_path: Optional[Path] = None
        if self.save_path is None:
            return
        directory = Path(precompute_path if precompute_path is not None else self.save_path)
        directory.mkdir(parents=True, exist_ok=True)
        self.table_path = directory / f"{self.filename}.csv"
        pd.DataFrame(columns=list(COLUMNS)).to_csv(self.table_path, index=False)

    def _process_and_save(  # type: ignore[override]
        self, graph: DynamicGraph, signal: np.ndarray, output_name: str
    ) -> float:
        value = self._process(graph, signal)
        if getattr(self, "table_path", None) is None:
            self.precompute()
        # append mode keeps rows from earlier datapoints of the same run
        row = pd.DataFrame([[output_name, value]], columns=list(COLUMNS))
        row.to_csv(self.table_path, mode="a", header=False, index=False)
        return value


class DirichletEnergy(StatsComputer):
    filename = "dirichlet_energy"

    def _process(  # type: ignore[override]
        self, graph: DynamicGraph, signal: np.ndarray
    ) -> float:
        """Compute the 2-Dirichlet variation of the signal

        Args:
            graph (DynamicGraph): Input graph
            signal (np.ndarray): N x T signal

        Returns:
            float: Variation S_2
        """
        return float(dirichlet_s2(graph, signal))


class ParsevalResidual(StatsComputer):
    filename = "parseval_residual"

    def __init__(self, kind: str = "combinatorial", **kwargs) -> None:
        self.kind = LaplacianKind.parse(kind).value
        super().__init__(**kwargs)

    def _process(  # type: ignore[override]
        self, graph: DynamicGraph, signal: np.ndarray
    ) -> float:
        """Relative difference between the norms of the signal and of its EFT coefficients"""
        coefficients = eft_forward(graph, signal, kind=self.kind).values
        norm = np.linalg.norm(signal)
        if norm == 0:
            return float(np.linalg.norm(coefficients))
        return float(abs(np.linalg.norm(coefficients) - norm) / norm)
