"""Pipeline steps with h5 caching, and runners chaining them from a YAML config"""
import logging
from abc import ABC, abstractmethod
from copy import deepcopy
from pathlib import Path
from typing import Any, Dict, Iterable, List, NamedTuple, Optional, Tuple, Union

import h5py
import numpy as np
import pandas as pd

from .utils import dynamic_import_from, signal_last
from .utils.errors import DomainError, ParseError, ShapeError
from .utils.parallel import run_parallel

PathLike = Union[None, str, Path]
OUTPUT_KEY = "output"
STAGE_KEYS = ("class", "inputs", "outputs", "params")


class PipelineStep(ABC):
    """Base pipeline step"""

    def __init__(
        self,
        save_path: PathLike = None,
        precompute: bool = True,
        link_path: PathLike = None,
        precompute_path: PathLike = None,
    ) -> None:
        """Step whose output can be cached on disk, one h5 file per datapoint

        Args:
            save_path (PathLike, optional): Base directory of the cache. The outputs go to a
                subdirectory named after the step and its parameters. None disables caching.
                Defaults to None.
            precompute (bool, optional): Whether to run the precomputation now. Defaults to True.
            link_path (PathLike, optional): Directory under which the step links its output
                directory. Needs a save_path. Defaults to None.
            precompute_path (PathLike, optional): Where the precomputation writes. Defaults
                to save_path.

        Raises:
            DomainError: When link_path is given without save_path.
        """
        if save_path is None and link_path is not None:
            raise DomainError("link_path is only supported together with a save_path")

        # computed before any path attribute so it only holds the step parameters
        name = repr(self)
        self.save_path = save_path
        if self.save_path is not None:
            self.output_dir = Path(self.save_path) / name
            self._mkdir()
            if precompute_path is None:
                precompute_path = save_path

        if precompute:
            self.precompute(link_path=link_path, precompute_path=precompute_path)

    def __repr__(self) -> str:
        """Class name and sorted parameters, usable as a directory name"""
        parameters = ",".join(f"{k}={v}" for k, v in sorted(self.__dict__.items()))
        name = f"{self.__class__.__name__}({parameters})"
        for character in (" ", '"', "'", ".."):
            name = name.replace(character, "")
        return name.replace("/", "_")

    def _mkdir(self) -> None:
        self.output_dir.mkdir(parents=True, exist_ok=True)

    def _link_to_path(self, link_directory: PathLike) -> None:
        """Expose the output directory as a symlink at link_directory

        Args:
            link_directory (PathLike): Location of the link.
        """
        if link_directory is None:
            return
        if self.save_path is None:
            raise DomainError("Linking needs a save_path")
        link = Path(link_directory)
        if link.parent.resolve() == self.output_dir.resolve():
            logging.info("Link to self skipped")
            return
        if link.is_symlink():
            if not link.exists():
                logging.critical("Link %s is dangling, leaving it untouched", link)
                return
            logging.info("Replacing existing link %s", link)
            link.unlink()
        elif link.exists():
            link.unlink()
        link.symlink_to(self.output_dir.resolve(), target_is_directory=True)

    def precompute(
        self,
        link_path: PathLike = None,
        precompute_path: PathLike = None,
    ) -> None:
        """Work shared by all datapoints, e.g. output links or report headers

        Args:
            link_path (PathLike, optional): Where to link the output to. Defaults to None.
            precompute_path (PathLike, optional): Where to write precomputed files. Defaults to None.
        """

    def process(
        self, *args: Any, output_name: Optional[str] = None, **kwargs: Any
    ) -> Any:
        """Compute the step output, through the cache when output_name is given

        Args:
            output_name (Optional[str], optional): Unique identifier of the datapoint. Defaults to None.

        Returns:
            Any: Output of the step.
        """
        if output_name is not None and self.save_path is not None:
            return self._process_and_save(*args, output_name=output_name, **kwargs)
        return self._process(*args, **kwargs)

    @abstractmethod
    def _process(self, *args: Any, **kwargs: Any) -> Any:
        """Computation of the step"""

    def _output_file(self, output_name: str) -> Path:
        return self.output_dir / f"{output_name}.h5"

    def _get_outputs(self, input_file: h5py.File) -> Union[Any, Tuple]:
        """Read back the datasets written by _set_outputs

        Args:
            input_file (h5py.File): Cache file.

        Returns:
            Union[Any, Tuple]: Single output or tuple of outputs.
        """
        count = sum(1 for key in input_file.keys() if key.startswith(f"{OUTPUT_KEY}_"))
        outputs = tuple(input_file[f"{OUTPUT_KEY}_{i}"][()] for i in range(count))
        return outputs[0] if len(outputs) == 1 else outputs

    def _set_outputs(self, output_file: h5py.File, outputs: Union[Tuple, Any]) -> None:
        """Write every output as a compressed array dataset

        Args:
            output_file (h5py.File): Cache file.
            outputs (Union[Tuple, Any]): Output of _process.
        """
        if not isinstance(outputs, tuple):
            outputs = (outputs,)
        for i, output in enumerate(outputs):
            output_file.create_dataset(
                f"{OUTPUT_KEY}_{i}",
                data=np.asarray(output),
                compression="gzip",
                compression_opts=9,
            )

    def _process_and_save(
        self, *args: Any, output_name: str, **kwargs: Any
    ) -> Any:
        """Load the cached output of output_name, or compute and cache it

        Args:
            output_name (str): Unique identifier of the datapoint.

        Raises:
            OSError: When the cache file cannot be read or written.

        Returns:
            Any: Output of the step.
        """
        output_path = self._output_file(output_name)
        if output_path.exists():
            logging.info(
                "%s: reusing cached output of %s", self.__class__.__name__, output_name
            )
            try:
                with h5py.File(output_path, "r") as input_file:
                    return self._get_outputs(input_file=input_file)
            except OSError:
                logging.critical("Could not read from %s", output_path)
                raise
        output = self._process(*args, **kwargs)
        try:
            with h5py.File(output_path, "w") as output_file:
                self._set_outputs(output_file=output_file, outputs=output)
        except OSError:
            logging.critical("Could not write to %s", output_path)
            raise
        return output


class StageConfig(NamedTuple):
    """One stage of a pipeline config: {subpackage: {class, inputs, outputs, params}}"""

    subpackage: str
    class_name: str
    inputs: List[str]
    outputs: List[str]
    params: Dict[str, Any]

    @classmethod
    def parse(cls, stage: Dict[str, Any]) -> "StageConfig":
        """Validate a stage mapping

        Raises:
            ParseError: When the stage is not a single subpackage mapping with a class.
        """
        if not isinstance(stage, dict) or len(stage) != 1:
            raise ParseError(f"A stage maps exactly one subpackage to its config, got {stage!r}")
        subpackage, config = next(iter(stage.items()))
        if not isinstance(config, dict) or "class" not in config:
            raise ParseError(f"Stage of {subpackage!r} does not name a class")
        unknown = sorted(set(config) - set(STAGE_KEYS))
        if unknown:
            raise ParseError(f"Unknown keys {unknown} in stage {config['class']!r}")
        return cls(
            subpackage=str(subpackage),
            class_name=str(config["class"]),
            inputs=list(config.get("inputs") or []),
            outputs=list(config.get("outputs") or []),
            params=deepcopy(dict(config.get("params") or {})),
        )

    def step_class(self) -> type:
        try:
            step_class = dynamic_import_from(f"evolvingfourier.{self.subpackage}", self.class_name)
        except (ImportError, AttributeError):
            raise ParseError(f"Unknown pipeline step {self.subpackage}.{self.class_name}")
        if not (isinstance(step_class, type) and issubclass(step_class, PipelineStep)):
            raise ParseError(f"{self.subpackage}.{self.class_name} is not a pipeline step")
        return step_class


class PipelineRunner:
    def __init__(
        self,
        output_path: Optional[str] = None,
        inputs: Optional[Iterable[str]] = None,
        outputs: Optional[Iterable[str]] = None,
        stages: Iterable[dict] = (),
        save_intermediate: bool = False,
        precompute: bool = True,
    ) -> None:
        """Build the steps of a pipeline config

        Args:
            output_path (Optional[str], optional): Cache directory. None disables caching.
                Defaults to None.
            inputs (Optional[Iterable[str]], optional): Names the run method requires. Defaults to None.
            outputs (Optional[Iterable[str]], optional): Names the run method returns. Defaults to None.
            stages (Iterable[dict], optional): Stage mappings in execution order. Defaults to ().
            save_intermediate (bool, optional): Cache every stage, not only the last. Defaults to False.
            precompute (bool, optional): Run the precomputation of every stage. Defaults to True.

        Raises:
            ParseError: When a stage is malformed or names an unknown step.
        """
        self.inputs = list(inputs or [])
        self.outputs = list(outputs or [])
        self.stages: List[PipelineStep] = []
        self.stage_configs: List[StageConfig] = []
        path = output_path
        for is_last_stage, stage in signal_last(stages):
            config = StageConfig.parse(stage)
            saved = output_path is not None and (save_intermediate or is_last_stage)
            step = config.step_class()(
                save_path=path if saved else None,
                precompute=False,
                **config.params,
            )
            self.stages.append(step)
            self.stage_configs.append(config)
            if saved:
                # later stages nest inside the output directory of this one
                path = str(step.output_dir)
        self.final_path = path
        if precompute:
            self.precompute(save_intermediate)

    def precompute(self, save_intermediate: bool) -> None:
        """Run the precomputation of every stage

        Args:
            save_intermediate (bool): Whether the intermediate stages are cached.
        """
        link_path = self.final_path
        precompute_path = None
        if self.final_path is not None and not save_intermediate:
            precompute_path = self.final_path
        for stage in self.stages:
            stage.precompute(link_path=link_path, precompute_path=precompute_path)

    def run(self, output_name: Optional[str] = None, **inputs: Any) -> Dict[str, Any]:
        """Run every stage on one datapoint

        Args:
            output_name (Optional[str], optional): Unique identifier used for caching.
                Defaults to None.

        Raises:
            DomainError: When an input is missing, an output is never computed or caching
                is requested without an output_path.
            ShapeError: When a stage returns a different number of outputs than configured.

        Returns:
            Dict[str, Any]: The configured outputs.
        """
        if output_name is not None and self.final_path is None:
            raise DomainError("Caching outputs needs an output_path")
        missing = [name for name in self.inputs if name not in inputs]
        if missing:
            raise DomainError(f"Missing pipeline inputs {missing}")

        variables = dict(inputs)
        for stage, config in zip(self.stages, self.stage_configs):
            step_output = stage.process(
                *[variables[k] for k in config.inputs], output_name=output_name
            )
            if not isinstance(step_output, tuple):
                step_output = (step_output,)
            if len(step_output) != len(config.outputs):
                raise ShapeError(
                    f"{config.class_name} returned {len(step_output)} outputs, "
                    f"config names {len(config.outputs)}"
                )
            variables.update(zip(config.outputs, step_output))

        unknown = [name for name in self.outputs if name not in variables]
        if unknown:
            raise DomainError(f"Pipeline outputs {unknown} are never computed")
        return {k: variables[k] for k in self.outputs}


class BatchPipelineRunner:
    def __init__(
        self,
        pipeline_config: Dict[str, Any],
        save_path: Optional[str],
        save_intermediate: bool = False,
    ) -> None:
        """Run a pipeline over the rows of a dataframe, e.g. one row per seed

        Args:
            pipeline_config (Dict[str, Any]): Config as accepted by PipelineRunner.
            save_path (Optional[str]): Cache directory, None disables caching.
            save_intermediate (bool, optional): Cache every stage. Defaults to False.
        """
        self.pipeline_config = pipeline_config
        self.save_path = save_path
        self.save_intermediate = save_intermediate

    def _build_pipeline_runner(self) -> PipelineRunner:
        return PipelineRunner(
            output_path=self.save_path,
            save_intermediate=self.save_intermediate,
            precompute=False,
            **deepcopy(self.pipeline_config),
        )

    def _run_row(self, data: Tuple[Any, pd.Series]) -> Tuple[Any, Dict[str, Any]]:
        name, row = data
        output_name = None if self.save_path is None else str(name)
        pipeline = self._build_pipeline_runner()
        return name, pipeline.run(output_name=output_name, **row.to_dict())

    def precompute(self) -> None:
        self._build_pipeline_runner().precompute(self.save_intermediate)

    def run(
        self, metadata: pd.DataFrame, cores: int = 1, return_out: bool = False
    ) -> Optional[Dict[Any, Dict[str, Any]]]:
        """Run the pipeline on every row of metadata

        Args:
            metadata (pd.DataFrame): One column per pipeline input. The index names the
                datapoints and their cache files.
            cores (int, optional): Number of worker processes. Defaults to 1.
            return_out (bool, optional): Return the outputs keyed by index. Defaults to False.

        Returns:
            Optional[Dict[Any, Dict[str, Any]]]: The outputs when return_out is set.
        """
        self.precompute()
        results = run_parallel(
            self._run_row, metadata.iterrows(), cores=cores, description="pipeline"
        )
        if return_out:
            return dict(results)
        return None
