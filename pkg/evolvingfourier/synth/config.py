"""Configuration of the synthetic evolving graphs and signals"""

import json
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np
import yaml

from ..graph import LaplacianKind
from ..utils.errors import DomainError, ParseError


@dataclass(frozen=True)
class SynthConfig:
    """
    Parameters of the synthetic experiments.

    omega defaults to one frequency per beta entry, 2 pi (f + 2) / t for entry f;
    eigvec_index defaults to one index per alpha entry drawn from the seed among the
    non-constant eigenvectors, distinct while N - 1 >= len(alpha).
    """

    n: int = 20
    t: int = 32
    perturb_scale: float = 0.05
    alpha: Tuple[float, ...] = (0.5, 0.5, 0.5)
    beta: Tuple[float, ...] = (1.0, 1.0)
    omega: Optional[Tuple[float, ...]] = None
    noise_std: float = 0.1
    seed: int = 0
    eigvec_index: Optional[Tuple[int, ...]] = None
    edge_prob: float = 0.3
    clamp_negative: bool = True
    struct_prob: float = 0.0
    kind: str = field(default=LaplacianKind.COMBINATORIAL.value)

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "omega", "eigvec_index"):
            value = getattr(self, name)
            if value is not None:
                value = tuple(np.atleast_1d(value).tolist())
                object.__setattr__(self, name, value)
        object.__setattr__(self, "kind", LaplacianKind.parse(self.kind).value)
        self.validate()

    def validate(self) -> None:
        """Check the config domain

        Raises:
            DomainError: When a size or scale is out of range.
        """
        if int(self.n) != self.n or self.n < 2:
            raise DomainError(f"n must be an integer >= 2, got {self.n}")
        if int(self.t) != self.t or self.t < 2:
            raise DomainError(f"t must be an integer >= 2, got {self.t}")
        scales = {
            "perturb_scale": self.perturb_scale,
            "noise_std": self.noise_std,
            "struct_prob": self.struct_prob,
            "edge_prob": self.edge_prob,
        }
        for name, value in scales.items():
            if not np.isfinite(value) or value < 0:
                raise DomainError(f"{name} must be finite and nonnegative, got {value}")
        for name in ("edge_prob", "struct_prob"):
            if getattr(self, name) > 1:
                raise DomainError(f"{name} must be a probability, got {getattr(self, name)}")
        for name in ("alpha", "beta", "omega"):
            value = getattr(self, name)
            if value is not None and not np.all(np.isfinite(value)):
                raise DomainError(f"{name} must be finite")
        if self.omega is not None and len(self.omega) != len(self.beta):
            raise DomainError("omega must have one frequency per beta entry")
        if self.eigvec_index is not None:
            if len(self.eigvec_index) != len(self.alpha):
                raise DomainError("eigvec_index must have one index per alpha entry")
            if any(int(k) != k or k < 0 for k in self.eigvec_index):
                raise DomainError(f"eigvec_index must be nonnegative integers, got {self.eigvec_index}")

    @property
    def frequencies(self) -> np.ndarray:
        """Angular frequency of every sinusoid"""
        if self.omega is not None:
            return np.asarray(self.omega, dtype=float)
        return 2.0 * np.pi * (np.arange(len(self.beta)) + 2) / self.t

    def with_updates(self, **changes: Any) -> "SynthConfig":
        return replace(self, **changes)

    def to_dict(self) -> Dict[str, Any]:
        out = asdict(self)
        for name in ("alpha", "beta", "omega", "eigvec_index"):
            if out[name] is not None:
                out[name] = list(out[name])
        return out

    @classmethod
    def from_dict(cls, values: Dict[str, Any]) -> "SynthConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(values) - known
        if unknown:
            raise DomainError(f"Unknown synthetic config keys: {sorted(unknown)}")
        return cls(**values)

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "SynthConfig":
        """Load a config from a JSON or YAML file (chosen by suffix)"""
        path = Path(path)
        if not path.is_file():
            raise ParseError("No such file", path=path)
        with open(path, encoding="utf-8") as file:
            try:
                if path.suffix.lower() == ".json":
                    values = json.load(file)
                else:
                    values = yaml.safe_load(file)
            except json.JSONDecodeError as error:
                raise ParseError(error.msg, path=path, line=error.lineno, column=error.colno)
            except yaml.MarkedYAMLError as error:
                mark = error.problem_mark or error.context_mark
                if mark is None:
                    raise ParseError(str(error).splitlines()[0], path=path)
                raise ParseError(
                    error.problem or str(error).splitlines()[0],
                    path=path,
                    line=mark.line + 1,
                    column=mark.column + 1,
                )
            except yaml.YAMLError as error:
                raise ParseError(str(error).splitlines()[0], path=path)
            except UnicodeDecodeError as error:
                raise ParseError(f"Not UTF-8 text: {error.reason}", path=path)
        if not isinstance(values, dict):
            raise ParseError("Config must be a mapping", path=path)
        return cls.from_dict(values)
