"""Exceptions raised by the library"""
from pathlib import Path
from typing import Optional, Union


class SymmetryError(ValueError):
    """Adjacency matrix or edge list is not symmetric."""


class DomainError(ValueError):
    """Value outside of the admissible domain (negative weight, T = 0, bad index, ...)."""


class ShapeError(ValueError):
    """Dimensions of graph, signal, coefficients or filter do not match."""


class SizeGuardError(ValueError):
    """A dense NT x NT object was requested above the size guard."""


class NumericalError(ArithmeticError):
    """The eigendecomposition did not converge."""


class ParseError(ValueError):
    def __init__(
        self,
        message: str,
        path: Union[None, str, Path] = None,
        line: Optional[int] = None,
        column: Optional[int] = None,
    ) -> None:
        """Malformed input file.

        Args:
            message (str): What went wrong.
            path (Union[None, str, Path], optional): File being parsed. Defaults to None.
            line (Optional[int], optional): 1-based line of the offending token. Defaults to None.
            column (Optional[int], optional): 1-based column of the offending token. Defaults to None.
        """
        self.path = None if path is None else str(path)
        self.line = line
        self.column = column
        location = ""
        if self.path is not None:
            location += self.path
        if line is not None:
            location += f":{line}"
            if column is not None:
                location += f":{column}"
        super().__init__(f"{location}: {message}" if location else message)
