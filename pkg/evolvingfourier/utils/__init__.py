import importlib
from typing import Any, Iterable, Tuple

from .errors import DomainError, NumericalError, ParseError
from .errors import ShapeError, SizeGuardError, SymmetryError

__all__ = [
    'DomainError',
    'NumericalError',
    'ParseError',
    'ShapeError',
    'SizeGuardError',
    'SymmetryError',
    'dynamic_import_from',
    'signal_last',
]


def dynamic_import_from(source_file: str, class_name: str) -> Any:
    """Do a from source_file import class_name dynamically

    Args:
        source_file (str): Where to import from
        class_name (str): What to import

    Returns:
        Any: The class to be imported
    """
    module = importlib.import_module(source_file)
    return getattr(module, class_name)


def signal_last(input_iterable: Iterable[Any]) -> Iterable[Tuple[bool, Any]]:
    """Yield (is_last, item) pairs, nothing for an empty iterable"""
    iterable = iter(input_iterable)
    try:
        return_value = next(iterable)
    except StopIteration:
        return
    for value in iterable:
        yield False, return_value
        return_value = value
    yield True, return_value
