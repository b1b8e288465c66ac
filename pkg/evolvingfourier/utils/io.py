"""Readers and writers for the graph JSON, signal CSV and coefficient CSV formats"""
import csv
import json
import os
import re
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, TextIO, Union

import numpy as np
import yaml

from ..graph import DynamicGraph, LaplacianKind
from ..spectral import EftCoefficients, time_frequencies
from .errors import ParseError, ShapeError

PathLike = Union[str, Path]

COEFFS_HEADER = re.compile(
    r"^#\s*eft\s+N=(?P<n>\d+)\s+T=(?P<t>\d+)\s+kind=(?P<kind>\w+)\s+norm=(?P<norm>\w+)\s*$"
)


def check_for_dir(path: PathLike) -> None:
    """
    Checks if directory exists, if not, makes a new directory
    """
    if path and not os.path.exists(path):
        os.makedirs(path)


def _check_exists(path: PathLike) -> Path:
    path = Path(path)
    if not path.is_file():
        raise ParseError("No such file", path=path)
    return path


@contextmanager
def _open_text(path: Path, newline: Optional[str] = None) -> Iterator[TextIO]:
    """Open a UTF-8 text file for reading, turning decode and OS errors into ParseError"""
    try:
        with open(path, 'r', encoding='utf-8', newline=newline) as file:
            yield file
    except UnicodeDecodeError as error:
        raise ParseError(f"Not UTF-8 text: {error.reason}", path=path)
    except OSError as error:
        raise ParseError(error.strerror or str(error), path=path)


def load_json(fname: PathLike) -> Any:
    """
    Load json file, reporting the position of syntax errors.
    :param fname: (str) path to json
    """
    fname = _check_exists(fname)
    with _open_text(fname) as in_config:
        try:
            return json.load(in_config)
        except json.JSONDecodeError as error:
            raise ParseError(error.msg, path=fname, line=error.lineno, column=error.colno)


def write_json(path: PathLike, data: Any) -> None:
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(data, f, ensure_ascii=False, indent=4)


def load_config(fname: PathLike) -> Dict[str, Any]:
    """
    Load a YAML or JSON configuration file (chosen by suffix).
    :param fname: (str) path to the config
    """
    fname = _check_exists(fname)
    if fname.suffix.lower() == ".json":
        config = load_json(fname)
    else:
        with _open_text(fname) as file:
            try:
                config = yaml.safe_load(file)
            except yaml.YAMLError as error:
                mark = getattr(error, "problem_mark", None)
                raise ParseError(
                    str(error).splitlines()[0],
                    path=fname,
                    line=None if mark is None else mark.line + 1,
                    column=None if mark is None else mark.column + 1,
                )
    if config is None:
        return {}
    if not isinstance(config, dict):
        raise ParseError("Configuration must be a mapping", path=fname)
    return config


def parse_graph_json(path: PathLike) -> DynamicGraph:
    """Read a dynamic graph {"num_nodes": N, "snapshots": [[[u, v, w], ...], ...]}

    Args:
        path (PathLike): JSON file.

    Raises:
        ParseError: When the file is not valid JSON or does not follow the schema.
        SymmetryError: When an edge is listed twice with different weights.
        DomainError: When a node id is out of range or a weight is negative.

    Returns:
        DynamicGraph: The parsed graph.
    """
    content = load_json(path)
    if not isinstance(content, dict) or "num_nodes" not in content or "snapshots" not in content:
        raise ParseError("Expected an object with keys 'num_nodes' and 'snapshots'", path=path)
    num_nodes = content["num_nodes"]
    if not isinstance(num_nodes, int) or isinstance(num_nodes, bool):
        raise ParseError(f"'num_nodes' must be an integer, got {num_nodes!r}", path=path)
    snapshots = content["snapshots"]
    if not isinstance(snapshots, list):
        raise ParseError("'snapshots' must be a list of edge lists", path=path)
    edge_lists = []
    for t, edges in enumerate(snapshots):
        if not isinstance(edges, list):
            raise ParseError(f"Snapshot {t} must be a list of [u, v, w] triplets", path=path)
        triplets = []
        for edge in edges:
            if (
                not isinstance(edge, list)
                or len(edge) != 3
                or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in edge)
                or float(edge[0]) != int(edge[0])
                or float(edge[1]) != int(edge[1])
            ):
                raise ParseError(f"Malformed edge {edge!r} in snapshot {t}", path=path)
            triplets.append((int(edge[0]), int(edge[1]), float(edge[2])))
        edge_lists.append(triplets)
    return DynamicGraph.from_edge_lists(num_nodes, edge_lists)


def write_graph_json(path: PathLike, dg: DynamicGraph) -> None:
    """Write a dynamic graph in the format read by parse_graph_json"""
    content = {
        "num_nodes": dg.num_nodes,
        "snapshots": [[[u, v, w] for u, v, w in edges] for edges in dg.edge_lists()],
    }
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(content, f)


def _read_real_rows(path: Path, skip_comments: bool = False) -> List[List[float]]:
    rows = []
    with _open_text(path, newline='') as file:
        for line_number, row in enumerate(csv.reader(file), start=1):
            if not row or (skip_comments and row[0].lstrip().startswith("#")):
                continue
            values = []
            for column, field in enumerate(row, start=1):
                try:
                    values.append(float(field))
                except ValueError:
                    raise ParseError(
                        f"Cannot parse {field!r} as a real number",
                        path=path,
                        line=line_number,
                        column=column,
                    )
            if rows and len(values) != len(rows[0]):
                raise ParseError(
                    f"Expected {len(rows[0])} columns, got {len(values)}",
                    path=path,
                    line=line_number,
                )
            rows.append(values)
    return rows


def parse_signal_csv(path: PathLike) -> np.ndarray:
    """Read an N x T real signal: N rows of T comma-separated values, no header

    Args:
        path (PathLike): CSV file.

    Raises:
        ParseError: When a field is not a real number or rows have different lengths.

    Returns:
        np.ndarray: N x T float array.
    """
    path = _check_exists(path)
    rows = _read_real_rows(path)
    if not rows:
        raise ParseError("Signal file is empty", path=path)
    return np.asarray(rows, dtype=float)


def write_signal_csv(path: PathLike, signal: np.ndarray) -> None:
    signal = np.asarray(signal)
    if signal.ndim != 2:
        raise ShapeError(f"Signal must be N x T, got shape {signal.shape}")
    if np.iscomplexobj(signal):
        signal = signal.real
    with open(path, 'w', newline='', encoding='utf-8') as file:
        writer = csv.writer(file)
        for row in signal:
            writer.writerow([format(value, ".17g") for value in row])


def write_coeffs_csv(path: PathLike, coeffs: EftCoefficients) -> None:
    """Write coefficients as N rows of 2T columns alternating real and imaginary parts

    The first line is the header `# eft N=<N> T=<T> kind=<kind> norm=unitary`.

    Args:
        path (PathLike): Output file.
        coeffs (EftCoefficients): Coefficients to write.
    """
    values = np.asarray(coeffs.values, dtype=complex)
    num_nodes, num_timesteps = values.shape
    interleaved = np.empty((num_nodes, 2 * num_timesteps))
    interleaved[:, 0::2] = values.real
    interleaved[:, 1::2] = values.imag
    kind = LaplacianKind.parse(coeffs.kind).value
    with open(path, 'w', newline='', encoding='utf-8') as file:
        file.write(f"# eft N={num_nodes} T={num_timesteps} kind={kind} norm=unitary\n")
        writer = csv.writer(file)
        for row in interleaved:
            writer.writerow([format(value, ".17g") for value in row])


def parse_coeffs_csv(path: PathLike) -> EftCoefficients:
    """Read a coefficient file written by write_coeffs_csv

    Graph frequencies are not stored in the file, so graph_freqs is None.

    Args:
        path (PathLike): CSV file.

    Raises:
        ParseError: When the header is missing or the body does not match it.

    Returns:
        EftCoefficients: Coefficients with the kind taken from the header.
    """
    path = _check_exists(path)
    with _open_text(path) as file:
        header = file.readline().strip()
    match = COEFFS_HEADER.match(header)
    if match is None:
        raise ParseError(
            "Expected header '# eft N=<N> T=<T> kind=<kind> norm=unitary'",
            path=path,
            line=1,
            column=1,
        )
    if match.group("norm") != "unitary":
        raise ParseError(f"Unsupported normalization {match.group('norm')!r}", path=path, line=1)
    num_nodes, num_timesteps = int(match.group("n")), int(match.group("t"))
    try:
        kind = LaplacianKind.parse(match.group("kind"))
    except ValueError as error:
        raise ParseError(str(error), path=path, line=1)
    rows = _read_real_rows(path, skip_comments=True)
    if len(rows) != num_nodes or any(len(row) != 2 * num_timesteps for row in rows):
        raise ParseError(
            f"Header announces {num_nodes} rows of {2 * num_timesteps} columns",
            path=path,
        )
    interleaved = np.asarray(rows, dtype=float)
    values = interleaved[:, 0::2] + 1j * interleaved[:, 1::2]
    return EftCoefficients(
        values=values,
        graph_freqs=None,
        time_freqs=time_frequencies(num_timesteps),
        kind=kind,
    )


def parse_filter_json(path: PathLike) -> Dict[str, Any]:
    """Read a filter description {"vertex": {...}, "temporal": {...}}

    Args:
        path (PathLike): JSON file.

    Raises:
        ParseError: When the file is not valid JSON or a section is not an object.

    Returns:
        Dict[str, Any]: The vertex and temporal sections (missing ones are empty).
    """
    content = load_json(path)
    if not isinstance(content, dict):
        raise ParseError("Filter description must be an object", path=path)
    out = {}
    for section in ("vertex", "temporal"):
        value = content.get(section, {})
        if not isinstance(value, dict):
            raise ParseError(f"Section {section!r} must be an object", path=path)
        out[section] = value
    return out
