"""Report tables and JSON summaries of the experiments"""

import logging
import os
import platform
import subprocess
from dataclasses import asdict, is_dataclass
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from ..utils.io import check_for_dir, write_json

PathLike = Union[str, Path]


def reports_to_frame(reports: Sequence[Any]) -> pd.DataFrame:
    """One row per report; mapping valued fields (config echoes) are dropped"""
    rows = []
    for report in reports:
        values = asdict(report) if is_dataclass(report) else dict(report)
        rows.append({k: v for k, v in values.items() if not isinstance(v, dict)})
    return pd.DataFrame(rows)


def summarize_reports(
    reports: Union[pd.DataFrame, Sequence[Any]],
    by: Sequence[str],
    value: str = "error",
) -> pd.DataFrame:
    """Median of value over seeds for every group

    Args:
        reports (Union[pd.DataFrame, Sequence[Any]]): Reports or their table.
        by (Sequence[str]): Grouping columns, e.g. method and keep_fraction.
        value (str, optional): Column to summarize. Defaults to "error".

    Returns:
        pd.DataFrame: Columns by + [value], skipped cells give NaN.
    """
    frame = reports if isinstance(reports, pd.DataFrame) else reports_to_frame(reports)
    return frame.groupby(list(by), sort=True)[value].median().reset_index()


def median_of(
    reports: Union[pd.DataFrame, Sequence[Any]], value: str = "error", **selection: Any
) -> float:
    """Median of value over the reports matching every column = value in selection"""
    frame = reports if isinstance(reports, pd.DataFrame) else reports_to_frame(reports)
    mask = np.ones(len(frame), dtype=bool)
    for column, expected in selection.items():
        if isinstance(expected, float):
            mask &= np.isclose(frame[column].to_numpy(dtype=float), expected)
        else:
            mask &= (frame[column] == expected).to_numpy()
    return float(frame.loc[mask, value].median())


def git_describe() -> str:
    """Output of git describe --always --dirty for the source tree, or "unknown" """
    try:
        completed = subprocess.run(
            ["git", "describe", "--always", "--dirty"],
            cwd=Path(__file__).resolve().parent,
            capture_output=True,
            text=True,
            check=True,
            timeout=10,
        )
    except (OSError, subprocess.SubprocessError):
        return "unknown"
    return completed.stdout.strip() or "unknown"


def hardware_note() -> Dict[str, Any]:
    return {
        "platform": platform.platform(),
        "processor": platform.processor() or platform.machine(),
        "cpu_count": os.cpu_count(),
        "python": platform.python_version(),
    }


def report_path(experiment: str, out: Optional[PathLike] = None, out_dir: PathLike = ".") -> Path:
    """out when given, otherwise <out_dir>/<experiment>_<timestamp>.csv"""
    if out is not None:
        return Path(out)
    timestamp = datetime.now().strftime("%Y%m%d-%H%M%S")
    return Path(out_dir) / f"{experiment}_{timestamp}.csv"


def write_report(
    reports: Union[pd.DataFrame, Sequence[Any]],
    experiment: str,
    out: Optional[PathLike] = None,
    out_dir: PathLike = ".",
    config: Optional[Dict[str, Any]] = None,
    summary_by: Optional[Sequence[str]] = None,
    summary_value: str = "error",
) -> Tuple[Path, Path]:
    """Write the report table as CSV and a JSON summary next to it

    Args:
        reports (Union[pd.DataFrame, Sequence[Any]]): Report rows.
        experiment (str): Experiment name used in the default file name.
        out (Optional[PathLike], optional): CSV path. Defaults to a timestamped name.
        out_dir (PathLike, optional): Directory of the default file name. Defaults to ".".
        config (Optional[Dict[str, Any]], optional): Config echoed in the summary. Defaults to None.
        summary_by (Optional[Sequence[str]], optional): Grouping of the median summary.
            Defaults to None (no summary table).
        summary_value (str, optional): Column of the median summary. Defaults to "error".

    Returns:
        Tuple[Path, Path]: The CSV and JSON paths.
    """
    frame = reports if isinstance(reports, pd.DataFrame) else reports_to_frame(reports)
    csv_path = report_path(experiment, out=out, out_dir=out_dir)
    check_for_dir(csv_path.parent)
    frame.to_csv(csv_path, index=False, float_format="%.17g")
    summary: Dict[str, Any] = {
        "experiment": experiment,
        "rows": len(frame),
        "config": config if config is not None else {},
        "git": git_describe(),
        "hardware": hardware_note(),
    }
    if summary_by is not None and len(frame) > 0:
        medians = summarize_reports(frame, summary_by, summary_value)
        summary["medians"] = [
            {k: _plain(v) for k, v in row.items()} for row in medians.to_dict(orient="records")
        ]
    json_path = csv_path.with_suffix(".json")
    write_json(json_path, summary)
    logging.info("Wrote %d %s rows to %s", len(frame), experiment, csv_path)
    return csv_path, json_path


def _plain(value: Any) -> Any:
    if isinstance(value, (np.floating, float)):
        return None if np.isnan(value) else float(value)
    if isinstance(value, np.integer):
        return int(value)
    return value
