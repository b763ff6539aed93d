"""Experiment report files: summary CSV, JSON summary and gnuplot data."""

import json
import os

import numpy as np
import pandas as pd

from core.bench.experiments import ExperimentResult
from services.logging_config import get_bench_logger

# Value column plotted per experiment in the .dat layout
_PLOT_COLUMNS = {
    "noise": ("sigma", "median"),
    "degen": ("scale", "median_error"),
    "timing": ("m", "median_seconds"),
}


def _json_safe(value):
    if isinstance(value, float) and not np.isfinite(value):
        return None
    if isinstance(value, (np.floating, np.integer)):
        return _json_safe(value.item())
    return value


def summary_records(result: ExperimentResult) -> list[dict]:
    """Summary rows as JSON-compatible dicts (inf/nan become null)."""
    return [
        {key: _json_safe(value) for key, value in row.items()}
        for row in result.summary.to_dict(orient="records")
    ]


def to_gnuplot(result: ExperimentResult) -> str:
    """Wide table: one row per sweep value, one column per solver.

    Missing values are written as NaN, which gnuplot skips.
    """
    key, value = _PLOT_COLUMNS[result.name]
    wide = result.summary.pivot(index=key, columns="solver", values=value)
    wide = wide.reindex(columns=[s for s in result.metadata.get("solvers", wide.columns) if s in wide.columns])
    if result.name == "degen":
        wide = wide.sort_index(ascending=False)
    lines = ["# " + " ".join([key, *wide.columns])]
    for index, row in wide.iterrows():
        cells = [f"{index:.6g}"] + [f"{v:.9g}" if np.isfinite(v) else "NaN" for v in row.to_numpy(dtype=float)]
        lines.append(" ".join(cells))
    return "\n".join(lines) + "\n"


def write_reports(result: ExperimentResult, out_dir: str, write_trials: bool = False) -> dict[str, str]:
    """Write <name>.csv, <name>.json and <name>.dat into out_dir.

    Args:
        result: Finished experiment.
        out_dir: Target directory, created if missing.
        write_trials: Also write the per-trial rows to <name>_trials.csv.

    Returns:
        Mapping from report type to written path.
    """
    os.makedirs(out_dir, exist_ok=True)
    paths = {
        "csv": os.path.join(out_dir, f"{result.name}.csv"),
        "json": os.path.join(out_dir, f"{result.name}.json"),
        "dat": os.path.join(out_dir, f"{result.name}.dat"),
    }

    result.summary.to_csv(paths["csv"], index=False, float_format="%.9g")
    with open(paths["json"], "w", encoding="utf-8") as f:
        json.dump({**result.metadata, "summary": summary_records(result)}, f, indent=2)
    with open(paths["dat"], "w", encoding="utf-8") as f:
        f.write(to_gnuplot(result))

    if write_trials and result.name != "timing":
        paths["trials"] = os.path.join(out_dir, f"{result.name}_trials.csv")
        result.trials.to_csv(paths["trials"], index=False, float_format="%.9g")

    get_bench_logger().info(f"Reports for '{result.name}' written to {out_dir}")
    return paths


def read_summary(path: str) -> pd.DataFrame:
    """Load a summary CSV written by write_reports."""
    return pd.read_csv(path)
