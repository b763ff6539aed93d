"""Output formatting for solutions, experiment summaries and calibrations."""

import csv
import io
import json

import numpy as np
import pandas as pd

from core.problem.types import SolutionSet

FORMATS = ("json", "csv", "human")


def _coords(x: np.ndarray) -> str:
    return "(" + ", ".join(f"{v:.9g}" for v in x) + ")"


def format_solution(solution: SolutionSet, fmt: str = "json", extra: dict | None = None) -> str:
    """Render a SolutionSet.

    Args:
        solution: Solver result.
        fmt: One of json, csv, human.
        extra: Additional JSON keys (e.g. refined points); in the other
            formats only a ``refined`` list of points is shown.
    """
    extra = extra or {}
    if fmt == "json":
        return json.dumps({**solution.to_dict(), **extra}, indent=2)

    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        dim = len(solution.points[0]) if solution.points else 0
        writer.writerow(["kind", "lambda", "cost", "rank", *[f"x{i}" for i in range(dim)]])
        cost = "" if not np.isfinite(solution.cost) else f"{solution.cost:.9g}"
        head = [solution.kind.value, f"{solution.lam:.9g}", cost, solution.rank]
        for x in solution.points or [()]:
            writer.writerow([*head, *[f"{v:.9g}" for v in x]])
        for x in extra.get("refined", []):
            writer.writerow(["refined", "", "", "", *[f"{v:.9g}" for v in x]])
        return buffer.getvalue().rstrip("\n")

    dim = len(solution.points[0]) if solution.points else (
        solution.sphere.center.size if solution.sphere is not None else "?")
    lines = [
        f"Classification: {solution.kind.value} (rank {solution.rank} of {dim})",
        f"lambda_max: {solution.lam:.9g}",
        f"Cost h: {solution.cost:.6g}" if np.isfinite(solution.cost) else "Cost h: n/a",
    ]
    for i, x in enumerate(solution.points, start=1):
        lines.append(f"Point {i}: {_coords(x)}")
    if solution.sphere is not None:
        lines.append(f"Sphere: center {_coords(solution.sphere.center)}, radius {solution.sphere.radius:.9g}")
    for i, x in enumerate(extra.get("refined", []), start=1):
        lines.append(f"Refined {i}: {_coords(np.asarray(x))}")
    return "\n".join(lines)


def format_frame(frame: pd.DataFrame, fmt: str = "human") -> str:
    """Render an experiment summary table."""
    if fmt == "json":
        records = frame.replace([np.inf, -np.inf], np.nan).astype(object)
        records = records.where(pd.notna(records), None).to_dict(orient="records")
        return json.dumps(records, indent=2)
    if fmt == "csv":
        return frame.to_csv(index=False, float_format="%.9g").rstrip("\n")
    return frame.to_string(index=False, float_format=lambda v: f"{v:.4g}")


def format_calibration(c0: float, eta: float, fmt: str = "human") -> str:
    if fmt == "json":
        return json.dumps({"c0": c0, "eta": eta}, indent=2)
    if fmt == "csv":
        return f"c0,eta\n{c0:.9g},{eta:.9g}"
    return f"c0: {c0:.6g} dBm\neta: {eta:.6g}"
