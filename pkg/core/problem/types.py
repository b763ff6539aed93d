"""Problem and solution data model.

All values are immutable containers around numpy arrays. Construction does
no validation beyond shape coercion; see ``core.problem.validation``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Any

import numpy as np

from core.errors import DimensionMismatch, MalformedInput


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class WeightMatrix:
    """Symmetric positive definite weights in diagonal or full storage.

    ``values`` has shape (m,) for diagonal storage and (m, m) for full storage.
    """

    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim not in (1, 2):
            raise DimensionMismatch(f"Weights must be a vector or a matrix, got ndim={values.ndim}")
        object.__setattr__(self, "values", _frozen(values))

    @classmethod
    def unit(cls, m: int) -> WeightMatrix:
        return cls(np.ones(m))

    @classmethod
    def diagonal(cls, w) -> WeightMatrix:
        return cls(np.asarray(w, dtype=float).reshape(-1))

    @classmethod
    def full(cls, w) -> WeightMatrix:
        return cls(np.atleast_2d(np.asarray(w, dtype=float)))

    @property
    def is_diagonal(self) -> bool:
        return self.values.ndim == 1

    @property
    def size(self) -> int:
        return self.values.shape[0]

    def dense(self) -> np.ndarray:
        """Return the weights as an m×m array."""
        if self.is_diagonal:
            return np.diag(self.values)
        return np.array(self.values)

    def total(self) -> float:
        """Sum of all entries, the normalizer of the cost."""
        return float(self.values.sum())

    def row_sums(self) -> np.ndarray:
        if self.is_diagonal:
            return np.array(self.values)
        return self.values.sum(axis=1)

    def matvec(self, r: np.ndarray) -> np.ndarray:
        if self.is_diagonal:
            return self.values * r
        return self.values @ r

    def quadratic(self, r: np.ndarray) -> float:
        """Evaluate rᵀWr."""
        return float(r @ self.matvec(r))

    def scaled(self, c: float) -> WeightMatrix:
        return WeightMatrix(self.values * c)

    def to_dict(self) -> dict | str:
        if self.is_diagonal:
            if np.all(self.values == 1.0):
                return "unit"
            return {"diag": self.values.tolist()}
        return {"full": self.values.tolist()}

    @classmethod
    def from_dict(cls, data: Any, m: int) -> WeightMatrix:
        """Parse the ``weights`` entry of a problem file.

        Accepts ``"unit"``, ``{"diag": [...]}`` or ``{"full": [[...]]}``.
        """
        if data is None or data == "unit":
            return cls.unit(m)
        if isinstance(data, dict) and "diag" in data:
            return cls.diagonal(_as_float_array(data["diag"], "weights.diag"))
        if isinstance(data, dict) and "full" in data:
            return cls.full(_as_float_array(data["full"], "weights.full"))
        raise MalformedInput(f"Unrecognized weights specification: {data!r}")


@dataclass(frozen=True, eq=False)
class TrilaterationProblem:
    """Sender positions, measured distances and weights in R^dim."""

    dim: int
    senders: np.ndarray
    distances: np.ndarray
    weights: WeightMatrix

    def __post_init__(self):
        senders = np.array(self.senders, dtype=float)
        if senders.ndim == 1:
            senders = senders.reshape(-1, 1) if self.dim == 1 else senders.reshape(1, -1)
        distances = np.array(self.distances, dtype=float).reshape(-1)
        object.__setattr__(self, "senders", _frozen(senders))
        object.__setattr__(self, "distances", _frozen(distances))

    @classmethod
    def create(cls, senders, distances, weights: WeightMatrix | None = None,
               dim: int | None = None) -> TrilaterationProblem:
        """Build a problem, inferring the dimension from the sender array.

        Raises:
            DimensionMismatch: If senders have ragged lengths.
        """
        try:
            sender_array = np.array(senders, dtype=float)
        except ValueError as e:
            raise DimensionMismatch(f"Senders have inconsistent lengths: {e}") from e
        if sender_array.ndim == 1:
            sender_array = sender_array.reshape(-1, 1)
        if dim is None:
            dim = sender_array.shape[1]
        distance_array = np.array(distances, dtype=float).reshape(-1)
        if weights is None:
            weights = WeightMatrix.unit(distance_array.shape[0])
        return cls(dim=int(dim), senders=sender_array, distances=distance_array, weights=weights)

    @property
    def m(self) -> int:
        return self.senders.shape[0]

    def replace(self, **changes) -> TrilaterationProblem:
        return replace(self, **changes)

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "senders": self.senders.tolist(),
            "distances": self.distances.tolist(),
            "weights": self.weights.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> TrilaterationProblem:
        """Parse the problem JSON schema.

        Raises:
            MalformedInput: If required keys are missing or have the wrong type.
            DimensionMismatch: If senders have ragged lengths.
        """
        if not isinstance(data, dict):
            raise MalformedInput("Problem must be a JSON object")
        missing = [key for key in ("dim", "senders", "distances") if key not in data]
        if missing:
            raise MalformedInput(f"Problem is missing keys: {', '.join(missing)}")
        if not isinstance(data["dim"], int) or isinstance(data["dim"], bool):
            raise MalformedInput(f"'dim' must be an integer, got {data['dim']!r}")

        distances = _as_float_array(data["distances"], "distances")
        try:
            senders = np.array(data["senders"], dtype=float)
        except (TypeError, ValueError) as e:
            raise DimensionMismatch(f"Senders have inconsistent lengths: {e}") from e
        if senders.ndim != 2:
            raise DimensionMismatch("'senders' must be a list of coordinate lists")
        weights = WeightMatrix.from_dict(data.get("weights", "unit"), distances.shape[0])
        return cls(dim=data["dim"], senders=senders, distances=distances, weights=weights)


def _as_float_array(value: Any, name: str) -> np.ndarray:
    try:
        return np.array(value, dtype=float)
    except (TypeError, ValueError) as e:
        raise MalformedInput(f"'{name}' must contain numbers: {e}") from e


class SolutionKind(str, Enum):
    UNIQUE = "unique"
    PAIR = "pair"
    SPHERE = "sphere"
    ILL_DEFINED = "ill_defined"


@dataclass(frozen=True, eq=False)
class Sphere:
    """Continuum of minimizers: a sphere inside ``center + span(normal_space)``.

    ``normal_space`` columns are the kernel directions of λI−D rotated back
    to world coordinates.
    """

    center: np.ndarray
    radius: float
    normal_space: np.ndarray

    def sample(self) -> np.ndarray:
        """Return one point of the sphere."""
        return self.center + self.radius * self.normal_space[:, 0]

    def to_dict(self) -> dict:
        return {
            "center": self.center.tolist(),
            "radius": float(self.radius),
            "normal_space": self.normal_space.T.tolist(),
        }


@dataclass(frozen=True, eq=False)
class SolutionSet:
    """Classified set of global minimizers of the weighted cost."""

    kind: SolutionKind
    points: tuple[np.ndarray, ...]
    lam: float
    cost: float
    rank: int
    sphere: Sphere | None = None

    @property
    def is_determined(self) -> bool:
        """True for a unique point or a mirrored pair."""
        return self.kind in (SolutionKind.UNIQUE, SolutionKind.PAIR)

    @property
    def best(self) -> np.ndarray | None:
        """First returned point, or None when there is none."""
        return self.points[0] if self.points else None

    def to_dict(self) -> dict:
        result = {
            "kind": self.kind.value,
            "points": [x.tolist() for x in self.points],
            "lambda": float(self.lam),
            "cost": float(self.cost) if np.isfinite(self.cost) else None,
            "rank": int(self.rank),
        }
        if self.sphere is not None:
            result["sphere"] = self.sphere.to_dict()
        return result
