"""Shared fixtures: small hand-checked instances and random problem factories."""

import math

import numpy as np
import pytest

from core.problem import TrilaterationProblem
from helpers import make_random_problem


@pytest.fixture
def triangle_problem():
    """Senders (1,0),(−1,0),(0,1); receiver at the origin, noiseless."""
    senders = np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0]])
    return TrilaterationProblem.create(senders, [1.0, 1.0, 1.0])


@pytest.fixture
def collinear_problem():
    """Senders on the y-axis; receiver (1,0) and its mirror (−1,0) both fit."""
    senders = [[0.0, -1.0], [0.0, 0.0], [0.0, 1.0]]
    return TrilaterationProblem.create(senders, [math.sqrt(2.0), 1.0, math.sqrt(2.0)])


@pytest.fixture
def circle_problem():
    """Four symmetric senders with equal distances; minimizers form a circle of radius 0.85."""
    senders = [[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]]
    return TrilaterationProblem.create(senders, [1.65] * 4)


@pytest.fixture
def line_problem():
    """1-D instance with A = 1, g = −1.875 after normalization; minimizer x = 1.5."""
    return TrilaterationProblem.create([[-1.0], [1.0]], [math.sqrt(5.875), math.sqrt(2.125)])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def random_problem(rng):
    return make_random_problem(rng)
