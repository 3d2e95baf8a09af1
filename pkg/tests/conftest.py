import numpy as np
import pytest

from qschur.quaternion import Quaternion
from qschur.series import random_schur_series


def rand_q(rng, scale=1.0):
    return Quaternion(*map(float, rng.normal(size=4) * scale))


def rand_ball(rng, radius=0.9):
    while True:
        v = rng.uniform(-1, 1, size=4)
        if np.linalg.norm(v) < radius:
            return Quaternion(*map(float, v))


def rotate_imaginary(rng, q):
    """Random point on the conjugacy sphere of q (same real part and modulus)."""
    v = rng.normal(size=3)
    v *= q.im_abs() / np.linalg.norm(v)
    return Quaternion(q.w, *map(float, v))


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture(scope="session")
def schur_fixtures():
    """Ten degree-8 series scaled so that ||T_256|| = 0.98."""
    gen = np.random.default_rng(8)
    return [random_schur_series(gen, 8, order=256, shrink=0.98) for _ in range(10)]
