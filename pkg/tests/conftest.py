import numpy as np
import pytest

from eprbell import Direction, PairDist


def random_direction(rng: np.random.Generator) -> Direction:
    z = rng.uniform(-1.0, 1.0)
    phi = rng.uniform(0.0, 2.0 * np.pi)
    r = np.sqrt(max(0.0, 1.0 - z * z))
    return Direction(r * np.cos(phi), r * np.sin(phi), z)


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    """Haar-ish random rotation matrix from the QR decomposition of a Gaussian."""
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q *= np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def random_pair_dist(rng: np.random.Generator) -> PairDist:
    t = rng.uniform(0.0, 1.0, size=(2, 2))
    return PairDist(t / t.sum())


# A contradictory set of three pairwise tables whose third-order joint cannot exist:
# A and B perfectly correlated, C and A perfectly correlated, B and C
# perfectly anti-correlated.
CONTRA_AB = {"pp": 0.5, "pm": 0.0, "mp": 0.0, "mm": 0.5}
CONTRA_BC = {"pp": 0.0, "pm": 0.5, "mp": 0.5, "mm": 0.0}
CONTRA_CA = {"pp": 0.5, "pm": 0.0, "mp": 0.0, "mm": 0.5}


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)
