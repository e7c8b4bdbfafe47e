"""Bell-1964 and CHSH inequality evaluation, their reduction, local-model
covariances, and grid search for violating coplanar orientations.

Covariance conventions follow the two-device tables: the singlet covariance
for orientations at angle theta is -cos(theta). Coplanar configurations are
parameterized by signed angles from a reference axis, which guarantees the
pairwise angles are geometrically realizable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import InvalidGeometryError, InvalidInputError, InvalidModelError
from .geometry import Direction

VIOLATION_SLACK = 1e-12


def _check_cov(name: str, value: float) -> float:
    if not -1.0 <= value <= 1.0:
        raise InvalidInputError(f"covariance {name} = {value} outside [-1, 1]")
    return float(value)


@dataclass(frozen=True)
class CovarianceTriple:
    c_ab: float
    c_ac: float
    c_bc: float

    def __post_init__(self):
        for name in ("c_ab", "c_ac", "c_bc"):
            _check_cov(name, getattr(self, name))


@dataclass(frozen=True)
class CovarianceQuad:
    c_ab: float
    c_ac: float
    c_db: float
    c_dc: float

    def __post_init__(self):
        for name in ("c_ab", "c_ac", "c_db", "c_dc"):
            _check_cov(name, getattr(self, name))


@dataclass(frozen=True)
class InequalityVerdict:
    lhs: float
    bound: float
    satisfied: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "satisfied", self.lhs <= self.bound + VIOLATION_SLACK)


def bell_1964(t: CovarianceTriple) -> InequalityVerdict:
    """|c_ab - c_ac| - c_bc <= 1."""
    return InequalityVerdict(abs(t.c_ab - t.c_ac) - t.c_bc, 1.0)


def chsh(q: CovarianceQuad) -> InequalityVerdict:
    """|c_ab - c_ac| + |c_db + c_dc| <= 2."""
    return InequalityVerdict(abs(q.c_ab - q.c_ac) + abs(q.c_db + q.c_dc), 2.0)


def bell_pair_inequalities(c_ab: float, c_ac: float, c_bc: float) -> tuple[InequalityVerdict, InequalityVerdict]:
    """The single-device covariance pair: |c_ab + c_ac| - c_bc <= 1 and
    |c_ab - c_ac| + c_bc <= 1. Both must hold for a third-order joint to exist."""
    for name, v in (("c_ab", c_ab), ("c_ac", c_ac), ("c_bc", c_bc)):
        _check_cov(name, v)
    first = InequalityVerdict(abs(c_ab + c_ac) - c_bc, 1.0)
    second = InequalityVerdict(abs(c_ab - c_ac) + c_bc, 1.0)
    return first, second


def _wrap_angle(theta: float) -> float:
    """Reduce to the geometric angle between two unit vectors, in [0, pi]."""
    return math.acos(max(-1.0, min(1.0, math.cos(theta))))


def qm_bell_lhs(theta_ab: float, theta_ac: float, theta_bc: float) -> float:
    """Bell-1964 left-hand side |cos t_ab - cos t_ac| + cos t_bc for singlet
    covariances at coplanar orientations.

    The triple must be realizable: t_ac must equal t_ab + t_bc or
    |t_ab - t_bc| up to reflection about pi.
    """
    tab, tac, tbc = (_wrap_angle(t) for t in (theta_ab, theta_ac, theta_bc))
    realizable = any(
        abs(_wrap_angle(tab + s * tbc) - tac) <= 1e-9 for s in (1.0, -1.0)
    )
    if not realizable:
        raise InvalidGeometryError(
            f"angles ({theta_ab}, {theta_ac}, {theta_bc}) not realizable by coplanar unit vectors"
        )
    return abs(math.cos(tab) - math.cos(tac)) + math.cos(tbc)


def chsh_to_bell_reduction(t: CovarianceTriple) -> tuple[float, float]:
    """Set d = b in the CHSH expression, with c_db = -1 from total-spin
    conservation. Then |c_db + c_dc| = 1 - c_bc and the CHSH left-hand side
    equals the Bell-1964 left-hand side plus one, exactly.

    Returns (chsh_lhs_with_d_eq_b, bell_lhs).
    """
    bell_lhs = abs(t.c_ab - t.c_ac) - t.c_bc
    return bell_lhs + 1.0, bell_lhs


@dataclass(frozen=True)
class LocalModel:
    """A factorized hidden-variable model: independent outcomes given lambda.

    ``mean_a(lams, a)`` and ``mean_b(lams, b)`` return conditional means in
    [-1, 1] for an (n, 3) array of unit vectors lambda. ``sample_lambda``
    optionally overrides the default uniform-sphere density; it receives
    (rng, n) and returns an (n, 3) array.
    """

    mean_a: Callable[[np.ndarray, Direction], np.ndarray]
    mean_b: Callable[[np.ndarray, Direction], np.ndarray]
    sample_lambda: Optional[Callable[[np.random.Generator, int], np.ndarray]] = None


def _uniform_sphere(rng: np.random.Generator, n: int) -> np.ndarray:
    z = rng.uniform(-1.0, 1.0, n)
    phi = rng.uniform(0.0, 2.0 * math.pi, n)
    r = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    return np.column_stack((r * np.cos(phi), r * np.sin(phi), z))


def bell_local_model_covariance(
    model: LocalModel,
    a: Direction,
    b: Direction,
    n_samples: int = 100_000,
    seed: int = 0,
) -> float:
    """Monte Carlo estimate of <A(a)B(b)> = E_lambda[ <A|lambda,a> <B|lambda,b> ]."""
    if n_samples < 1:
        raise InvalidInputError(f"n_samples must be >= 1, got {n_samples}")
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    sampler = model.sample_lambda or _uniform_sphere
    lams = np.asarray(sampler(rng, n_samples), dtype=float)
    ma = np.asarray(model.mean_a(lams, a), dtype=float)
    mb = np.asarray(model.mean_b(lams, b), dtype=float)
    for name, m in (("mean_a", ma), ("mean_b", mb)):
        if m.size and (m.min() < -1.0 - 1e-12 or m.max() > 1.0 + 1e-12):
            raise InvalidModelError(f"{name} returned values outside [-1, 1]")
    return float(np.mean(ma * mb))


@dataclass(frozen=True)
class ScanResult:
    inequality: str
    resolution: float
    max_lhs: float
    argmax_angles: tuple[float, ...]
    violations: list[tuple[tuple[float, ...], float]]


def violation_scan(inequality: str, resolution: float) -> ScanResult:
    """Exhaustive grid search over coplanar orientations using singlet
    covariances c_xy = -cos(phi_x - phi_y); phi_a is gauge-fixed to 0.

    Bell scans (phi_b, phi_c); CHSH scans (phi_b, phi_c, phi_d). Grids are
    multiples of ``resolution`` in [0, 2*pi), so the known extrema at pi/4
    multiples are on-grid whenever resolution divides pi/4.
    """
    if not 0.0 < resolution <= math.pi / 8.0 + 1e-15:
        raise InvalidInputError(f"resolution must be in (0, pi/8], got {resolution}")
    n = int(round(2.0 * math.pi / resolution))
    grid = resolution * np.arange(n)

    if inequality == "bell":
        pb, pc = np.meshgrid(grid, grid, indexing="ij")
        lhs = np.abs(-np.cos(pb) + np.cos(pc)) - (-np.cos(pc - pb))
        bound = 1.0
        angles = (pb, pc)
    elif inequality == "chsh":
        pb, pc, pd = np.meshgrid(grid, grid, grid, indexing="ij")
        lhs = np.abs(-np.cos(pb) + np.cos(pc)) + np.abs(-np.cos(pd - pb) - np.cos(pd - pc))
        bound = 2.0
        angles = (pb, pc, pd)
    else:
        raise InvalidInputError(f"inequality must be 'bell' or 'chsh', got {inequality!r}")

    flat = lhs.ravel()
    best = int(np.argmax(flat))
    argmax = tuple(float(a.ravel()[best]) for a in angles)
    viol_idx = np.nonzero(flat > bound + VIOLATION_SLACK)[0]
    violations = [
        (tuple(float(a.ravel()[i]) for a in angles), float(flat[i])) for i in viol_idx
    ]
    return ScanResult(inequality, resolution, float(flat[best]), argmax, violations)
