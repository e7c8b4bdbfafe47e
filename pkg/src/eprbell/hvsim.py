"""Stochastic hidden-variable simulation of the single-device spin pair.

Each sample draws a hidden unit vector lambda uniformly on the sphere,
classifies it into one of two regions whose areas are 2*pi*(1 +- a.b), which
fixes the product C = A(a)*A(b), and then draws the pair (A(a), A(b)) from
the C-conditional half/half table. Mixing over lambda reproduces the
single-device table exactly; mapping B(b) = -A(b) (total-spin conservation)
reproduces the two-device singlet table.

Reproducibility contract: samples are generated in fixed blocks of 65,536.
Block k of a run with seed s uses an independent PCG64 stream seeded by
``numpy.random.SeedSequence((s, k))``, and each block draws, in order, its
z coordinates, azimuths, and pair signs. Totals are integer counts summed
over blocks, so results are bit-identical for any worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .geometry import Direction
from .spincore import PairDist, local_pair_dist, qm_pair_dist

BLOCK_SIZE = 65_536


def block_rng(seed: int, block_index: int) -> np.random.Generator:
    """Independent generator for one sample block of a seeded run."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence((seed, block_index))))


def sample_lambda(rng: np.random.Generator, n: int = 1) -> np.ndarray:
    """Uniform points on the unit sphere, shape (n, 3).

    z is uniform on [-1, 1] and the azimuth uniform on [0, 2*pi); draw order
    (z first, then azimuth) is part of the reproducibility contract.
    """
    z = rng.uniform(-1.0, 1.0, n)
    phi = rng.uniform(0.0, 2.0 * math.pi, n)
    r = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    return np.column_stack((r * np.cos(phi), r * np.sin(phi), z))


@dataclass(frozen=True)
class PartitionSpec:
    """Spherical-cap partition of the unit sphere for device directions (a, b).

    The cap S+ is centered on ``cap_axis`` with angular radius ``cap_angle``
    chosen so its area is 2*pi*(1 + a.b); only the area enters the outcome
    probabilities, so the axis choice is immaterial.
    """

    a: Direction
    b: Direction
    cap_axis: Direction
    cap_angle: float

    @classmethod
    def for_directions(cls, a: Direction, b: Direction) -> "PartitionSpec":
        x = max(-1.0, min(1.0, a.dot(b)))
        return cls(a=a, b=b, cap_axis=a, cap_angle=math.acos(-x))

    @property
    def cos_threshold(self) -> float:
        return math.cos(self.cap_angle)


def classify(lam: np.ndarray, part: PartitionSpec) -> np.ndarray:
    """C = +1 where lambda lies in the cap (boundary counts as inside), else -1."""
    lam = np.atleast_2d(np.asarray(lam, dtype=float))
    inside = lam @ part.cap_axis.as_array() >= part.cos_threshold
    return np.where(inside, 1, -1)


def p_c_analytic(a: Direction, b: Direction) -> dict[int, float]:
    """P[C = c] = (1 + c * a.b) / 2, the cap-area ratio."""
    x = a.dot(b)
    return {1: 0.5 * (1.0 + x), -1: 0.5 * (1.0 - x)}


def sample_pair_given_c(c, rng: np.random.Generator):
    """Draw (A(a), A(b)) from the C-conditional table: A(a) is a fair sign
    and A(b) = A(a) * C, so A(a)*A(b) = C always."""
    c = np.asarray(c)
    s = np.where(rng.integers(0, 2, c.shape) == 1, 1, -1)
    return s, s * c


def mixture_pair_dist(a: Direction, b: Direction) -> PairDist:
    """Analytic mixture sum over C of P[pair | C] * P[C]; equals the
    single-device table entrywise."""
    pc = p_c_analytic(a, b)
    equal = 0.5 * pc[1]
    unequal = 0.5 * pc[-1]
    return PairDist(np.array([[equal, unequal], [unequal, equal]]))


@dataclass(frozen=True)
class SimReport:
    n_samples: int
    seed: int
    mode: str
    theta_ab_rad: float
    empirical: np.ndarray  # 2x2 frequency table, same indexing as PairDist
    theoretical: PairDist
    max_abs_dev: float
    chi_square: float

    def empirical_mapping(self) -> dict[str, float]:
        e = self.empirical
        return {"pp": float(e[0, 0]), "pm": float(e[0, 1]),
                "mp": float(e[1, 0]), "mm": float(e[1, 1])}


def _simulate_block(seed: int, block_index: int, count: int, part: PartitionSpec, singlet: bool) -> np.ndarray:
    rng = block_rng(seed, block_index)
    lam = sample_lambda(rng, count)
    c = classify(lam, part)
    first, second = sample_pair_given_c(c, rng)
    if singlet:
        second = -second
    idx = (first < 0) * 2 + (second < 0)
    return np.bincount(idx, minlength=4)


def simulate(
    a: Direction,
    b: Direction,
    n: int,
    seed: int,
    mode: str = "local",
    threads: int = 1,
) -> SimReport:
    """Run the hidden-variable pipeline for n samples.

    mode="local" targets the single-device table for (A(a), A(b));
    mode="singlet" maps B(b) = -A(b) and targets the two-device table for
    (A(a), B(b)). Output is bit-identical for any ``threads`` value.
    """
    if n < 1:
        raise InvalidInputError(f"n must be >= 1, got {n}")
    if mode not in ("local", "singlet"):
        raise InvalidInputError(f"mode must be 'local' or 'singlet', got {mode!r}")
    part = PartitionSpec.for_directions(a, b)
    singlet = mode == "singlet"

    n_blocks = (n + BLOCK_SIZE - 1) // BLOCK_SIZE
    sizes = [min(BLOCK_SIZE, n - k * BLOCK_SIZE) for k in range(n_blocks)]
    if threads > 1 and n_blocks > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(
                pool.map(
                    lambda k: _simulate_block(seed, k, sizes[k], part, singlet),
                    range(n_blocks),
                )
            )
    else:
        parts = [_simulate_block(seed, k, sizes[k], part, singlet) for k in range(n_blocks)]
    counts = np.sum(parts, axis=0).reshape(2, 2)

    theoretical = qm_pair_dist(a, b) if singlet else local_pair_dist(a, b)
    empirical = counts / n
    max_abs_dev = float(np.max(np.abs(empirical - theoretical.table)))
    expected = n * theoretical.table
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(expected > 0, (counts - expected) ** 2 / np.where(expected > 0, expected, 1.0), 0.0)
    chi_square = float(terms.sum())
    return SimReport(
        n_samples=n,
        seed=seed,
        mode=mode,
        theta_ab_rad=a.angle_to(b),
        empirical=empirical,
        theoretical=theoretical,
        max_abs_dev=max_abs_dev,
        chi_square=chi_square,
    )


@dataclass(frozen=True)
class ProductRuleEstimate:
    label: str
    b: Direction
    estimate: float
    target: float


def _orthogonal_to(a: Direction) -> Direction:
    v = a.as_array()
    helper = np.array([0.0, 0.0, 1.0]) if abs(v[2]) < 0.9 else np.array([1.0, 0.0, 0.0])
    w = np.cross(v, helper)
    return Direction.from_array(w / np.linalg.norm(w))


def product_rule_demo(a: Direction, n: int = 1_000_000, seed: int = 0) -> list[ProductRuleEstimate]:
    """Estimate P[A(a)=1 | B(b)=1] in singlet mode for b = a, b = -a and an
    orthogonal b. The estimates (targets 0, 1, 1/2) depend on b, so no
    conditional of the form P[A(a) | lambda, a] alone can reproduce them."""
    cases = [("b = a", a, 0.0), ("b = -a", -a, 1.0), ("b orthogonal", _orthogonal_to(a), 0.5)]
    out = []
    for label, b, target in cases:
        rep = simulate(a, b, n, seed, mode="singlet")
        # P[A(a)=1 | B(b)=1] from counts: cell (+,+) over column B=+1.
        pp = rep.empirical[0, 0]
        mp = rep.empirical[1, 0]
        denom = pp + mp
        estimate = float(pp / denom) if denom > 0 else float("nan")
        out.append(ProductRuleEstimate(label, b, estimate, target))
    return out
