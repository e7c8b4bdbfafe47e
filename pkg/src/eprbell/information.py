"""Shannon-information view of the single-device spin correlation.

The mutual information between A(a) and A(b) is computed from the cell-sum
definition sum p * log2(p / (p_first * p_second)) with 0*log(0) = 0. For the
single-device table it reduces to

    I(x) = (1+x)/2 * log2(1+x) + (1-x)/2 * log2(1-x),   x = a.b,

which is even in x, zero at x = 0, and 1 bit at x = +-1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .geometry import Direction
from .spincore import PairDist


@dataclass(frozen=True)
class InfoCurvePoint:
    x: float
    mutual_information_bits: float
    conditional_entropy_bits: float


def _xlog2x(p: float) -> float:
    return p * math.log2(p) if p > 0.0 else 0.0


def mutual_information(d: PairDist) -> float:
    """Mutual information of a pair table, in bits."""
    t = d.table
    pa = t.sum(axis=1)
    pb = t.sum(axis=0)
    total = 0.0
    for i in range(2):
        for j in range(2):
            p = t[i, j]
            if p > 0.0:
                total += p * math.log2(p / (pa[i] * pb[j]))
    # Clamp -0.0 / rounding residue: I >= 0 always.
    return max(total, 0.0)


def binary_entropy(p: float) -> float:
    """Entropy of a {p, 1-p} distribution in bits, with 0*log(0) = 0."""
    if not 0.0 <= p <= 1.0:
        raise InvalidInputError(f"probability out of range: {p}")
    return max(0.0, -_xlog2x(p) - _xlog2x(1.0 - p))


def conditional_entropy(a: Direction, b: Direction) -> float:
    """H(A(b) | A(a)) in bits; the binary entropy of cos^2(theta_ab / 2)."""
    x = a.dot(b)
    return binary_entropy(0.5 * (1.0 + x))


def _local_table(x: float) -> PairDist:
    t = 0.25 * np.array([[1.0 + x, 1.0 - x], [1.0 - x, 1.0 + x]])
    return PairDist(t, ("A", "A'"))


def info_curve(step: float) -> list[InfoCurvePoint]:
    """Tabulate mutual information and conditional entropy over x in [-1, 1]."""
    if not 0.0 < step <= 1.0:
        raise InvalidInputError(f"step must be in (0, 1], got {step}")
    n = int(round(2.0 / step))
    xs = [-1.0 + k * step for k in range(n)] + [1.0]
    points = []
    for x in xs:
        x = max(-1.0, min(1.0, x))
        mi = mutual_information(_local_table(x))
        ce = binary_entropy(0.5 * (1.0 + x))
        points.append(InfoCurvePoint(x, mi, ce))
    return points
