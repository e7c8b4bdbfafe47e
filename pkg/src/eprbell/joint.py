"""Third- and fourth-order joint distributions compatible with given pairwise
marginals.

Any third-order joint over three binary variables is determined by its seven
moments:

    q(a, b, c) = (1 + a<A> + b<B> + c<C> + ab<AB> + bc<BC> + ca<CA> + abc<ABC>) / 8

With the six lower moments fixed by the pair tables, existence of a valid
(nonnegative) joint reduces to a feasible interval for the free third moment
mu3 = <ABC>. Negative entries are kept and reported, never clamped: a signed
table summing to one certifies that no valid joint exists with the given
marginals.

For four variables in the CHSH pair pattern (A,B), (A,C), (D,B), (D,C),
existence is decided by an exact linear-feasibility search over the 16
entries, cross-checked against the eight covariance inequalities that are
necessary and (for sign-symmetric inputs) sufficient.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import linprog

from .errors import (
    InconsistentMarginalsError,
    InvalidInputError,
    QuasiDistributionError,
    UndefinedConditionalError,
)
from .geometry import Direction
from .inequalities import InequalityVerdict
from .spincore import SIGNS, PairDist, local_pair_dist

TRIPLE_TOL = 1e-12
QUAD_TOL = 1e-9
MARGINAL_TOL = 1e-9


def _check_moment(name: str, v: float) -> float:
    if not -1.0 <= v <= 1.0:
        raise InvalidInputError(f"moment {name} = {v} outside [-1, 1]")
    return float(v)


@dataclass(frozen=True)
class MomentSet3:
    """First, second and third moments of three binary variables (A, B, C)."""

    m_a: float = 0.0
    m_b: float = 0.0
    m_c: float = 0.0
    m_ab: float = 0.0
    m_bc: float = 0.0
    m_ca: float = 0.0
    m_abc: float = 0.0

    def __post_init__(self):
        for name in ("m_a", "m_b", "m_c", "m_ab", "m_bc", "m_ca", "m_abc"):
            _check_moment(name, getattr(self, name))


@dataclass(frozen=True)
class TripleDist:
    """Signed table over {-1,+1}^3; q[i,j,k] for (SIGNS[i], SIGNS[j], SIGNS[k])."""

    q: np.ndarray
    labels: tuple[str, str, str] = ("A", "B", "C")

    def __post_init__(self):
        q = np.asarray(self.q, dtype=float)
        if q.shape != (2, 2, 2):
            raise InvalidInputError(f"triple table must be 2x2x2, got {q.shape}")
        if abs(q.sum() - 1.0) > TRIPLE_TOL:
            raise InvalidInputError(f"triple table sums to {q.sum()}, not 1")
        q.flags.writeable = False
        object.__setattr__(self, "q", q)

    @property
    def valid(self) -> bool:
        return bool(self.q.min() >= -TRIPLE_TOL)

    def prob(self, a: int, b: int, c: int) -> float:
        return float(self.q[(1 - a) // 2, (1 - b) // 2, (1 - c) // 2])

    def negative_cells(self) -> list[tuple[tuple[int, int, int], float]]:
        out = []
        for i, j, k in itertools.product(range(2), repeat=3):
            v = float(self.q[i, j, k])
            if v < -TRIPLE_TOL:
                out.append(((SIGNS[i], SIGNS[j], SIGNS[k]), v))
        return out


@dataclass(frozen=True)
class QuadDist:
    """Signed table over {-1,+1}^4; order (A, B, C, D)."""

    q: np.ndarray
    labels: tuple[str, str, str, str] = ("A", "B", "C", "D")

    def __post_init__(self):
        q = np.asarray(self.q, dtype=float)
        if q.shape != (2, 2, 2, 2):
            raise InvalidInputError(f"quad table must be 2x2x2x2, got {q.shape}")
        if abs(q.sum() - 1.0) > QUAD_TOL:
            raise InvalidInputError(f"quad table sums to {q.sum()}, not 1")
        q.flags.writeable = False
        object.__setattr__(self, "q", q)

    @property
    def valid(self) -> bool:
        return bool(self.q.min() >= -QUAD_TOL)


@dataclass(frozen=True)
class Mu3Interval:
    lo: float
    hi: float

    @property
    def empty(self) -> bool:
        return self.lo > self.hi

    def contains(self, v: float) -> bool:
        return self.lo <= v <= self.hi


_SIGN_GRID = np.array(list(itertools.product((1, -1), repeat=3)))  # row order = table order


def _affine_part(m_a, m_b, m_c, m_ab, m_bc, m_ca) -> np.ndarray:
    """t(a,b,c) = 1 + a<A> + b<B> + c<C> + ab<AB> + bc<BC> + ca<CA>, per cell."""
    s = _SIGN_GRID
    a, b, c = s[:, 0], s[:, 1], s[:, 2]
    return (
        1.0 + a * m_a + b * m_b + c * m_c + a * b * m_ab + b * c * m_bc + c * a * m_ca
    )


def triple_from_moments(m: MomentSet3) -> TripleDist:
    """Build the unique signed table with the given seven moments."""
    t = _affine_part(m.m_a, m.m_b, m.m_c, m.m_ab, m.m_bc, m.m_ca)
    abc = _SIGN_GRID.prod(axis=1)
    q = (t + abc * m.m_abc) / 8.0
    return TripleDist(q.reshape(2, 2, 2))


def _pair_moments(p: PairDist) -> tuple[float, float, float]:
    """(first moment, second moment, pair moment) of a 2x2 table."""
    t = p.table
    m1 = float(t[0, :].sum() - t[1, :].sum())
    m2 = float(t[:, 0].sum() - t[:, 1].sum())
    m12 = float(t[0, 0] - t[0, 1] - t[1, 0] + t[1, 1])
    return m1, m2, m12


@dataclass(frozen=True)
class PairMoments:
    """Six moments extracted from the pair tables (A,B), (B,C), (C,A), plus a
    report of how well the shared single-variable marginals agree."""

    m_a: float
    m_b: float
    m_c: float
    m_ab: float
    m_bc: float
    m_ca: float
    mismatch: dict[str, float]

    @property
    def consistent(self) -> bool:
        return max(self.mismatch.values()) <= MARGINAL_TOL


def moments_from_pairs(p_ab: PairDist, p_bc: PairDist, p_ca: PairDist) -> PairMoments:
    """Extract the first six moments from the three pair tables.

    Raises InconsistentMarginalsError when a shared single-variable marginal
    differs by more than 1e-9 across tables.
    """
    a1, b2, m_ab = _pair_moments(p_ab)
    b1, c2, m_bc = _pair_moments(p_bc)
    c1, a2, m_ca = _pair_moments(p_ca)
    mismatch = {"A": abs(a1 - a2), "B": abs(b2 - b1), "C": abs(c2 - c1)}
    for var, dev in mismatch.items():
        if dev > MARGINAL_TOL:
            raise InconsistentMarginalsError(
                f"marginal of {var} differs across pair tables by {dev:.3g}"
            )
    return PairMoments(
        m_a=0.5 * (a1 + a2),
        m_b=0.5 * (b1 + b2),
        m_c=0.5 * (c1 + c2),
        m_ab=m_ab,
        m_bc=m_bc,
        m_ca=m_ca,
        mismatch=mismatch,
    )


def mu3_interval(m_a, m_b, m_c, m_ab, m_bc, m_ca) -> Mu3Interval:
    """Feasible range of the third moment <ABC> given the six lower moments.

    Cells with abc = +1 require mu3 >= -t(cell); cells with abc = -1 require
    mu3 <= t(cell). A valid third-order joint with these six moments exists
    iff the interval (intersected with [-1, 1]) is non-empty.
    """
    for name, v in (("m_a", m_a), ("m_b", m_b), ("m_c", m_c),
                    ("m_ab", m_ab), ("m_bc", m_bc), ("m_ca", m_ca)):
        _check_moment(name, v)
    t = _affine_part(m_a, m_b, m_c, m_ab, m_bc, m_ca)
    abc = _SIGN_GRID.prod(axis=1)
    lo = max(-1.0, float(np.max(-t[abc == 1])))
    hi = min(1.0, float(np.min(t[abc == -1])))
    return Mu3Interval(lo, hi)


def default_mu3(interval: Mu3Interval, symmetric: bool) -> float:
    """Default third moment: 0 in the symmetric case; otherwise the midpoint
    of the feasible interval when non-empty, else 0."""
    if symmetric or interval.empty:
        return 0.0
    return 0.5 * (interval.lo + interval.hi)


@dataclass(frozen=True)
class ExistenceResult:
    exists: bool
    exact: bool  # True when the verdict is necessary and sufficient
    verdicts: dict[str, InequalityVerdict]


def existence_check_3(m_a, m_b, m_c, m_ab, m_bc, m_ca, symmetric: bool = False) -> ExistenceResult:
    """Evaluate the four pair-sum inequalities (and their two condensed
    absolute-value forms) on the second moments.

    The conjunction is necessary for a valid third-order joint; when
    ``symmetric`` is set (all odd moments zero) it is also sufficient.
    """
    if symmetric and max(abs(m_a), abs(m_b), abs(m_c)) > MARGINAL_TOL:
        raise InvalidInputError("symmetric flag set but first moments are non-zero")
    for name, v in (("m_ab", m_ab), ("m_bc", m_bc), ("m_ca", m_ca)):
        _check_moment(name, v)
    verdicts = {
        "sum": InequalityVerdict(-(m_ab + m_bc + m_ca), 1.0),
        "flip_a": InequalityVerdict(-(m_ab - m_bc - m_ca), 1.0),
        "flip_b": InequalityVerdict(-(-m_ab + m_bc - m_ca), 1.0),
        "flip_c": InequalityVerdict(-(-m_ab - m_bc + m_ca), 1.0),
        "abs_plus": InequalityVerdict(abs(m_ab + m_ca) - m_bc, 1.0),
        "abs_minus": InequalityVerdict(abs(m_ab - m_ca) + m_bc, 1.0),
    }
    exists = all(v.satisfied for v in verdicts.values())
    return ExistenceResult(exists=exists, exact=bool(symmetric), verdicts=verdicts)


def qm_triple(a: Direction, b: Direction, c: Direction) -> TripleDist:
    """The unique sign-symmetric signed table whose pair marginals are the
    single-device tables for (a, b), (b, c), (c, a)."""
    m = MomentSet3(m_ab=a.dot(b), m_bc=b.dot(c), m_ca=c.dot(a))
    t = triple_from_moments(m)
    return TripleDist(t.q.copy(), ("A(a)", "A(b)", "A(c)"))


def triple_marginal_pair(t: TripleDist, drop: str) -> PairDist:
    """Marginalize one variable ('A', 'B' or 'C') out of a valid-summing
    triple table; defined even when entries are negative (marginals of the
    moment construction are always valid pair tables)."""
    axis = {"A": 0, "B": 1, "C": 2}.get(drop)
    if axis is None:
        raise InvalidInputError(f"drop must be 'A', 'B' or 'C', got {drop!r}")
    return PairDist(t.q.sum(axis=axis))


def triple_conditional(t: TripleDist, given: str, value: int) -> PairDist:
    """Pair table for the remaining two variables conditioned on one.

    Raises QuasiDistributionError when the triple has negative entries (the
    unconditional pair marginals still exist, but this conditional does not).
    """
    if not t.valid:
        raise QuasiDistributionError(
            f"cannot condition: triple table has negative entries {t.negative_cells()}"
        )
    axis = {"A": 0, "B": 1, "C": 2}.get(given)
    if axis is None:
        raise InvalidInputError(f"given must be 'A', 'B' or 'C', got {given!r}")
    if value not in (1, -1):
        raise InvalidInputError(f"value must be +1 or -1, got {value}")
    slab = np.take(t.q, (1 - value) // 2, axis=axis)
    norm = float(slab.sum())
    if norm <= TRIPLE_TOL:
        raise UndefinedConditionalError(f"P[{given}={value}] = {norm} is not positive")
    return PairDist(slab / norm)


# --- fourth-order feasibility (CHSH pair pattern) ---

_SIGN_GRID4 = np.array(list(itertools.product((1, -1), repeat=4)))  # (A, B, C, D)


def chsh_family_verdicts(c_ab, c_ac, c_db, c_dc) -> dict[str, InequalityVerdict]:
    """The four absolute-value covariance conditions (eight one-sided
    inequalities) necessary for a fourth-order joint over the CHSH pattern:
    |s1*c_ab + s2*c_ac + s3*c_db + s4*c_dc| <= 2 over all sign choices with
    an odd number of minus signs."""
    return {
        "minus_ab": InequalityVerdict(abs(-c_ab + c_ac + c_db + c_dc), 2.0),
        "minus_ac": InequalityVerdict(abs(c_ab - c_ac + c_db + c_dc), 2.0),
        "minus_db": InequalityVerdict(abs(c_ab + c_ac - c_db + c_dc), 2.0),
        "minus_dc": InequalityVerdict(abs(c_ab + c_ac + c_db - c_dc), 2.0),
    }


def chsh_split_lhs(c_ab, c_ac, c_db, c_dc) -> float:
    """The split-absolute form |c_ab - c_ac| + |c_db + c_dc|; its value is the
    larger of the "minus_ab" / "minus_ac" expressions."""
    return abs(c_ab - c_ac) + abs(c_db + c_dc)


@dataclass(frozen=True)
class QuadFeasibility:
    feasible: bool
    witness: Optional[QuadDist]
    verdicts: dict[str, InequalityVerdict]
    failed: Optional[str]  # name of a violated inequality, when any


def _pair_constraint_rows(first_axis: int, second_axis: int) -> np.ndarray:
    """Four indicator rows over the 16 cells, one per (first, second) value pair."""
    rows = np.zeros((4, 16))
    for r, (u, v) in enumerate(itertools.product((1, -1), repeat=2)):
        mask = (_SIGN_GRID4[:, first_axis] == u) & (_SIGN_GRID4[:, second_axis] == v)
        rows[r, mask] = 1.0
    return rows


def quad_feasibility(
    p_ab: PairDist, p_ac: PairDist, p_db: PairDist, p_dc: PairDist
) -> QuadFeasibility:
    """Decide whether a valid joint over (A, B, C, D) exists with the four
    given pair tables, via exact linear feasibility; returns a witness table
    when feasible.

    The verdict is cross-checked against the eight covariance inequalities
    whenever the inputs are sign-symmetric (all first moments zero), where
    those inequalities are necessary and sufficient.
    """
    a1, b1, c_ab = _pair_moments(p_ab)
    a2, c1, c_ac = _pair_moments(p_ac)
    d1, b2, c_db = _pair_moments(p_db)
    d2, c2, c_dc = _pair_moments(p_dc)
    mismatch = {"A": abs(a1 - a2), "B": abs(b1 - b2), "C": abs(c1 - c2), "D": abs(d1 - d2)}
    for var, dev in mismatch.items():
        if dev > MARGINAL_TOL:
            raise InconsistentMarginalsError(
                f"marginal of {var} differs across pair tables by {dev:.3g}"
            )

    verdicts = chsh_family_verdicts(c_ab, c_ac, c_db, c_dc)
    failed = next((k for k, v in verdicts.items() if not v.satisfied), None)

    # Axes in the (A, B, C, D) cell ordering for each specified pair.
    systems = [(0, 1, p_ab), (0, 2, p_ac), (3, 1, p_db), (3, 2, p_dc)]
    a_eq = np.vstack([_pair_constraint_rows(i, j) for i, j, _ in systems])
    b_eq = np.concatenate(
        [[p.prob(u, v) for u, v in itertools.product((1, -1), repeat=2)] for _, _, p in systems]
    )
    res = linprog(
        c=np.zeros(16),
        A_eq=a_eq,
        b_eq=b_eq,
        bounds=[(0.0, 1.0)] * 16,
        method="highs",
        options={
            "primal_feasibility_tolerance": 1e-10,
            "dual_feasibility_tolerance": 1e-10,
        },
    )
    feasible = res.status == 0
    witness = None
    if feasible:
        q = np.zeros((2, 2, 2, 2))
        for cell, value in zip(_SIGN_GRID4, res.x):
            idx = tuple((1 - s) // 2 for s in cell)
            q[idx] = value
        witness = QuadDist(q / q.sum())

    symmetric = max(abs(a1), abs(b1), abs(c1), abs(d1)) <= MARGINAL_TOL
    if symmetric and feasible != (failed is None):
        raise RuntimeError(
            "feasibility solver disagrees with the covariance inequalities on "
            f"a sign-symmetric input (solver: {feasible}, inequalities: {failed is None})"
        )
    return QuadFeasibility(feasible=feasible, witness=witness, verdicts=verdicts, failed=failed)


def quad_pair_marginal(w: QuadDist, pair: str) -> PairDist:
    """Extract one of the CHSH pair tables ('AB', 'AC', 'DB', 'DC') from a
    four-variable table in (A, B, C, D) order."""
    axes = {"AB": (0, 1), "AC": (0, 2), "DB": (3, 1), "DC": (3, 2)}.get(pair)
    if axes is None:
        raise InvalidInputError(f"pair must be one of AB/AC/DB/DC, got {pair!r}")
    first, second = axes
    keep = sorted({first, second})
    drop = tuple(i for i in range(4) if i not in keep)
    m = w.q.sum(axis=drop)
    if keep != [first, second]:
        m = m.T
    return PairDist(m)
