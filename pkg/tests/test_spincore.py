import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from eprbell import (
    Direction,
    InvalidDirectionError,
    apply_property_I,
    covariance,
    local_conditional,
    local_pair_dist,
    qm_conditional,
    qm_marginal,
    qm_pair_dist,
)
from eprbell.spincore import PairDist

from conftest import random_direction, random_rotation


def from_angles(theta):
    return Direction.from_angle(0.0), Direction.from_angle(theta)


class TestDirection:
    def test_normalizes_close_input(self):
        d = Direction(1.0 + 5e-7, 0.0, 0.0)
        assert d.x == pytest.approx(1.0, abs=1e-12)

    def test_rejects_non_unit(self):
        with pytest.raises(InvalidDirectionError):
            Direction(1.0, 1.0, 0.0)
        with pytest.raises(InvalidDirectionError):
            Direction(0.0, 0.0, 0.0)

    def test_from_angle(self):
        d = Direction.from_angle(math.pi / 2)
        assert d.y == pytest.approx(1.0, abs=1e-12)

    @given(st.floats(-10, 10), st.floats(-10, 10))
    def test_angle_to_matches_dot(self, t1, t2):
        a, b = Direction.from_angle(t1), Direction.from_angle(t2)
        assert math.cos(a.angle_to(b)) == pytest.approx(a.dot(b), abs=1e-9)


class TestQmPairDist:
    def test_aligned_equal_outcomes_impossible(self):
        a, b = from_angles(0.0)
        assert qm_pair_dist(a, b).prob(1, 1) == 0.0

    def test_orthogonal_uniform(self):
        a, b = from_angles(math.pi / 2)
        assert np.allclose(qm_pair_dist(a, b).table, 0.25, atol=1e-15)

    def test_sixty_degrees(self):
        a, b = from_angles(math.pi / 3)
        # (1/2) cos^2(pi/6) = 0.375 for opposite outcomes
        assert qm_pair_dist(a, b).prob(1, -1) == pytest.approx(0.375, abs=1e-12)

    def test_normalization_random(self, rng):
        for _ in range(200):
            a, b = random_direction(rng), random_direction(rng)
            assert abs(qm_pair_dist(a, b).table.sum() - 1.0) < 1e-12

    def test_rotation_invariance(self, rng):
        for _ in range(50):
            a, b = random_direction(rng), random_direction(rng)
            rot = random_rotation(rng)
            ar = Direction.from_array(rot @ a.as_array())
            br = Direction.from_array(rot @ b.as_array())
            assert np.allclose(
                qm_pair_dist(a, b).table, qm_pair_dist(ar, br).table, atol=1e-12
            )
            assert np.allclose(
                local_pair_dist(a, b).table, local_pair_dist(ar, br).table, atol=1e-12
            )


class TestMarginalsConditionals:
    def test_marginals_uniform(self):
        for theta in (0.0, math.pi / 2, 1.234):
            d = qm_pair_dist(*from_angles(theta))
            for which in ("first", "second"):
                m = qm_marginal(d, which)
                assert m[1] == pytest.approx(0.5, abs=1e-12)
                assert m[-1] == pytest.approx(0.5, abs=1e-12)

    def test_aligned_forces_opposite(self):
        a, b = from_angles(0.0)
        cond = qm_conditional(a, b, given=1, side="B")
        assert cond[-1] == pytest.approx(1.0, abs=1e-12)
        assert cond[1] == pytest.approx(0.0, abs=1e-12)

    def test_antialigned_forces_equal(self):
        a, b = from_angles(math.pi)
        cond = qm_conditional(a, b, given=1, side="B")
        assert cond[1] == pytest.approx(1.0, abs=1e-12)

    def test_orthogonal_uninformative(self):
        a, b = from_angles(math.pi / 2)
        for given in (1, -1):
            cond = qm_conditional(a, b, given=given)
            assert cond[1] == pytest.approx(0.5, abs=1e-15)

    def test_bayes_consistency(self, rng):
        # conditional * marginal reproduces the joint, 1000 random pairs
        for _ in range(1000):
            a, b = random_direction(rng), random_direction(rng)
            d = qm_pair_dist(a, b)
            for beta in (1, -1):
                cond = qm_conditional(a, b, given=beta, side="B")
                for alpha in (1, -1):
                    assert cond[alpha] * 0.5 == pytest.approx(
                        d.prob(alpha, beta), abs=1e-12
                    )

    def test_local_conditional_aligned(self):
        a, b = from_angles(0.0)
        assert local_conditional(a, b, given=1)[1] == pytest.approx(1.0, abs=1e-12)
        a, b = from_angles(math.pi)
        assert local_conditional(a, b, given=1)[-1] == pytest.approx(1.0, abs=1e-12)


class TestCovariance:
    def test_aligned(self):
        assert covariance(qm_pair_dist(*from_angles(0.0))) == pytest.approx(-1.0, abs=1e-12)

    def test_orthogonal(self):
        assert covariance(qm_pair_dist(*from_angles(math.pi / 2))) == pytest.approx(0.0, abs=1e-12)

    def test_uniform_table(self):
        assert covariance(PairDist(np.full((2, 2), 0.25))) == 0.0

    def test_identity_random(self, rng):
        for _ in range(200):
            a, b = random_direction(rng), random_direction(rng)
            x = a.dot(b)
            assert covariance(qm_pair_dist(a, b)) == pytest.approx(-x, abs=1e-12)
            assert covariance(local_pair_dist(a, b)) == pytest.approx(x, abs=1e-12)


class TestPropertyI:
    def test_local_sixty_degrees(self):
        a, b = from_angles(math.pi / 3)
        assert local_pair_dist(a, b).prob(1, 1) == pytest.approx(0.375, abs=1e-12)
        # equals the two-device table with the second outcome flipped
        assert local_pair_dist(a, b).prob(1, 1) == qm_pair_dist(a, b).prob(1, -1)

    def test_round_trip(self, rng):
        for _ in range(1000):
            a, b = random_direction(rng), random_direction(rng)
            loc, qm = local_pair_dist(a, b), qm_pair_dist(a, b)
            assert np.max(np.abs(apply_property_I(loc).table - qm.table)) < 1e-12
            assert np.max(np.abs(apply_property_I(qm).table - loc.table)) < 1e-12

    def test_involution(self, rng):
        from conftest import random_pair_dist

        d = random_pair_dist(rng)
        twice = apply_property_I(apply_property_I(d, "first"), "first")
        assert np.array_equal(twice.table, d.table)

    def test_uniform_fixed_point(self):
        u = PairDist(np.full((2, 2), 0.25))
        assert np.array_equal(apply_property_I(u).table, u.table)
