import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from canoparam import fixtures
from canoparam.contour import PlanarContour, validate_contour
from canoparam.errors import DegenerateTangent, InconsistentCounts
from canoparam.invariants import (
    CurvatureProfile,
    TurningAngleSequence,
    closure_defect,
    curvarc_length,
    discrete_curvature,
    moving_frames,
    reconstruct_from_curvature,
    total_curvature_length,
    total_turning,
    turning_angles,
)


def _first_heading(contour):
    e = contour.edges[0]
    return float(np.arctan2(e[1], e[0]))


class TestTurningAngles:
    def test_square_ccw(self):
        seq = turning_angles(fixtures.square())
        np.testing.assert_allclose(seq.angles, [np.pi / 2] * 4)
        np.testing.assert_allclose(seq.edge_lengths, [1, 1, 1, 1])

    def test_square_cw(self):
        np.testing.assert_allclose(turning_angles(fixtures.square(clockwise=True)).angles, [-np.pi / 2] * 4)

    @pytest.mark.parametrize("n", [3, 5, 12, 100])
    def test_regular_polygon(self, n):
        seq = turning_angles(fixtures.circle(n))
        np.testing.assert_allclose(seq.angles, 2 * np.pi / n, rtol=1e-12)
        assert np.sum(seq.angles) == pytest.approx(2 * np.pi, abs=1e-12)

    def test_open_counts(self):
        c = validate_contour([(0, 0), (1, 0), (1, 1), (2, 1)])
        seq = turning_angles(c)
        assert len(seq.angles) == 2 and len(seq.edge_lengths) == 3
        np.testing.assert_allclose(seq.angles, [np.pi / 2, -np.pi / 2])

    def test_reversal_is_pi(self):
        c = validate_contour([(0, 0), (1, 0), (0, 0.0)], closed=False)
        assert turning_angles(c).angles[0] == np.pi

    def test_range(self):
        c = fixtures.random_simple_polygon(np.random.default_rng(0), 150)
        a = turning_angles(c).angles
        assert np.all((a > -np.pi) & (a <= np.pi))


class TestDiscreteCurvature:
    def test_circle_360(self):
        prof = discrete_curvature(fixtures.circle(360))
        # oracle: (2 pi / N) / (2 R sin(pi / N)) for the inscribed regular polygon
        expected = (2 * np.pi / 360) / (2 * np.sin(np.pi / 360))
        np.testing.assert_allclose(prof.kappa, expected, rtol=1e-12)
        assert np.max(np.abs(prof.kappa - 1.0)) < 1e-4

    def test_collinear_open(self):
        prof = discrete_curvature(validate_contour([(0, 0), (1, 0), (2, 0), (3, 0)]))
        np.testing.assert_array_equal(prof.kappa, [0.0, 0.0])
        np.testing.assert_allclose(prof.s, [1 / 3, 2 / 3])

    def test_clockwise_negative(self):
        assert np.all(discrete_curvature(fixtures.square(clockwise=True)).kappa < 0)

    def test_square_values(self):
        prof = discrete_curvature(fixtures.square(2.0))
        np.testing.assert_allclose(prof.kappa, (np.pi / 2) / 2.0)
        np.testing.assert_allclose(prof.s, [0, 0.25, 0.5, 0.75])
        assert prof.total_length == 8.0

    def test_discrete_gauss_bonnet(self):
        c = fixtures.random_simple_polygon(np.random.default_rng(7), 60)
        prof = discrete_curvature(c)
        seq = turning_angles(c)
        dual = 0.5 * (np.roll(seq.edge_lengths, 1) + seq.edge_lengths)
        assert np.sum(prof.kappa * dual) == pytest.approx(np.sum(seq.angles), abs=1e-12)

    def test_profile_validation(self):
        with pytest.raises(ValueError):
            CurvatureProfile([0.0, 0.5, 0.5], [1, 1, 1], 1.0)
        with pytest.raises(InconsistentCounts):
            CurvatureProfile([0.0, 0.5], [1.0], 1.0)
        with pytest.raises(ValueError):
            CurvatureProfile([0.0, 0.5], [1.0, 1.0], 0.0)


class TestMovingFrames:
    def test_straight_line(self):
        frames = moving_frames(validate_contour([(0, 0), (1, 0), (2, 0)]))
        for f in frames:
            np.testing.assert_allclose(f.v, [1, 0])
            np.testing.assert_allclose(f.n, [0, 1])
            assert f.theta == 0.0

    def test_circle_tangent(self):
        f = moving_frames(fixtures.circle(1000))[0]
        np.testing.assert_allclose(f.P, [1, 0])
        # oracle: analytic unit tangent (0, 1) and normal (-1, 0) at (1, 0)
        assert np.hypot(*(f.v - [0, 1])) < 1e-3
        assert np.hypot(*(f.n - [-1, 0])) < 1e-3

    def test_orthonormal(self):
        for f in moving_frames(fixtures.random_simple_polygon(np.random.default_rng(8), 40)):
            assert abs(np.hypot(*f.v) - 1) < 1e-12
            assert abs(np.hypot(*f.n) - 1) < 1e-12
            assert abs(f.v @ f.n) < 1e-12
            np.testing.assert_allclose([np.cos(f.theta), np.sin(f.theta)], f.v, atol=1e-9)

    @pytest.mark.parametrize("shape", [fixtures.square(), fixtures.circle(50), fixtures.ellipse(n=64)])
    def test_winding(self, shape):
        frames = moving_frames(shape)
        theta = np.array([f.theta for f in frames])
        angles = turning_angles(shape).angles
        assert np.all(np.diff(theta) > 0)
        # closing increment brings the frame back to its start plus one full turn
        closing = 0.5 * (angles[-1] + angles[0])
        assert theta[-1] + closing - theta[0] == pytest.approx(2 * np.pi, abs=1e-12)

    def test_cusp_signalled(self):
        with pytest.raises(DegenerateTangent):
            moving_frames(validate_contour([(0, 0), (1, 0), (0.5, 0)]))


class TestTotals:
    def test_circle_curvature_length(self):
        prof = discrete_curvature(fixtures.circle(1000, radius=4.0))
        assert total_curvature_length(prof) == pytest.approx(2 * np.pi, abs=1e-3)

    def test_straight(self):
        prof = discrete_curvature(validate_contour([(0, 0), (1, 0), (2, 0), (5, 0)]))
        assert total_curvature_length(prof) == 0
        assert curvarc_length(prof) == 5.0

    def test_open_two_points(self):
        prof = discrete_curvature(validate_contour([(0, 0), (3, 4)]))
        assert len(prof.s) == 0
        assert curvarc_length(prof) == 5.0

    def test_square(self):
        sq = fixtures.square()
        assert total_turning(turning_angles(sq)) == pytest.approx(2 * np.pi)
        assert total_curvature_length(discrete_curvature(sq)) == pytest.approx(2 * np.pi, abs=1e-12)

    def test_unit_circle_curvarc(self):
        prof = discrete_curvature(fixtures.circle(1000))
        assert curvarc_length(prof) == pytest.approx(2 * np.pi + 1, abs=1e-3)

    def test_curvarc_scaling(self):
        c = fixtures.ellipse(n=256)
        a = discrete_curvature(c)
        b = discrete_curvature(fixtures.rigid_motion(c, 0.0, scale=2.0))
        L, C = a.total_length, total_curvature_length(a)
        assert curvarc_length(b) == pytest.approx(2 * L + C / (2 * L), rel=1e-12)

    def test_profile_and_turning_agree_open(self):
        c = validate_contour(fixtures.random_simple_polygon(np.random.default_rng(9), 30).points, closed=False)
        assert total_curvature_length(discrete_curvature(c)) == pytest.approx(
            total_turning(turning_angles(c)), abs=1e-9
        )


class TestReconstruct:
    def test_square(self):
        seq = TurningAngleSequence([np.pi / 2] * 4, [1, 1, 1, 1])
        c = reconstruct_from_curvature(seq, (0, 0), 0.0, closed=True)
        np.testing.assert_allclose(c.points, [[0, 0], [1, 0], [1, 1], [0, 1]], atol=1e-15)
        assert closure_defect(seq) < 1e-15

    def test_regular_100_gon_closes(self):
        seq = TurningAngleSequence([2 * np.pi / 100] * 100, [2 * np.sin(np.pi / 100)] * 100)
        assert closure_defect(seq, (1, 0), np.pi / 2 + np.pi / 100) < 1e-9

    def test_open_roundtrip(self):
        c = validate_contour([(0, 0), (2, 0), (3, 1), (3, 4), (1, 5)])
        back = reconstruct_from_curvature(turning_angles(c), c.points[0], _first_heading(c), closed=False)
        np.testing.assert_allclose(back.points, c.points, atol=1e-12)

    def test_cusp_allowed(self):
        c = validate_contour([(0, 0), (1, 0), (0.5, 0)])
        back = reconstruct_from_curvature(turning_angles(c), (0, 0), 0.0, closed=False)
        np.testing.assert_allclose(back.points, c.points, atol=1e-15)

    def test_inconsistent_counts(self):
        with pytest.raises(InconsistentCounts):
            reconstruct_from_curvature(TurningAngleSequence([1.0, 1.0], [1, 1, 1]), closed=True)
        with pytest.raises(InconsistentCounts):
            reconstruct_from_curvature(TurningAngleSequence([1.0, 1.0], [1, 1]), closed=False)
        with pytest.raises(InconsistentCounts):
            reconstruct_from_curvature(TurningAngleSequence([1.0, 1.0, 1.0], [1, -1, 1]), closed=True)

    @settings(max_examples=60, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), n=st.integers(3, 200))
    def test_roundtrip_property(self, seed, n):
        c = fixtures.random_simple_polygon(np.random.default_rng(seed), n)
        seq = turning_angles(c)
        back = reconstruct_from_curvature(seq, c.points[0], _first_heading(c), closed=True)
        assert np.max(np.abs(back.points - c.points)) < 1e-9
        assert closure_defect(seq, c.points[0], _first_heading(c)) < 1e-9


class TestInvariance:
    @settings(max_examples=40, deadline=None)
    @given(
        seed=st.integers(0, 2**32 - 1),
        angle=st.floats(-np.pi, np.pi),
        dx=st.floats(-100, 100),
        dy=st.floats(-100, 100),
    )
    def test_rigid_motion(self, seed, angle, dx, dy):
        c = fixtures.random_simple_polygon(np.random.default_rng(seed), 50)
        moved = fixtures.rigid_motion(c, angle, (dx, dy))
        a, b = discrete_curvature(c), discrete_curvature(moved)
        scale = max(1.0, np.max(np.abs(a.kappa)))
        assert np.max(np.abs(a.kappa - b.kappa)) <= 1e-10 * scale
        assert total_curvature_length(a) == pytest.approx(total_curvature_length(b), abs=1e-10)
        assert curvarc_length(a) == pytest.approx(curvarc_length(b), rel=1e-10)

    def test_reflection_flips_sign(self):
        c = fixtures.ellipse(n=120)
        mirrored = PlanarContour(c.points * [1, -1], True)
        np.testing.assert_allclose(discrete_curvature(mirrored).kappa, -discrete_curvature(c).kappa, atol=1e-12)

    def test_reversal_flips_sign(self):
        c = fixtures.random_simple_polygon(np.random.default_rng(10), 40)
        k = discrete_curvature(c).kappa
        kr = discrete_curvature(c.reversed()).kappa
        # reversed keeps vertex 0 and visits the rest backwards
        np.testing.assert_allclose(kr, -np.concatenate([k[:1], k[:0:-1]]), atol=1e-12)

    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), scale=st.floats(0.01, 100))
    def test_scale_covariance(self, seed, scale):
        c = fixtures.random_simple_polygon(np.random.default_rng(seed), 40)
        a = discrete_curvature(c)
        b = discrete_curvature(fixtures.rigid_motion(c, 0.0, scale=scale))
        assert b.total_length == pytest.approx(scale * a.total_length, rel=1e-12)
        np.testing.assert_allclose(b.kappa, a.kappa / scale, rtol=1e-9, atol=1e-12)
        assert total_curvature_length(b) == pytest.approx(total_curvature_length(a), abs=1e-10)
