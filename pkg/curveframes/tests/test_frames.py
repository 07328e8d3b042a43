import math

import numpy as np
from django.test import SimpleTestCase

from curveframes.curve_core import arc_length_reparam, sample_curve
from curveframes.curves_builtin import circle, helix
from curveframes.exceptions import NotUnitSpeed, VanishingCurvature
from curveframes.frames import (
    bishop_from_frenet,
    frame_integrity,
    frenet_frame,
    frenet_from_bishop,
    transport_residual,
)


def unit_curve(position, t_range, n, stride):
    return arc_length_reparam(sample_curve(position, t_range, n), n, stride=stride)


class CircleFrameTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.curve = unit_curve(circle(1.0), (0.0, 2 * math.pi), 2048, 4)
        cls.frenet = frenet_frame(cls.curve, stride=4)

    def test_curvature_and_torsion(self):
        np.testing.assert_allclose(self.frenet.kappa, 1.0, atol=1e-8)
        np.testing.assert_allclose(self.frenet.tau, 0.0, atol=1e-6)

    def test_guard_band_is_dropped(self):
        self.assertEqual(self.frenet.s.size, self.curve.n - 2 * 16)
        self.assertAlmostEqual(self.frenet.s[0], 16 * self.curve.param_step)

    def test_bishop_offset_angle(self):
        theta0 = 0.7854
        bishop = bishop_from_frenet(self.frenet, theta0)
        np.testing.assert_allclose(bishop.k1, math.cos(theta0), atol=1e-6)
        np.testing.assert_allclose(bishop.k2, math.sin(theta0), atol=1e-6)
        np.testing.assert_allclose(np.einsum("ij,ij->i", bishop.N1, self.frenet.N), math.cos(theta0), atol=1e-6)


class HelixFrameTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.stride = 8
        cls.curve = unit_curve(helix(1.0, 1.0), (0.0, 4 * math.pi), 4096, cls.stride)
        cls.frenet = frenet_frame(cls.curve, stride=cls.stride)
        cls.bishop = bishop_from_frenet(cls.frenet, 0.3)

    def test_constant_curvature_and_torsion(self):
        np.testing.assert_allclose(self.frenet.kappa, 0.5, atol=1e-6)
        np.testing.assert_allclose(self.frenet.tau, 0.5, atol=1e-6)

    def test_natural_curvatures_recombine(self):
        total = self.bishop.k1 ** 2 + self.bishop.k2 ** 2
        np.testing.assert_allclose(total, self.frenet.kappa ** 2, rtol=1e-12)

    def test_angle_accumulates_torsion(self):
        expected = 0.3 + 0.5 * (self.bishop.s - self.bishop.s[0])
        np.testing.assert_allclose(self.bishop.theta, expected, atol=1e-6)

    def test_quarter_turn_after_pi(self):
        i = int(np.argmin(np.abs(self.bishop.s - self.bishop.s[0] - math.pi)))
        theta = 0.5 * (self.bishop.s[i] - self.bishop.s[0])
        bishop = bishop_from_frenet(self.frenet, 0.0)
        self.assertAlmostEqual(bishop.theta[i], theta, delta=1e-6)
        self.assertAlmostEqual(bishop.k1[i], 0.5 * math.cos(theta), delta=1e-6)
        self.assertAlmostEqual(bishop.k2[i], 0.5 * math.sin(theta), delta=1e-6)
        self.assertGreater(bishop.k2[i], 0.49)

    def test_offset_rotates_the_normal_plane(self):
        phi = 1.1
        rotated = bishop_from_frenet(self.frenet, 0.3 + phi)
        c, s = math.cos(phi), math.sin(phi)
        b = self.bishop
        np.testing.assert_allclose(rotated.N1, c * b.N1 - s * b.N2, atol=1e-12)
        np.testing.assert_allclose(rotated.N2, s * b.N1 + c * b.N2, atol=1e-12)
        np.testing.assert_allclose(rotated.k1, c * b.k1 - s * b.k2, atol=1e-12)
        np.testing.assert_allclose(rotated.k2, s * b.k1 + c * b.k2, atol=1e-12)
        np.testing.assert_allclose(np.hypot(rotated.k1, rotated.k2), np.hypot(b.k1, b.k2), atol=1e-12)
        np.testing.assert_array_equal(rotated.T, b.T)

    def test_integrity(self):
        integrity = frame_integrity(self.frenet, self.bishop, self.stride)
        for key, value in integrity.items():
            with self.subTest(key=key):
                self.assertLess(value, 1e-6)

    def test_transport(self):
        self.assertLess(max(transport_residual(self.bishop)), 1e-5)

    def test_frenet_recovered_from_bishop(self):
        recovered = frenet_from_bishop(self.bishop, stride=self.stride)
        np.testing.assert_allclose(recovered.kappa, self.frenet.kappa, rtol=1e-12)
        np.testing.assert_allclose(recovered.tau, 0.5, atol=1e-6)
        np.testing.assert_allclose(recovered.N, self.frenet.N, atol=1e-12)


class FrameErrorTests(SimpleTestCase):
    def test_straight_line_has_no_frenet_frame(self):
        def line(t):
            t = np.asarray(t, dtype=float)
            return np.stack([t, 2 * t, np.zeros_like(t)], axis=-1)

        with self.assertRaises(VanishingCurvature):
            frenet_frame(unit_curve(line, (0.0, 1.0), 256, 1))

    def test_requires_unit_speed(self):
        with self.assertRaises(NotUnitSpeed):
            frenet_frame(sample_curve(circle(2.0), (0.0, 1.0), 256))
