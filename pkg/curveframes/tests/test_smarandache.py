import math

import numpy as np
from django.test import SimpleTestCase

from curveframes.curve_core import guard_band_for
from curveframes.exceptions import ConfigError, DegenerateSpeed, GridMismatch, InputError
from curveframes.pipeline import CurveSource, RunConfig, bishop_frames, smarandache_stage
from curveframes.serializers import DiscrepancyRecordSerializer
from curveframes.smarandache import (
    SmarandacheKind,
    coefficients,
    compare,
    construct,
    invariants,
    oracle_invariants,
    speed,
)

from .helpers import circle_bishop

TN1, TN2, N1N2, TN1N2 = SmarandacheKind.TN1, SmarandacheKind.TN2, SmarandacheKind.N1N2, SmarandacheKind.TN1N2
CIRCLE_KAPPA = {TN1: 1.0, TN2: math.sqrt(2.0), N1N2: math.sqrt(2.0), TN1N2: math.sqrt(6.0) / 2}


class KindTests(SimpleTestCase):
    def test_parse(self):
        self.assertEqual(SmarandacheKind.parse("all"), [TN1, TN2, N1N2, TN1N2])
        self.assertEqual(SmarandacheKind.parse("TN1N2"), [TN1N2])
        self.assertEqual(N1N2.label, "N1N2")
        with self.assertRaises(InputError):
            SmarandacheKind.parse("tnb")


class SpeedTests(SimpleTestCase):
    def test_unit_circle_speeds(self):
        self.assertAlmostEqual(speed(TN1, 1.0, 0.0), 1.0)
        self.assertAlmostEqual(speed(TN2, 1.0, 0.0), 1 / math.sqrt(2.0))
        self.assertAlmostEqual(speed(N1N2, 1.0, 0.0), 1 / math.sqrt(2.0))
        self.assertAlmostEqual(speed(TN1N2, 1.0, 0.0), math.sqrt(2.0 / 3.0))

    def test_degenerate_speed(self):
        for kind in SmarandacheKind:
            with self.subTest(kind=kind), self.assertRaises(DegenerateSpeed):
                speed(kind, 0.0, 0.0)
        with self.assertRaises(DegenerateSpeed) as ctx:
            speed(N1N2, np.array([1.0, 1.0]), np.array([0.0, -1.0]), s=np.array([0.0, 0.5]))
        self.assertEqual(ctx.exception.exit_code, 3)


class CoefficientTests(SimpleTestCase):
    def test_unit_circle_values(self):
        tn1 = coefficients(TN1, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0)
        np.testing.assert_array_equal(tn1.lam, [-2.0, -2.0, 0.0])
        np.testing.assert_array_equal(tn1.sigma, [0.0, 0.0, 4.0])
        self.assertAlmostEqual(float(tn1.eta), 2 * math.sqrt(2.0))

        n1n2 = coefficients(N1N2, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0)
        np.testing.assert_array_equal(n1n2.rho, [-1.0, 0.0, 0.0])
        self.assertTrue(n1n2.synthetic)

    def test_vanishing_curvatures(self):
        for kind in SmarandacheKind:
            with self.subTest(kind=kind):
                triple = coefficients(kind, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)
                np.testing.assert_array_equal(triple.lam, 0.0)
                np.testing.assert_array_equal(triple.sigma, 0.0)
                np.testing.assert_array_equal(triple.rho, 0.0)

    def test_principal_normal_is_orthogonal_to_tangent(self):
        rng = np.random.default_rng(1)
        k1, k2, dk1, dk2 = rng.uniform(0.5, 2.0, (4, 50))
        tangents = {
            TN1: np.stack([-k1, k1, k2], axis=-1),
            TN2: np.stack([-k2, k1, k2], axis=-1),
            TN1N2: np.stack([-(k1 + k2), k1, k2], axis=-1),
        }
        for kind, tangent in tangents.items():
            with self.subTest(kind=kind):
                lam = coefficients(kind, k1, k2, dk1, dk2, 0.0, 0.0).lam
                np.testing.assert_allclose(np.einsum("ij,ij->i", lam, tangent), 0.0, atol=1e-10)


class CircleConstructionTests(SimpleTestCase):
    def setUp(self):
        self.bishop = circle_bishop()

    def test_points_at_start(self):
        root = 1 / math.sqrt(2.0)
        np.testing.assert_allclose(construct(N1N2, self.bishop).points[0], [-root, 0.0, root], atol=1e-15)
        np.testing.assert_allclose(construct(TN1, self.bishop).points[0], [-root, root, 0.0], atol=1e-15)

    def test_tn1n2_lies_on_unit_sphere(self):
        np.testing.assert_allclose(np.linalg.norm(construct(TN1N2, self.bishop).points, axis=1), 1.0, atol=1e-15)

    def test_closed_form_curvatures(self):
        for kind, expected in CIRCLE_KAPPA.items():
            with self.subTest(kind=kind):
                inv = invariants(kind, self.bishop)
                np.testing.assert_allclose(inv.kappa, expected, atol=1e-6)
                np.testing.assert_allclose(inv.tau, 0.0, atol=1e-6)
                np.testing.assert_allclose(inv.k1 ** 2 + inv.k2 ** 2, inv.kappa ** 2, rtol=1e-9)

    def test_n1n2_tangent_reverses(self):
        inv = invariants(N1N2, self.bishop)
        np.testing.assert_allclose(np.einsum("ij,ij->i", inv.T, self.bishop.T), -1.0, atol=1e-12)

    def test_arc_length_of_beta(self):
        inv = invariants(TN2, self.bishop)
        self.assertAlmostEqual(inv.s_star[-1], 2 * math.pi / math.sqrt(2.0), delta=1e-9)

    def test_oracle_agrees(self):
        guard = guard_band_for(1)
        for kind, expected in CIRCLE_KAPPA.items():
            with self.subTest(kind=kind):
                oracle = oracle_invariants(kind, construct(kind, self.bishop))
                np.testing.assert_allclose(oracle.kappa, expected, atol=1e-6)
                np.testing.assert_allclose(oracle.tau, 0.0, atol=1e-6)
                report = compare(invariants(kind, self.bishop).trim(guard), oracle)
                self.assertTrue(report.passed, [record.as_dict() for record in report.failures()])

    def test_compare_with_itself(self):
        closed = invariants(TN1, self.bishop)
        report = compare(closed, closed)
        for record in report:
            self.assertEqual(record.max_abs, 0.0)

    def test_grid_mismatch(self):
        closed = invariants(TN1, self.bishop)
        with self.assertRaises(GridMismatch):
            compare(closed, closed.trim(4))

    def test_n1n2_needs_positive_curvature_sum(self):
        with self.assertRaises(DegenerateSpeed):
            invariants(N1N2, circle_bishop(theta0=math.pi))

    def test_theta_convention_is_validated(self):
        with self.assertRaises(ConfigError):
            invariants(TN1, self.bishop, theta_beta_wrt="t")

    def test_report_serialization(self):
        oracle = oracle_invariants(TN1, construct(TN1, self.bishop))
        report = compare(invariants(TN1, self.bishop).trim(4), oracle)
        data = DiscrepancyRecordSerializer(report.records, many=True).data
        self.assertEqual([entry["quantity"] for entry in data], ["speed", "kappa_beta", "tau_beta", "T_beta", "N_beta", "B_beta"])
        self.assertEqual(set(data[0]), {"quantity", "max_abs", "max_rel", "s_argmax"})


class HelixStageTests(SimpleTestCase):
    theta0 = math.pi / 4

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.config = RunConfig(
            CurveSource("builtin", "helix", {"a": 1.0, "b": 1.0}), n=4096, theta0=cls.theta0, t_range=(0.0, 2.0),
        )
        cls.bishop = bishop_frames(cls.config).bishop

    def test_curvature_matches_oracle(self):
        for kind in SmarandacheKind:
            with self.subTest(kind=kind):
                result = smarandache_stage(self.bishop, kind, self.config, verify=True)
                self.assertLess(result.report.get("kappa_beta").max_rel, 1e-3)
                self.assertLess(result.report.get("speed").max_rel, 1e-3)
                self.assertLess(result.report.get("T_beta").max_abs, 1e-4)
                self.assertEqual(len(result.oracle), len(result.closed) - 2 * guard_band_for(self.config.derivative_stride))

    def test_stage_without_verification(self):
        result = smarandache_stage(self.bishop, TN1, self.config)
        self.assertIsNone(result.oracle)
        self.assertIsNone(result.report)
        self.assertEqual(result.beta.n, len(self.bishop))


class HelixOffsetStageTests(HelixStageTests):
    theta0 = 0.3

    def test_bishop_angle_starts_at_offset(self):
        self.assertEqual(self.bishop.theta[0], 0.3)
        self.assertGreater(self.bishop.theta[-1], 0.3)
