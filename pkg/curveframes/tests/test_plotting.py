import math

import numpy as np
from django.test import SimpleTestCase

from curveframes.exceptions import ConfigError
from curveframes.plotting import HEIGHT, WIDTH, View, fit_to_viewbox, project, render_svg


def unit_circle(n=200):
    t = np.linspace(0.0, 2 * math.pi, n)
    return np.column_stack([np.cos(t), np.sin(t), np.zeros_like(t)])


class ViewTests(SimpleTestCase):
    def test_parse(self):
        self.assertEqual(View.parse("30,20"), View(30.0, 20.0))
        with self.assertRaises(ConfigError):
            View.parse("30")

    def test_ranges(self):
        with self.assertRaises(ConfigError):
            View(360.0, 0.0)
        with self.assertRaises(ConfigError):
            View(0.0, 91.0)

    def test_basis_is_orthonormal(self):
        right, up = View(47.0, -12.0).basis()
        self.assertAlmostEqual(float(np.dot(right, up)), 0.0, delta=1e-15)
        self.assertAlmostEqual(float(np.linalg.norm(right)), 1.0, delta=1e-15)
        self.assertAlmostEqual(float(np.linalg.norm(up)), 1.0, delta=1e-15)


class ProjectionTests(SimpleTestCase):
    def test_circle_seen_from_above_stays_round(self):
        view = View(30.0, 90.0)
        projected = project(unit_circle(), view)
        transform = fit_to_viewbox([projected])
        center = transform.apply(np.zeros((1, 2)))[0]
        radii = np.linalg.norm(transform.apply(projected) - center, axis=1)
        np.testing.assert_allclose(radii, radii[0], rtol=1e-9)

    def test_fit_stays_inside_viewbox(self):
        projected = project(unit_circle() * 50.0, View())
        xy = fit_to_viewbox([projected]).apply(projected)
        self.assertTrue(np.all((xy[:, 0] >= 0) & (xy[:, 0] <= WIDTH)))
        self.assertTrue(np.all((xy[:, 1] >= 0) & (xy[:, 1] <= HEIGHT)))


class RenderTests(SimpleTestCase):
    def test_one_polyline_per_curve(self):
        curves = [("TN1", unit_circle()), ("N1N2", unit_circle() * 0.5 + 1.0)]
        svg = render_svg(curves, View())
        self.assertTrue(svg.startswith("<?xml"))
        self.assertIn('viewBox="0 0 800 600"', svg)
        self.assertEqual(svg.count('class="curve"'), 2)
        self.assertEqual(svg.count('stroke-width="1"'), 2)
        self.assertIn(">N1N2</text>", svg)

    def test_deterministic(self):
        curves = [("alpha", unit_circle())]
        self.assertEqual(render_svg(curves, View(10.0, 45.0)), render_svg(curves, View(10.0, 45.0)))

    def test_nothing_to_plot(self):
        with self.assertRaises(ConfigError):
            render_svg([], View())
