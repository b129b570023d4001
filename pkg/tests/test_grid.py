import unittest

import numpy as np

from src.config import DomainConfig, RangeConfig, SweepConfig
from src.grids import AxisGrid, points_of


class TestAxisGrid(unittest.TestCase):
    def setUp(self):
        self.cfg = SweepConfig(
            axis="lambda1",
            range=RangeConfig(start=1.0, stop=3.0, count=3),
            l_fixed=2.0,
            domain=DomainConfig(m=2.0),
        )

    def test_make_grid(self):
        grid = AxisGrid(self.cfg)
        grid.make_grid()
        self.assertEqual(len(grid.grid_points), 3)
        np.testing.assert_allclose(grid.values, [1.0, 2.0, 3.0])

    def test_lambda_axis(self):
        points = points_of(self.cfg)
        self.assertEqual([p.index for p in points], [0, 1, 2])
        for p in points:
            self.assertAlmostEqual(p.lambda1, p.value)
            self.assertAlmostEqual(p.lambda2, 2.0)
            self.assertAlmostEqual(p.l1, p.value / 2.0)

    def test_both_equal(self):
        self.cfg.axis = "both_equal"
        for p in points_of(self.cfg):
            self.assertAlmostEqual(p.lambda1, p.lambda2)

    def test_mass_axis(self):
        self.cfg.axis = "m_physical"
        points = points_of(self.cfg)
        self.assertTrue(all(p.l1 == p.l2 == 2.0 for p in points))
        self.assertAlmostEqual(points[-1].lambda1, 6.0)

    def test_log_spacing(self):
        self.cfg.range = RangeConfig(start=0.1, stop=10.0, count=3, spacing="log")
        np.testing.assert_allclose([p.value for p in points_of(self.cfg)], [0.1, 1.0, 10.0])


if __name__ == "__main__":
    unittest.main()
