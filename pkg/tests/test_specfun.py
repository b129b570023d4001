import math
import unittest
from concurrent.futures import ThreadPoolExecutor

import mpmath
import numpy as np
import scipy.special as sc

from src.errors import DomainError, PoleError
from src.specfun import Hyp1F2Params, ei_imag, erf_complex, gamma_fn, hyp1f2, theta2, theta3


class TestErf(unittest.TestCase):
    def test_real_values(self):
        self.assertEqual(erf_complex(0), 0)
        self.assertAlmostEqual(erf_complex(1.0).real, 0.8427007929497149, places=14)

    def test_symmetries(self):
        z = 0.8 + 1.1j
        self.assertAlmostEqual(abs(erf_complex(-z) + erf_complex(z)), 0.0, places=14)
        self.assertAlmostEqual(abs(erf_complex(z.conjugate()) - erf_complex(z).conjugate()), 0.0, places=14)

    def test_saturation(self):
        self.assertEqual(erf_complex(40.0), 1.0)
        self.assertEqual(erf_complex(-40.0 + 3.0j), -1.0)
        with self.assertRaises(DomainError):
            erf_complex(40.0j)

    def test_non_finite(self):
        with self.assertRaises(DomainError):
            erf_complex(complex(float("nan"), 0.0))


class TestEiImag(unittest.TestCase):
    def test_value(self):
        si, ci = sc.sici(1.0)
        value = ei_imag(1.0)
        self.assertAlmostEqual(value.real, 0.3374039229009681, places=14)
        self.assertAlmostEqual(value.imag, si + math.pi / 2, places=14)

    def test_array(self):
        values = ei_imag(np.array([0.5, 2.0, 30.0]))
        self.assertEqual(values.shape, (3,))
        # Ei(iy) -> i pi for large y
        self.assertAlmostEqual(values[-1].imag, math.pi, delta=0.05)

    def test_domain(self):
        with self.assertRaises(DomainError):
            ei_imag(0.0)
        with self.assertRaises(DomainError):
            ei_imag(np.array([1.0, -1.0]))


class TestGamma(unittest.TestCase):
    def test_values(self):
        self.assertAlmostEqual(gamma_fn(5).real, 24.0, places=12)
        self.assertAlmostEqual(gamma_fn(0.5).real, math.sqrt(math.pi), places=13)

    def test_recurrence(self):
        s = 0.3 + 0.4j
        self.assertLess(abs(gamma_fn(s + 1) - s * gamma_fn(s)), 1e-12)

    def test_poles(self):
        for s in (0, -1, -2):
            with self.assertRaises(PoleError):
                gamma_fn(s)


class TestHyp1F2(unittest.TestCase):
    def test_reduces_to_0f1(self):
        value = hyp1f2(Hyp1F2Params(0.7, 0.7, 1.3), 2.5)
        self.assertLess(abs(value - complex(mpmath.hyp0f1(1.3, 2.5))), 1e-12)

    def test_sine_integral(self):
        # 1F2(1/2; 3/2, 3/2; -x^2/4) = Si(x)/x
        for x in (3.0, 40.0):
            si, _ = sc.sici(x)
            value = hyp1f2(Hyp1F2Params(0.5, 1.5, 1.5), -x * x / 4)
            self.assertLess(abs(value - si / x), 1e-10 * abs(si / x))

    def test_complex_parameter(self):
        p = Hyp1F2Params(0.5, 1.5, 0.3 + 0.2j)
        expected = complex(mpmath.hyp1f2(0.5, 1.5, 0.3 + 0.2j, -2.0))
        self.assertLess(abs(hyp1f2(p, -2.0) - expected), 1e-12 * abs(expected))

    def test_pole_and_range(self):
        with self.assertRaises(PoleError):
            Hyp1F2Params(0.5, -2, 1.0)
        with self.assertRaises(DomainError):
            hyp1f2(Hyp1F2Params(0.5, 1.5, 1.5), -2e4)

    def test_zero_argument(self):
        self.assertEqual(hyp1f2(Hyp1F2Params(0.5, 1.5, 0.2), 0), 1.0)

    def test_escalation_leaves_shared_precision_alone(self):
        p = Hyp1F2Params(0.5, 1.5, 1.5)
        dps = mpmath.mp.dps
        hyp1f2(p, -144.0 ** 2 / 4)
        self.assertEqual(mpmath.mp.dps, dps)

    def test_threads_agree_with_serial(self):
        p = Hyp1F2Params(0.5, 1.5, 1.5)
        args = [-(x * x) / 4 for x in np.linspace(100.0, 180.0, 24)]
        serial = [hyp1f2(p, z) for z in args]
        with ThreadPoolExecutor(max_workers=8) as pool:
            threaded = list(pool.map(lambda z: hyp1f2(p, z), args))
        self.assertEqual(serial, threaded)


class TestTheta(unittest.TestCase):
    def test_trivial_nome(self):
        self.assertEqual(theta3(0.3, 0.0), 1.0)
        self.assertEqual(theta2(0.3, 0.0), 0.0)

    def test_theta3_series(self):
        self.assertAlmostEqual(theta3(0.0, 0.5).real, 1.0 + 2 * 0.5644684136, places=9)

    def test_split_identity(self):
        z, q = 0.4 + 0.1j, 0.3
        self.assertLess(abs(theta3(z, q) - theta3(2 * z, q**4) - theta2(2 * z, q**4)), 1e-12)

    def test_theta2_against_mpmath(self):
        q = 0.6
        self.assertLess(abs(theta2(0.7, q) - complex(mpmath.jtheta(2, 0.7, q))), 1e-12)

    def test_nome_domain(self):
        with self.assertRaises(DomainError):
            theta3(0.0, 1.0)


class TestAgainstExtendedPrecision(unittest.TestCase):
    def setUp(self):
        self.ctx = mpmath.MPContext()
        self.ctx.dps = 50
        self.rng = np.random.default_rng(200)

    def test_random_hyp1f2(self):
        for _ in range(120):
            a, b1, b2 = self.rng.uniform(0.1, 2.5), self.rng.uniform(0.6, 3.0), self.rng.uniform(0.6, 3.0)
            z = self.rng.uniform(-300.0, 30.0)
            expected = complex(self.ctx.hyp1f2(a, b1, b2, z))
            value = hyp1f2(Hyp1F2Params(a, b1, b2), z)
            self.assertLess(abs(value - expected), 1e-6 * abs(expected) + 1e-14, msg=f"({a}, {b1}, {b2}; {z})")

    def test_random_erf(self):
        for _ in range(50):
            z = complex(self.rng.uniform(-3.0, 3.0), self.rng.uniform(-3.0, 3.0))
            expected = complex(self.ctx.erf(z))
            self.assertLess(abs(erf_complex(z) - expected), 1e-12 * max(1.0, abs(expected)), msg=str(z))

    def test_random_gamma(self):
        for _ in range(50):
            s = complex(self.rng.uniform(-2.5, 4.0), self.rng.uniform(-2.0, 2.0))
            expected = complex(self.ctx.gamma(s))
            self.assertLess(abs(gamma_fn(s) - expected), 1e-12 * abs(expected), msg=str(s))

    def test_reference_value(self):
        expected = complex(self.ctx.hyp1f2(0.5, 1.5, 0.3, -4))
        self.assertLess(abs(hyp1f2(Hyp1F2Params(0.5, 1.5, 0.3), -4.0) - expected), 1e-13 * abs(expected))


class TestEdgeValues(unittest.TestCase):
    def test_sinc_zero(self):
        # 1F2(1/2; 3/2, 1/2; -z^2/4) = sin(z)/z, which vanishes at z = pi
        for z0 in (1.0, 2.5):
            self.assertAlmostEqual(hyp1f2(Hyp1F2Params(0.5, 1.5, 0.5), -z0 * z0 / 4).real, math.sin(z0) / z0, places=13)
        self.assertLess(abs(hyp1f2(Hyp1F2Params(0.5, 1.5, 0.5), -math.pi**2 / 4)), 1e-15)

    def test_theta3_small_nome(self):
        self.assertEqual(theta3(0.0, 0.0), 1.0)
        # 1 + 2 (0.1 + 1e-4 + 1e-9 + 1e-16)
        self.assertAlmostEqual(theta3(0.0, 0.1).real, 1.200200002, places=12)

    def test_erf_oddness(self):
        rng = np.random.default_rng(100)
        radius = 3.0 * np.sqrt(rng.uniform(0.0, 1.0, size=100))
        angle = rng.uniform(0.0, 2 * math.pi, size=100)
        for z in radius * np.exp(1j * angle):
            self.assertLess(abs(erf_complex(-z) + erf_complex(z)), 1e-14 * max(1.0, abs(erf_complex(z))))

    def test_theta_split_grid(self):
        for z in (0.0, 0.3, 0.4 + 0.1j, 1.2 - 0.2j):
            for q in (0.05, 0.3, 0.6):
                split = theta3(2 * z, q**4) + theta2(2 * z, q**4)
                self.assertLess(abs(theta3(z, q) - split), 1e-12 * max(1.0, abs(theta3(z, q))), msg=f"{z}, {q}")

    def test_theta_overflow_is_a_domain_error(self):
        with self.assertRaises(DomainError):
            theta3(300j, 0.5)
        with self.assertRaises(DomainError):
            theta2(400j, 0.5)


if __name__ == "__main__":
    unittest.main()
