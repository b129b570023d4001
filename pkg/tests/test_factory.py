import unittest
from unittest import mock

from src import factory
from src.errors import UnsupportedConfigurationError
from src.factory import CompositionFactory
from src.helper import BoundaryCondition, CompositionRule

D = BoundaryCondition.DIRICHLET
N = BoundaryCondition.NEUMANN
P = BoundaryCondition.PERIODIC
M = BoundaryCondition.MIXED_DN
ALGEBRA = CompositionRule.TRACE_ALGEBRA


class TestPrintedPairs(unittest.TestCase):
    def test_dirichlet_and_neumann_share_the_shells(self):
        dd = CompositionFactory.create(D, D)
        nn = CompositionFactory.create(N, N)
        self.assertEqual(dd.c_terms, nn.c_terms)
        self.assertEqual(dd.d_terms, nn.d_terms)
        self.assertEqual((dd.const, dd.lin1, dd.lin2), (-1.0, -1.0, -1.0))
        self.assertEqual((nn.const, nn.lin1, nn.lin2), (-1.0, 1.0, 1.0))
        self.assertEqual(dd.b_terms, [(1.0, 1, 1.0), (1.0, 2, 1.0)])
        self.assertEqual(nn.b_terms, [(-1.0, 1, 1.0), (-1.0, 2, 1.0)])

    def test_periodic_has_no_boundary_terms(self):
        pp = CompositionFactory.create(P, P)
        self.assertEqual((pp.const, pp.lin1, pp.lin2, pp.b_terms), (0.0, 0.0, 0.0, []))
        self.assertEqual(pp.c_terms, [(1.0, 1, 0.5), (1.0, 2, 0.5)])
        self.assertEqual(pp.d_terms, [(4.0, 0.5, 0.5)])

    def test_mixed_is_built_from_doubled_boxes(self):
        mm = CompositionFactory.create(M, M)
        self.assertEqual(mm.b_terms, [])
        self.assertEqual(sorted(mm.c_terms), [(-1.0, 1, 1.0), (-1.0, 2, 1.0), (4.0, 1, 2.0), (4.0, 2, 2.0)])
        self.assertEqual(sum(w for w, _, _ in mm.d_terms), 0.0)

    def test_dirichlet_neumann_is_symmetric(self):
        self.assertEqual(CompositionFactory.create(D, N), CompositionFactory.create(N, D))
        self.assertEqual(CompositionFactory.create(D, N).const, 1.0)
        self.assertEqual(CompositionFactory.create(D, N).b_terms, [])

    def test_dirichlet_periodic_axes(self):
        dp = CompositionFactory.create(D, P)
        pd = CompositionFactory.create(P, D)
        self.assertEqual((dp.lin1, dp.lin2, dp.kappa_axes), (0.0, -1.0, (2,)))
        self.assertEqual((pd.lin1, pd.lin2, pd.kappa_axes), (-1.0, 0.0, (1,)))
        self.assertEqual(dp.c_terms, [(1.0, 1, 1.0), (1.0, 2, 0.5)])
        self.assertEqual(pd.d_terms, [(2.0, 0.5, 1.0)])

    def test_closed_pairs_agree_with_the_trace_algebra(self):
        for bc in (D, N, P):
            self.assertEqual(CompositionFactory.create(bc, bc), CompositionFactory.create(bc, bc, ALGEBRA))


class TestPerAxisPairs(unittest.TestCase):
    def test_neumann_periodic(self):
        np_ = CompositionFactory.create(N, P)
        self.assertEqual((np_.const, np_.lin1, np_.lin2, np_.kappa_axes), (0.0, 0.0, 1.0, (2,)))
        self.assertEqual(np_.b_terms, [(-2.0, 2, 0.5)])
        self.assertEqual(np_.c_terms, [(1.0, 1, 1.0), (1.0, 2, 0.5)])
        self.assertEqual(np_.d_terms, [(2.0, 1.0, 0.5)])

    def test_dirichlet_mixed(self):
        dm = CompositionFactory.create(D, M)
        self.assertEqual((dm.const, dm.lin1, dm.lin2, dm.kappa_axes), (0.0, 0.0, -1.0, ()))
        # de_b(2 lambda2) - de_b(lambda2): the odd modes of the doubled axis
        self.assertEqual(dm.b_terms, [(1.0, 2, 2.0), (-1.0, 2, 1.0)])
        self.assertEqual(dm.c_terms, [(1.0, 1, 1.0), (2.0, 2, 2.0), (-1.0, 2, 1.0)])
        self.assertEqual(dm.d_terms, [(1.0, 1.0, 2.0), (-1.0, 1.0, 1.0)])

    def test_neumann_mixed_flips_the_b_sign(self):
        dm = CompositionFactory.create(D, M)
        nm = CompositionFactory.create(N, M)
        self.assertEqual(nm.b_terms, [(-w, axis, k) for w, axis, k in dm.b_terms])
        self.assertEqual(nm.lin2, 1.0)
        self.assertEqual((nm.c_terms, nm.d_terms), (dm.c_terms, dm.d_terms))

    def test_periodic_mixed_has_only_shells(self):
        pm = CompositionFactory.create(P, M)
        self.assertEqual((pm.const, pm.lin1, pm.lin2, pm.b_terms, pm.kappa_axes), (0.0, 0.0, 0.0, [], ()))
        self.assertEqual(pm.d_terms, [(2.0, 0.5, 2.0), (-2.0, 0.5, 1.0)])

    def test_exchange_mirrors_the_axes(self):
        for bc1, bc2 in ((N, P), (D, M), (N, M), (P, M)):
            one = CompositionFactory.create(bc1, bc2)
            other = CompositionFactory.create(bc2, bc1)
            self.assertEqual((one.const, one.lin1, one.lin2), (other.const, other.lin2, other.lin1))
            self.assertEqual(sorted((w, 3 - axis, k) for w, axis, k in one.c_terms), sorted(other.c_terms))
            self.assertEqual(sorted((w, f2, f1) for w, f1, f2 in one.d_terms), sorted(other.d_terms))

    def test_trace_algebra_differs_from_the_printed_mixed_pairs(self):
        dn = CompositionFactory.create(D, N, ALGEBRA)
        self.assertEqual((dn.const, dn.lin1, dn.lin2), (1.0, 1.0, -1.0))
        self.assertEqual(dn.b_terms, [(-1.0, 1, 1.0), (1.0, 2, 1.0)])
        mm = CompositionFactory.create(M, M, ALGEBRA)
        self.assertEqual(sorted(mm.c_terms), [(-1.0, 1, 1.0), (-1.0, 2, 1.0), (2.0, 1, 2.0), (2.0, 2, 2.0)])

    def test_missing_spectrum(self):
        spectra = {bc: spec for bc, spec in factory.AXIS_SPECTRA.items() if bc is not M}
        with mock.patch.dict(factory.AXIS_SPECTRA, spectra, clear=True):
            with self.assertRaises(UnsupportedConfigurationError):
                CompositionFactory.create(M, D)


if __name__ == "__main__":
    unittest.main()
