# services/spherocheck/project/tests/test_rep_build.py


import unittest

from project.api.exceptions import DimensionCapExceeded, InvalidRequest
from project.api.lie_core import root_system, weight_multiplicities, weyl_dim
from project.api.rep_build import assemble, direct_sum, dual, dual_spec, dual_subalgebra, hw_module, tensor
from project.api.spec_parser import parse_pair_spec
from project.tests.base import BaseTestCase

MODULES = [
    (('A', 2), (1, 1)),
    (('A', 3), (0, 1, 0)),
    (('A', 2), (2, 0)),
    (('B', 3), (0, 0, 1)),
    (('B', 3), (1, 0, 0)),
    (('C', 2), (1, 0)),
    (('D', 4), (0, 0, 1, 0)),
    (('D', 5), (0, 0, 0, 0, 1)),
    (('G2', 2), (1, 0)),
]


class TestHighestWeightModules(BaseTestCase):
    """Tests for exact highest weight modules."""

    def test_relations_and_dimensions(self):
        """Ensure Chevalley and Serre relations hold and dims follow Weyl."""
        for (t, r), weight in MODULES:
            R = root_system(t, r)
            rep = hw_module(R, weight)
            self.assertEqual(rep.dim, weyl_dim(R, weight))
            self.assertEqual(rep.chevalley_defects(), [])
            self.assertEqual(rep.serre_defects(), [])
            self.assertEqual(rep.character(), weight_multiplicities(R, weight))

    def test_e6_minuscule(self):
        """Ensure the 27-dimensional E6 module is exact."""
        R = root_system('E6', 6)
        rep = hw_module(R, (1, 0, 0, 0, 0, 0))
        self.assertEqual(rep.dim, 27)
        self.assertEqual(rep.chevalley_defects(), [])
        self.assertEqual(rep.serre_defects(), [])

    def test_raising_operators_are_upper_triangular(self):
        """Ensure e's are strictly upper and f's strictly lower triangular."""
        for (t, r), weight in MODULES:
            rep = hw_module(root_system(t, r), weight)
            for e, f, h in zip(rep.gen_e, rep.gen_f, rep.gen_h):
                self.assertTrue(all(i < j for (i, j), _ in e.items()))
                self.assertTrue(all(i > j for (i, j), _ in f.items()))
                self.assertTrue(h.is_diagonal())

    def test_dimension_cap(self):
        """Ensure modules above the cap are refused."""
        with self.assertRaises(DimensionCapExceeded):
            hw_module(root_system('A', 1), (70,))

    def test_dual_sum_tensor(self):
        """Ensure dual, direct sum and tensor keep the Chevalley relations."""
        R = root_system('A', 2)
        v = hw_module(R, (1, 0))
        d = dual(v)
        self.assertEqual(d.highest_weight, (0, 1))
        self.assertEqual(d.chevalley_defects(), [])
        s = direct_sum([v, d])
        self.assertEqual(s.dim, 6)
        self.assertEqual(s.chevalley_defects(), [])
        t = tensor([v, d])
        self.assertEqual(t.dim, 9)
        self.assertEqual(t.chevalley_defects(), [])


class TestAssemble(BaseTestCase):
    """Tests for k + c inside gl(W)."""

    def test_gl3(self):
        """Ensure sl_3 on F^3 with scalars is gl_3 with a 6-dim Borel."""
        spec, sub = self.sub('sl(3): w1 [h1]')
        self.assertEqual(sub.ambient_dim, 3)
        self.assertEqual(sub.dim, 9)
        self.assertEqual(len(sub.borel_basis), 6)
        self.assertTrue(sub.is_independent())
        self.assertTrue(sub.is_closed())
        self.assertTrue(sub.borel_in_span())
        self.assertTrue(sub.semisimple_traceless)
        self.assertTrue(all(b.is_upper_triangular() for b in sub.borel_basis))

    def test_tensor_and_sum(self):
        """Ensure a two-factor, two-summand algebra is closed."""
        spec, sub = self.sub('sl(2) + sl(3): w1 * w1 ++ 1 * w2 [h(1,0), h(0,1)]')
        self.assertEqual(sub.ambient_dim, 9)
        self.assertEqual(sub.dim, 3 + 8 + 2)
        self.assertTrue(sub.is_closed())
        self.assertEqual(len(sub.center), 2)

    def test_trivial_factor(self):
        """Ensure a factor acting trivially is refused."""
        with self.assertRaises(InvalidRequest):
            assemble(parse_pair_spec('sl(2) + sl(2): w1 * 1'))

    def test_dependent_center(self):
        """Ensure proportional center generators are refused."""
        with self.assertRaises(InvalidRequest):
            assemble(parse_pair_spec('sl(2): w1 [h1, h(2)]'))

    def test_cap(self):
        """Ensure assemble honours the dimension cap."""
        with self.assertRaises(DimensionCapExceeded):
            assemble(parse_pair_spec('sl(3): w1 ++ w1'), cap=5)

    def test_dual_spec(self):
        """Ensure dualizing flips weights and center signs."""
        spec = parse_pair_spec('sl(3): w1 ++ w2 [h(1,-1)]')
        self.assertEqual(dual_spec(spec), parse_pair_spec('sl(3): w2 ++ w1 [h(-1,1)]'))

    def test_dual_subalgebra(self):
        """Ensure the dual Borel stays upper triangular."""
        _, sub = self.sub('sl(3): w1 [h1]')
        dual_sub = dual_subalgebra(sub)
        self.assertEqual(dual_sub.dim, sub.dim)
        self.assertTrue(all(b.is_upper_triangular() for b in dual_sub.borel_basis))
        self.assertTrue(dual_sub.is_closed())


if __name__ == '__main__':
    unittest.main()
