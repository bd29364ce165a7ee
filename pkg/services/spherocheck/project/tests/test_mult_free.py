# services/spherocheck/project/tests/test_mult_free.py


import unittest

from project.api.exceptions import DimensionCapExceeded, InvalidRequest
from project.api.mult_free import component_dim, joint_character, multiplicity_profile, nonspherical_certificate, \
    sym_decomposition
from project.api.spec_parser import parse_pair_spec
from project.tests.base import BaseTestCase


class TestSymDecomposition(BaseTestCase):
    """Tests for the graded decomposition of F[W]."""

    def test_joint_character_mass(self):
        """Ensure the joint character has dim W weights counted with multiplicity."""
        spec = parse_pair_spec('sl(3) + sl(2): w1 * w1 ++ w2 * 1 [h(1,2)]')
        self.assertEqual(joint_character(spec).mass(), spec.dim)
        self.assertEqual(joint_character(spec, dual=True).mass(), spec.dim)

    def test_binary_forms(self):
        """Ensure S^3 of (F^2)* under gl_2 is one irreducible."""
        graded = sym_decomposition(parse_pair_spec('sl(2): w1 [h1]'), 3)
        self.assertEqual(graded.components, ((((3,), (-3,)), 1),))
        self.assertEqual(graded.max_multiplicity, 1)

    def test_harmonics(self):
        """Ensure S^2 of the so_3 module is harmonics plus the quadric."""
        graded = sym_decomposition(parse_pair_spec('sl(2): 2w1'), 2)
        self.assertEqual(sorted(graded.components), [(((0,), ()), 1), (((4,), ()), 1)])

    def test_three_planes(self):
        """Ensure the first repeated component of three planes under a torus is in degree 3."""
        spec = parse_pair_spec('sl(2): w1 ++ w1 ++ w1 [h(1,0,0), h(0,1,0), h(0,0,1)]')
        self.assertEqual([m for _, m in multiplicity_profile(spec, 3)], [1, 1, 2])
        certificate = nonspherical_certificate(spec)
        self.assertEqual(certificate.degree, 3)
        self.assertEqual(component_dim(spec, certificate.component), 2)

    def test_two_exterior_squares(self):
        """Ensure two copies of the sl_4 exterior square are not multiplicity free."""
        spec = parse_pair_spec('sl(4): w2 ++ w2 [h(1,0), h(0,1)]')
        certificate = nonspherical_certificate(spec, 4)
        self.assertIsNotNone(certificate)
        self.assertGreaterEqual(certificate.multiplicity, 2)

    def test_spherical_profile(self):
        """Ensure spherical modules are multiplicity free up to degree 4."""
        for text in ('sl(4): w2 [h1]', 'sp(4): w1 [h1]', 'sl(2) + sl(3): w1 * w1 [h1]', 'g2: w1'):
            profile = multiplicity_profile(parse_pair_spec(text), 4)
            self.assertEqual([m for _, m in profile], [1, 1, 1, 1], text)

    def test_negative_degree(self):
        """Ensure negative degrees are rejected."""
        with self.assertRaises(InvalidRequest):
            sym_decomposition(parse_pair_spec('sl(2): w1'), -1)

    def test_cap(self):
        """Ensure the dimension cap applies."""
        with self.assertRaises(DimensionCapExceeded):
            sym_decomposition(parse_pair_spec('sl(3): w1 ++ w1'), 2, cap=4)


if __name__ == '__main__':
    unittest.main()
