# services/spherocheck/project/tests/test_symplectic.py


import unittest
from fractions import Fraction

from project.api.exactla import QMatrix, random_vector
from project.api.exceptions import InvalidRequest, PreconditionError
from project.api.symplectic import CoadjointPoint, canonical_form, conormal_point, in_perp, is_nilpotent, \
    isotropy_check, kk_form, lagrangian_check, minimal_orbit_points, moment_image_point, nilpotent_perp_points, \
    orbit_dimension, perp_space, random_conormal_pair, sample_moment_points, sl_basis, standard_subalgebra
from project.tests.base import BaseTestCase


class TestMomentImage(BaseTestCase):
    """Tests for the moment map of T*P(W)."""

    def test_sampled_points_are_square_zero(self):
        """Ensure 100 sampled image points are traceless and square to zero for n = 3, 4, 5."""
        for n in (3, 4, 5):
            points = sample_moment_points(n, 100, self.cfg())
            self.assertEqual(len(points), 100)
            self.assertTrue(all(p['trace_zero'] for p in points))
            self.assertTrue(all(p['square_zero'] for p in points))

    def test_conormal_pair(self):
        """Ensure sampled covectors vanish on their vectors."""
        w, xi = random_conormal_pair(4, self.cfg())
        self.assertEqual(sum(a * b for a, b in zip(w, xi)), 0)
        m = moment_image_point(w, xi)
        self.assertTrue(is_nilpotent(m))

    def test_moment_precondition(self):
        """Ensure xi(w) != 0 is refused."""
        with self.assertRaises(PreconditionError):
            moment_image_point([1, 0], [1, 0])

    def test_canonical_form(self):
        """Ensure the canonical form is antisymmetric and vanishes on a conormal pair."""
        first = ([1, 2], [3, 4])
        second = ([0, 1], [Fraction(1, 2), 0])
        self.assertEqual(canonical_form(first, second), -canonical_form(second, first))
        self.assertEqual(canonical_form(first, first), 0)
        self.assertEqual(canonical_form(([1, 0], [0, 0]), ([0, 0], [0, 1])), 0)

    def test_rank_one_orbit(self):
        """Ensure a rank-one nilpotent has a (2n - 2)-dimensional SL_n orbit."""
        x = CoadjointPoint(QMatrix.unit(4, 0, 3))
        self.assertEqual(orbit_dimension(sl_basis(4), x), 6)

    def test_traceless_point(self):
        """Ensure coadjoint points must be traceless."""
        with self.assertRaises(InvalidRequest):
            CoadjointPoint(QMatrix.identity(2))


class TestKirillovKostantForm(BaseTestCase):
    """Tests for the coadjoint orbit form x([p, q])."""

    def random_matrix(self, n, seed, lower_left=None):
        entries = random_vector(n * n, self.cfg(seed=seed))
        rows = [entries[i * n:(i + 1) * n] for i in range(n)]
        if lower_left is not None:
            rows = [[0 if i >= lower_left and j < lower_left else v for j, v in enumerate(row)]
                    for i, row in enumerate(rows)]
        return QMatrix.from_rows(rows)

    def random_point(self, n, seed):
        m = self.random_matrix(n, seed)
        return CoadjointPoint(m - QMatrix.identity(n).scale(m.trace() / n))

    def test_sl2_triple(self):
        """Ensure E_01 pairs h = diag(1, -1) with f = E_10 to -2."""
        x = CoadjointPoint(QMatrix.unit(2, 0, 1))
        h = QMatrix.diagonal([1, -1])
        f = QMatrix.unit(2, 1, 0)
        self.assertEqual(kk_form(x, h, f), -2)
        self.assertEqual(kk_form(x, f, h), 2)

    def test_antisymmetric(self):
        """Ensure the form is antisymmetric and vanishes on the diagonal for random points."""
        for seed in range(5):
            x = self.random_point(3, seed)
            p, q = self.random_matrix(3, 10 + seed), self.random_matrix(3, 20 + seed)
            self.assertEqual(kk_form(x, p, q), -kk_form(x, q, p))
            self.assertEqual(kk_form(x, p, p), 0)

    def test_bilinear(self):
        """Ensure the form is linear in each argument."""
        for seed in range(5):
            x = self.random_point(3, seed)
            p, p2, q = (self.random_matrix(3, 30 + 3 * seed + k) for k in range(3))
            c = Fraction(seed - 2, 3)
            self.assertEqual(kk_form(x, p + p2.scale(c), q), kk_form(x, p, q) + c * kk_form(x, p2, q))
            self.assertEqual(kk_form(x, q, p + p2.scale(c)), kk_form(x, q, p) + c * kk_form(x, q, p2))

    def test_conormal_images_pair_to_zero(self):
        """Ensure moment images of the conormal to span(e0, e1) annihilate brackets of its stabilizer."""
        pairs = []
        for seed in range(3):
            w = random_vector(2, self.cfg(seed=seed)) + [0, 0]
            xi = [0, 0] + random_vector(2, self.cfg(seed=50 + seed))
            pairs.append((w, xi))
        for first in pairs:
            for second in pairs:
                self.assertEqual(canonical_form(first, second), 0)
        for seed, (w, xi) in enumerate(pairs):
            x = CoadjointPoint(moment_image_point(w, xi))
            p = self.random_matrix(4, 60 + seed, lower_left=2)
            q = self.random_matrix(4, 70 + seed, lower_left=2)
            self.assertEqual(kk_form(x, p, q), 0)

    def test_shape_mismatch(self):
        """Ensure arguments of the wrong size are rejected."""
        with self.assertRaises(InvalidRequest):
            kk_form(CoadjointPoint(QMatrix.unit(2, 0, 1)), QMatrix.identity(3), QMatrix.identity(3))


class TestStandardSubalgebras(BaseTestCase):
    """Tests for split so_n and sp_2n."""

    def test_dimensions(self):
        """Ensure dims and Borel dims of so_3, so_5 and sp_4."""
        for kind, n, dim, borel in (('so', 3, 3, 2), ('so', 5, 10, 6), ('sp', 4, 10, 6), ('so', 4, 6, 4)):
            sub = standard_subalgebra(kind, n)
            self.assertEqual(sub.dim, dim)
            self.assertEqual(len(sub.borel_basis), borel)
            self.assertTrue(sub.is_closed())
            self.assertTrue(all(b.is_upper_triangular() for b in sub.borel_basis))

    def test_unknown_kind(self):
        """Ensure only so and sp are built."""
        with self.assertRaises(InvalidRequest):
            standard_subalgebra('su', 3)
        with self.assertRaises(InvalidRequest):
            standard_subalgebra('sp', 3)


class TestPerpGeometry(BaseTestCase):
    """Tests for isotropy and Lagrangian checks on k^perp."""

    def _random_perp_points(self, sub, count):
        space = perp_space(sub)
        points = []
        for trial in range(count):
            mix = random_vector(len(space), self.cfg().derive(trial))
            x = QMatrix.zeros(sub.ambient_dim)
            for c, m in zip(mix, space):
                x = x + m.scale(c)
            points.append(CoadjointPoint(x))
        return points

    def test_perp_dimensions(self):
        """Ensure dim k^perp = dim sl_n - dim k."""
        self.assertEqual(len(perp_space(standard_subalgebra('so', 3))), 5)
        self.assertEqual(len(perp_space(standard_subalgebra('sp', 4))), 5)

    def test_isotropy(self):
        """Ensure 100 random points of k^perp are isotropic for so_3 and sp_4."""
        for kind, n in (('so', 3), ('sp', 4)):
            sub = standard_subalgebra(kind, n)
            for x in self._random_perp_points(sub, 100):
                self.assertTrue(isotropy_check(sub, x))

    def test_isotropy_precondition(self):
        """Ensure points outside k^perp are refused."""
        sub = standard_subalgebra('so', 3)
        x = CoadjointPoint(QMatrix.unit(3, 0, 1))
        self.assertFalse(in_perp(sub, x))
        with self.assertRaises(PreconditionError):
            isotropy_check(sub, x)
        with self.assertRaises(PreconditionError):
            lagrangian_check(sub, x)

    def test_lagrangian_so3(self):
        """Ensure minimal orbit points of so_3 have half-dimensional K-orbits."""
        sub = standard_subalgebra('so', 3)
        points = minimal_orbit_points(sub, self.cfg())
        self.assertTrue(points)
        for x in points:
            self.assertEqual(orbit_dimension(sub.basis, x), 2)
            self.assertTrue(lagrangian_check(sub, x))

    def test_conormal_point_in_perp(self):
        """Ensure conormal points lie in k^perp and square to zero."""
        sub = standard_subalgebra('so', 3)
        x = conormal_point(sub, [Fraction(1), Fraction(0), Fraction(0)])
        self.assertIsNotNone(x)
        self.assertTrue(in_perp(sub, x))
        self.assertTrue((x.matrix @ x.matrix).is_zero())

    def test_lagrangian_sp4(self):
        """Ensure sp_4 is transitive on P^3 and its nilpotent perp points are Lagrangian."""
        sub = standard_subalgebra('sp', 4)
        self.assertEqual(minimal_orbit_points(sub, self.cfg()), [])
        points = nilpotent_perp_points(sub, self.cfg())
        self.assertTrue(points)
        for x in points:
            self.assertTrue(is_nilpotent(x.matrix))
            self.assertTrue(lagrangian_check(sub, x))

    def test_lagrangian_zero(self):
        """Ensure x = 0 is not applicable."""
        sub = standard_subalgebra('so', 3)
        self.assertIsNone(lagrangian_check(sub, CoadjointPoint(QMatrix.zeros(3))))


if __name__ == '__main__':
    unittest.main()
