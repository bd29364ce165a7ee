# services/spherocheck/project/tests/test_exactla.py


import unittest
from collections import Counter
from fractions import Fraction

from project.api.exactla import DEFAULT_PRIME, PRIMES, QMatrix, SampleConfig, SpanReducer, bracket, fast_rank, \
    inverse, kernel_basis, kernel_of_rows, kron, random_nonzero_vector, random_vector, rank, rank_mod_p, trial_rank
from project.api.exceptions import BadPrime, InvalidRequest
from project.tests.base import BaseTestCase


class TestQMatrix(BaseTestCase):
    """Tests for the sparse rational matrix type."""

    def test_zero_entries_are_dropped(self):
        """Ensure zero values are not stored."""
        m = QMatrix(2, 2, {(0, 0): 0, (1, 1): Fraction(1, 2)})
        self.assertEqual(m.nnz, 1)
        self.assertEqual(m[1, 1], Fraction(1, 2))
        self.assertEqual(m[0, 0], 0)

    def test_entry_outside_shape(self):
        """Ensure out-of-range entries are rejected."""
        with self.assertRaises(InvalidRequest):
            QMatrix(2, 2, {(2, 0): 1})

    def test_bracket_of_root_vectors(self):
        """Ensure [E_01, E_10] is the coroot diag(1, -1)."""
        h = bracket(QMatrix.unit(2, 0, 1), QMatrix.unit(2, 1, 0))
        self.assertEqual(h, QMatrix.diagonal([1, -1]))

    def test_kron_shape_and_identity(self):
        """Ensure the Kronecker product of identities is an identity."""
        self.assertEqual(kron(QMatrix.identity(2), QMatrix.identity(3)), QMatrix.identity(6))

    def test_multiply_shape_mismatch(self):
        """Ensure incompatible products raise."""
        with self.assertRaises(InvalidRequest):
            QMatrix.zeros(2, 3) @ QMatrix.zeros(2, 3)

    def test_apply_and_trace(self):
        """Ensure apply multiplies a dense vector and trace sums the diagonal."""
        m = QMatrix.from_rows([[1, 2], [3, 4]])
        self.assertEqual(m.apply([1, 1]), [3, 7])
        self.assertEqual(m.trace(), 5)
        self.assertEqual(m.T[0, 1], 3)


class TestRank(BaseTestCase):
    """Tests for exact and modular ranks."""

    def test_rank_of_dependent_rows(self):
        """Ensure a rank-one matrix has rank one."""
        self.assertEqual(rank(QMatrix.from_rows([[1, 2, 3], [2, 4, 6]])), 1)

    def test_rank_with_fractions(self):
        """Ensure fractional entries are scaled exactly."""
        m = QMatrix.from_rows([[Fraction(1, 3), Fraction(1, 2)], [Fraction(2, 3), 1]])
        self.assertEqual(rank(m), 1)
        self.assertEqual(rank(QMatrix.identity(5)), 5)

    def test_modular_rank_never_exceeds_rank(self):
        """Ensure the modular rank is a lower bound that fast_rank corrects."""
        m = QMatrix.from_rows([[DEFAULT_PRIME, 0], [0, 1]])
        self.assertEqual(rank_mod_p(m), 1)
        self.assertEqual(rank(m), 2)
        self.assertEqual(fast_rank(m), 2)

    def test_bad_prime(self):
        """Ensure a denominator divisible by p raises BadPrime."""
        m = QMatrix.from_rows([[Fraction(1, DEFAULT_PRIME)]])
        with self.assertRaises(BadPrime):
            rank_mod_p(m)
        self.assertEqual(trial_rank(m), 1)

    def test_fast_rank_matches_rank(self):
        """Ensure fast_rank agrees with the exact rank on random matrices."""
        for trial in range(5):
            cfg = SampleConfig(seed=trial)
            rows = [random_vector(6, cfg.derive(i)) for i in range(4)]
            rows.append([a + b for a, b in zip(rows[0], rows[1])])
            m = QMatrix.from_rows(rows)
            self.assertEqual(fast_rank(m), rank(m))
            self.assertLessEqual(rank(m), 4)

    def random_square(self, seed, independent, size=20):
        cfg = SampleConfig(seed=seed)
        rows = [random_vector(size, cfg.derive(i)) for i in range(independent)]
        for i in range(independent, size):
            rows.append([a - 2 * b for a, b in zip(rows[i % independent], rows[(i + 1) % independent])])
        return QMatrix.from_rows(rows)

    def test_majority_vote_over_primes(self):
        """Ensure the most common modular rank over PRIMES is the rational rank on random 20x20 matrices."""
        for trial in range(20):
            m = self.random_square(trial, 20 if trial % 2 else 13)
            votes = Counter(rank_mod_p(m, p) for p in PRIMES)
            self.assertEqual(votes.most_common(1)[0][0], rank(m))
            self.assertTrue(all(r <= rank(m) for r in votes))

    def test_rank_of_transpose(self):
        """Ensure rank(M) equals rank of the transpose on random matrices."""
        for trial in range(20):
            m = self.random_square(100 + trial, 20 if trial % 2 else 9)
            self.assertEqual(rank(m), rank(m.transpose()))
        wide = QMatrix.from_rows([[1, 2, 3, 4, 5], [2, 4, 6, 8, 11]])
        self.assertEqual(rank(wide), rank(wide.transpose()))

    def test_trial_rank_moves_to_the_next_prime(self):
        """Ensure a bad first prime falls through to the next one."""
        m = QMatrix.from_rows([[Fraction(1, PRIMES[0]), 1], [0, 1]])
        self.assertEqual(rank_mod_p(m, PRIMES[1]), 2)
        self.assertEqual(trial_rank(m), 2)


class TestKernels(BaseTestCase):
    """Tests for null spaces and the incremental span."""

    def test_kernel_dimension(self):
        """Ensure kernel_basis has cols - rank vectors that are annihilated."""
        m = QMatrix.from_rows([[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, 0, 1]])
        kernel = kernel_basis(m)
        self.assertEqual(len(kernel), 4 - rank(m))
        for v in kernel:
            self.assertTrue((m @ v).is_zero())

    def test_kernel_of_rows(self):
        """Ensure dense kernel vectors solve the sparse system."""
        rows = [{0: 1, 1: -1}, {2: 1}]
        kernel = kernel_of_rows(rows, 3)
        self.assertEqual(kernel, [[1, 1, 0]])

    def test_span_reducer(self):
        """Ensure dependent vectors are detected."""
        span = SpanReducer([{0: 1, 1: 1}, {1: 2}])
        self.assertEqual(span.dim, 2)
        self.assertFalse(span.add({0: 3, 1: 5}))
        self.assertTrue(span.contains({0: 1}))
        self.assertFalse(span.contains({2: 1}))

    def test_inverse(self):
        """Ensure inverse returns an exact two-sided inverse."""
        m = QMatrix.from_rows([[2, 1], [7, 4]])
        self.assertEqual(m @ inverse(m), QMatrix.identity(2))


class TestSampling(BaseTestCase):
    """Tests for deterministic rational sampling."""

    def test_same_seed_same_vector(self):
        """Ensure sampling is a function of the seed."""
        cfg = SampleConfig(seed=42)
        self.assertEqual(random_vector(8, cfg), random_vector(8, cfg))
        self.assertNotEqual(random_vector(8, cfg.derive(0)), random_vector(8, cfg.derive(1)))

    def test_height_bound(self):
        """Ensure sampled rationals have bounded numerators and denominators."""
        cfg = SampleConfig(seed=3, height_bound=2)
        for x in random_vector(200, cfg):
            self.assertLessEqual(abs(x.numerator), 2)
            self.assertLessEqual(x.denominator, 2)

    def test_nonzero_vector(self):
        """Ensure random_nonzero_vector never returns zero."""
        for seed in range(20):
            self.assertTrue(any(random_nonzero_vector(1, SampleConfig(seed=seed, height_bound=1))))

    def test_invalid_config(self):
        """Ensure trials and height_bound must be positive."""
        with self.assertRaises(InvalidRequest):
            SampleConfig(trials=0)
        with self.assertRaises(InvalidRequest):
            SampleConfig(height_bound=0)


if __name__ == '__main__':
    unittest.main()
