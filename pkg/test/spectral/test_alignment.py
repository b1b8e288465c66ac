"""Unit test for spectral.alignment"""
import unittest
import numpy as np
from scipy.stats import ortho_group

from evolvingfourier.spectral import align_bases, eigenvalue_groups
from evolvingfourier.utils.errors import ShapeError


class AlignmentTestCase(unittest.TestCase):
    """AlignmentTestCase class."""

    @classmethod
    def setUpClass(self):
        self.basis = ortho_group.rvs(6, random_state=0)

    def test_identity(self):
        """
        Test aligning a basis with itself.
        """
        alignment = align_bases(self.basis, self.basis)
        self.assertAlmostEqual(alignment.difference, 0.0)
        self.assertTrue(np.array_equal(alignment.permutation, np.arange(6)))
        self.assertTrue(np.all(alignment.signs == 1))

    def test_permuted_and_flipped(self):
        """
        Test recovering a row permutation with sign flips.
        """
        permutation = np.array([3, 0, 5, 1, 4, 2])
        signs = np.array([1, -1, -1, 1, -1, 1])
        candidate = signs[:, None] * self.basis[permutation]
        alignment = align_bases(self.basis, candidate)
        self.assertLessEqual(alignment.difference, 1e-10)
        self.assertTrue(np.allclose(alignment.aligned, self.basis))
        self.assertTrue(np.array_equal(candidate[alignment.permutation] * alignment.signs[:, None], self.basis))

    def test_degenerate_rotation(self):
        """
        Test alignment inside a degenerate eigenspace.
        """
        eigenvalues = np.array([0.0, 1.0, 1.0, 2.0, 3.0, 3.0])
        angle = 0.4
        rotation = np.array([[np.cos(angle), -np.sin(angle)], [np.sin(angle), np.cos(angle)]])
        candidate = self.basis.copy()
        candidate[1:3] = rotation @ self.basis[1:3]
        candidate[4:6] = rotation.T @ self.basis[4:6]

        plain = align_bases(self.basis, candidate)
        self.assertGreater(plain.difference, 1e-3)
        grouped = align_bases(self.basis, candidate, eigenvalues, eigenvalues)
        self.assertLessEqual(grouped.difference, 1e-10)

    def test_eigenvalue_groups(self):
        """
        Test chaining of close eigenvalues.
        """
        groups = eigenvalue_groups(np.array([2.0, 0.0, 1.0, 1.0 + 5e-7, 1.0 + 1e-6 + 4e-7]))
        self.assertEqual([g.tolist() for g in groups], [[1], [2, 3, 4], [0]])

    def test_errors(self):
        """
        Test shape errors.
        """
        with self.assertRaises(ShapeError):
            align_bases(self.basis, self.basis[:5])
        with self.assertRaises(ShapeError):
            align_bases(self.basis, self.basis, np.zeros(5))


if __name__ == "__main__":
    unittest.main()
