"""Unit test for filters.chebyshev"""
import unittest
import numpy as np
from numpy.polynomial import polynomial

from evolvingfourier.graph import LaplacianKind, build_laplacian
from evolvingfourier.filters import (
    ChebyshevFilter,
    chebyshev_apply,
    chebyshev_nodes,
    estimate_lambda_max,
    fit_chebyshev,
)
from evolvingfourier.spectral import gft_basis
from evolvingfourier.utils.errors import DomainError, ShapeError


class ChebyshevTestCase(unittest.TestCase):
    """ChebyshevTestCase class."""

    @classmethod
    def setUpClass(self):
        rng = np.random.default_rng(7)
        upper = np.triu(rng.uniform(0.1, 1.0, (10, 10)) * (rng.random((10, 10)) < 0.5), k=1)
        self.adjacency = upper + upper.T
        self.laplacian = build_laplacian(self.adjacency)
        self.basis = gft_basis(self.laplacian)
        self.signal = rng.standard_normal((10, 3))

    def exact(self, response, signal):
        return self.basis.vectors.T @ (response[:, None] * (self.basis.vectors @ signal))

    def test_identity_and_first_order(self):
        """
        Test the first two Chebyshev terms.
        """
        lambda_max = estimate_lambda_max(self.laplacian)
        identity = chebyshev_apply(self.laplacian, ChebyshevFilter(np.array([1.0]), lambda_max), self.signal)
        self.assertTrue(np.array_equal(identity, self.signal))
        first = chebyshev_apply(self.laplacian, ChebyshevFilter(np.array([0.0, 1.0]), lambda_max), self.signal)
        expected = (2.0 * self.laplacian.toarray() / lambda_max - np.eye(10)) @ self.signal
        self.assertTrue(np.allclose(first, expected))

    def test_polynomial_targets(self):
        """
        Test that degree-matched polynomials are reproduced exactly.
        """
        lambda_max = estimate_lambda_max(self.laplacian)
        rng = np.random.default_rng(8)
        for degree in range(6):
            power_coeffs = rng.standard_normal(degree + 1)
            fitted = fit_chebyshev(
                lambda x, c=power_coeffs: polynomial.polyval(x, c), degree + 2, lambda_max
            )
            filtered = chebyshev_apply(self.laplacian, fitted, self.signal)
            exact = self.exact(polynomial.polyval(self.basis.eigenvalues, power_coeffs), self.signal)
            self.assertLessEqual(np.abs(filtered - exact).max(), 1e-8 * max(1.0, np.abs(exact).max()))

    def test_fit_examples(self):
        """
        Test coefficients of constant and linear targets.
        """
        constant = fit_chebyshev(lambda x: np.ones_like(x), 5, 3.0)
        self.assertTrue(np.allclose(constant.coeffs, [1.0, 0, 0, 0, 0, 0], atol=1e-12))
        self.assertEqual(constant.order, 5)
        linear = fit_chebyshev(lambda x: x, 4, 2.0)
        self.assertTrue(np.allclose(linear.coeffs, [1.0, 1.0, 0, 0, 0], atol=1e-12))
        # scalar targets are broadcast
        self.assertTrue(np.allclose(fit_chebyshev(lambda x: 2.0, 3, 1.0).coeffs, [2.0, 0, 0, 0]))

    def test_step_fit(self):
        """
        Test interpolation of an ideal step at the Chebyshev nodes.
        """
        lambda_max = 4.0

        def step(x):
            return (np.asarray(x) < 0.5 * lambda_max).astype(float)

        fitted = fit_chebyshev(step, 8, lambda_max)
        nodes = chebyshev_nodes(8, lambda_max)
        self.assertLessEqual(np.abs(fitted.response(nodes) - step(nodes)).max(), 1e-10)
        grid = np.linspace(0.0, lambda_max, 1000)
        self.assertTrue(np.isfinite(np.abs(fitted.response(grid) - step(grid)).max()))

    def test_low_pass_against_exact(self):
        """
        Test an order-16 low-pass fit against exact spectral filtering.
        """
        lambda_max = estimate_lambda_max(self.laplacian)

        def low_pass(x):
            return (np.asarray(x) < 0.5 * lambda_max).astype(float)

        fitted = fit_chebyshev(low_pass, 16, lambda_max)
        # smooth signal: energy concentrated on the low graph frequencies
        spectrum = np.exp(-2.0 * self.basis.eigenvalues)[:, None] * np.ones((10, 3))
        smooth = self.basis.vectors.T @ spectrum
        exact = self.exact(low_pass(self.basis.eigenvalues), smooth)
        filtered = chebyshev_apply(self.laplacian, fitted, smooth)
        self.assertLessEqual(np.linalg.norm(filtered - exact) / np.linalg.norm(exact), 0.1)

    def test_estimate_lambda_max(self):
        """
        Test largest eigenvalue estimates.
        """
        path = np.array([[0.0, 1.0, 0.0], [1.0, 0.0, 1.0], [0.0, 1.0, 0.0]])
        self.assertAlmostEqual(estimate_lambda_max(build_laplacian(path)), 3.0, delta=0.035)
        self.assertGreaterEqual(estimate_lambda_max(build_laplacian(path)), 3.0)
        normalized = build_laplacian(self.adjacency, LaplacianKind.NORMALIZED)
        self.assertLessEqual(estimate_lambda_max(normalized), 2.02)
        self.assertEqual(estimate_lambda_max(np.zeros((4, 4))), 1e-12)
        exact = self.basis.eigenvalues[-1]
        self.assertGreaterEqual(estimate_lambda_max(self.laplacian), exact)
        self.assertLessEqual(estimate_lambda_max(self.laplacian), 1.02 * exact)

    def test_errors(self):
        """
        Test invalid filters and signals.
        """
        with self.assertRaises(DomainError):
            ChebyshevFilter(np.array([1.0]), 0.0)
        with self.assertRaises(DomainError):
            ChebyshevFilter(np.array([]), 1.0)
        with self.assertRaises(DomainError):
            fit_chebyshev(lambda x: x, -1, 1.0)
        with self.assertRaises(ShapeError):
            chebyshev_apply(self.laplacian, ChebyshevFilter(np.array([1.0]), 1.0), np.zeros(9))


if __name__ == "__main__":
    unittest.main()
