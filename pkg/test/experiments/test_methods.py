"""Unit test for experiments.methods"""
import unittest
import numpy as np

from evolvingfourier.experiments import (
    ADMethod,
    DFTOnlyMethod,
    EFTMethod,
    GFTOnlyMethod,
    MethodName,
    build_method,
    keep_top_fraction,
    parse_methods,
    relative_error,
    remove_lowest_percentile,
)
from evolvingfourier.synth import SynthConfig, gen_evolving_graph
from evolvingfourier.utils.errors import DomainError, SizeGuardError


class MethodsTestCase(unittest.TestCase):
    """MethodsTestCase class."""

    @classmethod
    def setUpClass(self):
        self.graph = gen_evolving_graph(SynthConfig(n=7, t=6, seed=2, edge_prob=0.6))
        self.signal = np.random.default_rng(2).standard_normal(self.graph.shape)

    def test_parse(self):
        """
        Test method names.
        """
        self.assertEqual(MethodName.parse('eft'), MethodName.EFT)
        self.assertEqual(MethodName.parse('dftonly'), MethodName.DFT_ONLY)
        self.assertEqual(parse_methods(None), tuple(MethodName))
        self.assertEqual(parse_methods('EFT,GFTOnly'), (MethodName.EFT, MethodName.GFT_ONLY))
        self.assertEqual(parse_methods(['AD', MethodName.EFT]), (MethodName.AD, MethodName.EFT))
        with self.assertRaises(DomainError):
            parse_methods('EFT,wavelets')

    def test_build_method(self):
        """
        Test building every method.
        """
        expected = {
            'EFT': EFTMethod,
            'AD': ADMethod,
            'DFTOnly': DFTOnlyMethod,
            'GFTOnly': GFTOnlyMethod,
        }
        for name, method_class in expected.items():
            method = build_method(name, self.graph)
            self.assertIsInstance(method, method_class)
            self.assertEqual(method.name.value, name)
        with self.assertRaises(SizeGuardError):
            build_method('AD', self.graph, max_size=10)

    def test_orthonormal_round_trip(self):
        """
        Test that every method is an energy preserving round trip.
        """
        stacked = np.stack([self.signal, 2.0 * self.signal], axis=-1)
        for name in MethodName:
            method = build_method(name, self.graph)
            coefficients = method.forward(self.signal)
            self.assertEqual(coefficients.shape, self.graph.shape)
            self.assertAlmostEqual(
                np.linalg.norm(coefficients), np.linalg.norm(self.signal), delta=1e-9
            )
            self.assertLessEqual(relative_error(self.signal, method.inverse(coefficients)), 1e-10)
            channels = method.forward(stacked)
            self.assertEqual(channels.shape, stacked.shape)
            self.assertTrue(np.allclose(method.inverse(channels), stacked))

    def test_keep_top_fraction(self):
        """
        Test keeping the largest coefficients.
        """
        values = np.array([[0.1, -5.0, 0.3], [2.0, -0.2, 1.0 + 1.0j]])
        kept = keep_top_fraction(values, 0.5)
        self.assertTrue(np.array_equal(kept, [[0, -5.0, 0], [2.0, 0, 1.0 + 1.0j]]))
        self.assertEqual(np.count_nonzero(keep_top_fraction(np.arange(1, 21), 0.1)), 2)
        self.assertEqual(np.count_nonzero(keep_top_fraction(np.arange(1, 21), 0.01)), 1)
        self.assertTrue(np.array_equal(keep_top_fraction(values, 1.0), values))
        for invalid in (0.0, 1.5, -0.1):
            with self.assertRaises(DomainError):
                keep_top_fraction(values, invalid)

    def test_remove_lowest_percentile(self):
        """
        Test removing the smallest coefficients.
        """
        values = np.arange(1.0, 11.0)
        self.assertTrue(np.array_equal(remove_lowest_percentile(values, 0), values))
        self.assertTrue(np.array_equal(remove_lowest_percentile(values, 100), np.zeros(10)))
        half = remove_lowest_percentile(values[::-1], 50)
        self.assertTrue(np.array_equal(half, [10, 9, 8, 7, 6, 0, 0, 0, 0, 0]))
        self.assertEqual(np.count_nonzero(remove_lowest_percentile(values, 25)), 8)
        with self.assertRaises(DomainError):
            remove_lowest_percentile(values, 101)

    def test_relative_error(self):
        """
        Test the relative Frobenius error.
        """
        reference = np.array([[3.0, 0.0], [0.0, 4.0]])
        self.assertEqual(relative_error(reference, reference), 0.0)
        self.assertAlmostEqual(relative_error(reference, np.zeros((2, 2))), 1.0)
        self.assertEqual(relative_error(np.zeros(3), np.zeros(3)), 0.0)
        self.assertEqual(relative_error(np.zeros(3), np.ones(3)), float('inf'))


if __name__ == "__main__":
    unittest.main()
