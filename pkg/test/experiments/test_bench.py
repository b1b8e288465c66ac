"""Unit test for experiments.bench"""
import unittest
import os
import numpy as np

from evolvingfourier.experiments import run_scaling_bench

RUN_BENCHMARKS = os.environ.get('EVOLVINGFOURIER_BENCHMARKS') == '1'


class BenchTestCase(unittest.TestCase):
    """BenchTestCase class."""

    def test_small_grid(self):
        """
        Test the timing and slope tables on a small grid.
        """
        bench = run_scaling_bench(n_grid=(4,), t_grid=(4, 8), repeats=1)
        self.assertEqual(len(bench.timings), 4)
        self.assertEqual(set(bench.timings.method), {'eft_forward', 'ad_basis'})
        self.assertTrue(np.all(bench.timings.seconds > 0))
        self.assertEqual(len(bench.slopes), 2)
        self.assertTrue(np.isfinite(bench.slope('eft_forward', 4)))
        self.assertGreater(bench.median_seconds('ad_basis', 4, 8), 0.0)

    def test_skipped_cells(self):
        """
        Test that ad_basis is skipped above the size guard.
        """
        bench = run_scaling_bench(n_grid=(4,), t_grid=(4, 8), repeats=1, max_ad_size=20)
        skipped = bench.timings[bench.timings.skipped]
        self.assertEqual(list(skipped.method), ['ad_basis'])
        self.assertEqual(list(skipped.t), [8])
        self.assertTrue(np.isnan(bench.slope('ad_basis', 4)))

    @unittest.skipUnless(RUN_BENCHMARKS, "set EVOLVINGFOURIER_BENCHMARKS=1 to run the timing benchmarks")
    def test_growth_in_time(self):
        """
        Test the cubic growth of the joint eigendecomposition against the transform.
        """
        bench = run_scaling_bench(n_grid=(16,), t_grid=(16, 32, 64, 128), repeats=3)
        self.assertGreaterEqual(bench.slope('ad_basis', 16), 2.5)
        self.assertLessEqual(bench.slope('eft_forward', 16), 1.5)
        self.assertLess(bench.slope('eft_forward', 16), bench.slope('ad_basis', 16))

    @unittest.skipUnless(RUN_BENCHMARKS, "set EVOLVINGFOURIER_BENCHMARKS=1 to run the timing benchmarks")
    def test_speedup(self):
        """
        Test the speedup of the transform over the joint eigendecomposition.
        """
        bench = run_scaling_bench(n_grid=(32,), t_grid=(128,), repeats=1)
        speedup = bench.median_seconds('ad_basis', 32, 128) / bench.median_seconds('eft_forward', 32, 128)
        self.assertGreaterEqual(speedup, 20.0)


if __name__ == "__main__":
    unittest.main()
