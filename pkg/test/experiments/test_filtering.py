"""Unit test for experiments.filtering"""
import unittest

from evolvingfourier.experiments import run_filter_demo


class FilterDemoTestCase(unittest.TestCase):
    """FilterDemoTestCase class."""

    def test_filter_demo(self):
        """
        Test that the joint low-pass smooths every mesh channel.
        """
        reports = run_filter_demo(frames=16, resolution=8, noise_std=0.05, seed=1)
        self.assertEqual([report.channel for report in reports], [0, 1, 2])
        for report in reports:
            self.assertEqual(report.seed, 1)
            self.assertLess(report.s2_clean, report.s2_noisy)
            self.assertLess(report.s2_filtered, report.s2_noisy)
            self.assertGreater(report.error_noisy, 0.0)


if __name__ == "__main__":
    unittest.main()
