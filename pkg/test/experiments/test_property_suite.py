"""Unit test for experiments.property_suite"""
import unittest
import json

from evolvingfourier.experiments import Operations, run_property_suite
from evolvingfourier.spectral import eft_inverse


def scaled_inverse(*args, **kwargs):
    return 2.0 * eft_inverse(*args, **kwargs)


def failing_filter(*args, **kwargs):
    raise RuntimeError("filter unavailable")


class PropertySuiteTestCase(unittest.TestCase):
    """PropertySuiteTestCase class."""

    @classmethod
    def setUpClass(self):
        self.result = run_property_suite(seed=0, n_instances=5)

    def test_all_pass(self):
        """
        Test that the library satisfies every invariant.
        """
        failures = [r.name for r in self.result.results if not r.passed]
        self.assertEqual(failures, [])
        self.assertTrue(self.result.passed)
        self.assertEqual(len(self.result.results), 25)
        modules = {r.module for r in self.result.results}
        self.assertEqual(modules, {'graph', 'spectral', 'filters', 'synth', 'io', 'experiments'})

    def test_seed_stability(self):
        """
        Test that the verdict only depends on the seed.
        """
        again = run_property_suite(seed=0, n_instances=5)
        self.assertEqual(again.pass_set, self.result.pass_set)
        self.assertEqual(again.verdict(), self.result.verdict())

    def test_broken_inverse(self):
        """
        Test that a scaled inverse is caught by the round trip invariant.
        """
        result = run_property_suite(seed=0, n_instances=3, operations=Operations(eft_inverse=scaled_inverse))
        self.assertFalse(result.passed)
        verdict = result.verdict()
        self.assertFalse(verdict['eft_round_trip'])
        self.assertTrue(verdict['eft_parseval'])
        failure = next(r for r in result.results if r.name == 'eft_round_trip')
        self.assertEqual(failure.instances, 1)
        self.assertIn('signal', failure.counterexample)
        # failures serialize to JSON
        json.dumps(result.to_dict())

    def test_raising_operation(self):
        """
        Test that exceptions of an operation are reported as failures.
        """
        result = run_property_suite(seed=1, n_instances=2, operations=Operations(joint_filter=failing_filter))
        failed = {r.name for r in result.results if not r.passed}
        self.assertEqual(
            failed, {'joint_filter_linearity', 'joint_filter_energy', 'joint_filter_order_swap'}
        )
        failure = next(r for r in result.results if r.name == 'joint_filter_energy')
        self.assertIn('RuntimeError', failure.counterexample['error'])
        self.assertIsNone(failure.worst)


if __name__ == "__main__":
    unittest.main()
