"""Unit test for utils.parallel"""
import unittest
import os

from evolvingfourier.utils.parallel import BLAS_THREAD_VARIABLES, run_parallel


class ParallelTestCase(unittest.TestCase):
    """ParallelTestCase class."""

    def test_item_order(self):
        """
        Test that results come back in item order for one and several cores.
        """
        items = list(range(7))
        self.assertEqual(run_parallel(abs, [-i for i in items]), items)
        self.assertEqual(run_parallel(abs, [-i for i in items], cores=2), items)

    def test_single_threaded_workers(self):
        """
        Test that workers start with one BLAS thread and the parent environment is restored.
        """
        before = {name: os.environ.get(name) for name in BLAS_THREAD_VARIABLES}
        seen = run_parallel(os.getenv, list(BLAS_THREAD_VARIABLES), cores=2)
        self.assertEqual(seen, ['1'] * len(BLAS_THREAD_VARIABLES))
        self.assertEqual({name: os.environ.get(name) for name in BLAS_THREAD_VARIABLES}, before)


if __name__ == "__main__":
    unittest.main()
