"""Unit test for preprocessing.io"""
import unittest
import numpy as np
import yaml
import os
import shutil

from evolvingfourier import PipelineRunner
from evolvingfourier.graph import DynamicGraph
from evolvingfourier.preprocessing import DynamicGraphLoader
from evolvingfourier.utils.errors import ParseError
from evolvingfourier.utils.io import write_graph_json, write_signal_csv


class IOTestCase(unittest.TestCase):
    """IOTestCase class."""

    @classmethod
    def setUpClass(self):
        self.current_path = os.path.dirname(__file__)
        self.data_path = os.path.join(self.current_path, '..', 'data')
        self.out_path = os.path.join(self.data_path, 'loader_test')
        if os.path.exists(self.out_path) and os.path.isdir(self.out_path):
            shutil.rmtree(self.out_path)
        os.makedirs(self.out_path)

        self.graph = DynamicGraph.from_edge_lists(4, [[(0, 1, 1.0), (1, 2, 0.5)], [(0, 3, 2.0)]])
        self.signal = np.arange(8.0).reshape(4, 2) / 3.0
        self.graph_path = os.path.join(self.out_path, 'graph.json')
        self.signal_path = os.path.join(self.out_path, 'signal.csv')
        write_graph_json(self.graph_path, self.graph)
        write_signal_csv(self.signal_path, self.signal)

    def test_loaders_with_pipeline_runner(self):
        """
        Test graph and signal loaders with pipeline runner.
        """
        config_fname = os.path.join(self.current_path, 'config', 'io', 'graph_loader.yml')
        with open(config_fname, 'r') as file:
            config = yaml.safe_load(file)

        pipeline = PipelineRunner(output_path=self.out_path, save_intermediate=True, **config)
        output = pipeline.run(
            output_name='sample',
            graph_path=self.graph_path,
            signal_path=self.signal_path
        )
        self.assertEqual(output['graph'], self.graph)
        self.assertTrue(np.array_equal(output['signal'], self.signal))
        # loaders do not cache their outputs
        self.assertFalse(any(name.endswith('.h5') for _, _, files in os.walk(self.out_path) for name in files))

    def test_missing_file(self):
        """
        Test loading a missing file.
        """
        loader = DynamicGraphLoader()
        with self.assertRaises(ParseError):
            loader.process(os.path.join(self.out_path, 'missing.json'))

    def tearDown(self):
        """Tear down the tests."""


if __name__ == "__main__":
    unittest.main()
