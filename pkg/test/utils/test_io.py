"""Unit test for utils.io"""
import unittest
import json
import numpy as np
import os
import shutil

from evolvingfourier.graph import DynamicGraph, LaplacianKind
from evolvingfourier.spectral import eft_forward
from evolvingfourier.utils.errors import DomainError, ParseError, SymmetryError
from evolvingfourier.utils.io import (
    load_config,
    parse_coeffs_csv,
    parse_filter_json,
    parse_graph_json,
    parse_signal_csv,
    write_coeffs_csv,
    write_graph_json,
    write_signal_csv,
)


class IOTestCase(unittest.TestCase):
    """IOTestCase class."""

    @classmethod
    def setUpClass(self):
        self.current_path = os.path.dirname(__file__)
        self.data_path = os.path.join(self.current_path, '..', 'data')
        self.out_path = os.path.join(self.data_path, 'io_test')
        if os.path.exists(self.out_path) and os.path.isdir(self.out_path):
            shutil.rmtree(self.out_path)
        os.makedirs(self.out_path)

    def write(self, name, content):
        path = os.path.join(self.out_path, name)
        with open(path, 'w') as file:
            file.write(content)
        return path

    def test_graph_json(self):
        """
        Test reading and writing dynamic graphs.
        """
        path = self.write('graph.json', json.dumps({
            'num_nodes': 3,
            'snapshots': [[[0, 1, 0.5], [1, 2, 1.0]], [[0, 2, 2]], []],
        }))
        graph = parse_graph_json(path)
        self.assertEqual(graph.shape, (3, 3))
        self.assertEqual(graph[0][1, 0], 0.5)
        self.assertEqual(graph[2].nnz, 0)

        copy_path = os.path.join(self.out_path, 'copy.json')
        write_graph_json(copy_path, graph)
        self.assertEqual(parse_graph_json(copy_path), graph)

    def test_graph_json_errors(self):
        """
        Test malformed graph files.
        """
        broken = self.write('broken.json', '{"num_nodes": 3,\n  "snapshots": [[0, 1, 0.5]')
        with self.assertRaises(ParseError) as context:
            parse_graph_json(broken)
        self.assertEqual(context.exception.line, 2)
        self.assertIsNotNone(context.exception.column)

        invalid = [
            {'snapshots': []},
            {'num_nodes': 'three', 'snapshots': []},
            {'num_nodes': 3, 'snapshots': {}},
            {'num_nodes': 3, 'snapshots': [[[0, 1]]]},
            {'num_nodes': 3, 'snapshots': [[[0.5, 1, 1.0]]]},
            {'num_nodes': 3, 'snapshots': [[[0, True, 1.0]]]},
        ]
        for i, content in enumerate(invalid):
            path = self.write(f'invalid_{i}.json', json.dumps(content))
            with self.assertRaises(ParseError, msg=str(content)):
                parse_graph_json(path)

        out_of_range = self.write('range.json', json.dumps({'num_nodes': 2, 'snapshots': [[[0, 2, 1.0]]]}))
        with self.assertRaises(DomainError):
            parse_graph_json(out_of_range)
        negative = self.write('negative.json', json.dumps({'num_nodes': 2, 'snapshots': [[[0, 1, -1.0]]]}))
        with self.assertRaises(DomainError):
            parse_graph_json(negative)
        asymmetric = self.write(
            'asymmetric.json', json.dumps({'num_nodes': 2, 'snapshots': [[[0, 1, 1.0], [1, 0, 2.0]]]})
        )
        with self.assertRaises(SymmetryError):
            parse_graph_json(asymmetric)
        with self.assertRaises(ParseError):
            parse_graph_json(os.path.join(self.out_path, 'missing.json'))

    def test_signal_csv(self):
        """
        Test reading and writing signals.
        """
        signal = np.random.default_rng(0).standard_normal((3, 4))
        path = os.path.join(self.out_path, 'signal.csv')
        write_signal_csv(path, signal)
        self.assertTrue(np.array_equal(parse_signal_csv(path), signal))

        ragged = self.write('ragged.csv', '1,2,3\n4,5\n')
        with self.assertRaises(ParseError) as context:
            parse_signal_csv(ragged)
        self.assertEqual(context.exception.line, 2)
        text = self.write('text.csv', '1,2\n3,four\n')
        with self.assertRaises(ParseError) as context:
            parse_signal_csv(text)
        self.assertEqual((context.exception.line, context.exception.column), (2, 2))
        with self.assertRaises(ParseError):
            parse_signal_csv(self.write('empty.csv', ''))

    def test_coeffs_csv(self):
        """
        Test reading and writing coefficients with their header.
        """
        graph = DynamicGraph([np.array([[0.0, 1.0], [1.0, 0.0]])] * 3)
        coefficients = eft_forward(graph, np.array([[1.0, 2.0, 0.5], [0.0, -1.0, 3.0]]), kind='norm')
        path = os.path.join(self.out_path, 'coeffs.csv')
        write_coeffs_csv(path, coefficients)
        with open(path) as file:
            self.assertEqual(file.readline().strip(), '# eft N=2 T=3 kind=normalized norm=unitary')
        parsed = parse_coeffs_csv(path)
        self.assertTrue(np.array_equal(parsed.values, coefficients.values))
        self.assertEqual(parsed.kind, LaplacianKind.NORMALIZED)
        self.assertIsNone(parsed.graph_freqs)
        self.assertTrue(np.allclose(parsed.time_freqs, coefficients.time_freqs))

        headless = self.write('headless.csv', '1,0,2,0\n')
        with self.assertRaises(ParseError) as context:
            parse_coeffs_csv(headless)
        self.assertEqual(context.exception.line, 1)
        mismatch = self.write('mismatch.csv', '# eft N=2 T=1 kind=combinatorial norm=unitary\n1,0\n')
        with self.assertRaises(ParseError):
            parse_coeffs_csv(mismatch)
        norm = self.write('norm.csv', '# eft N=1 T=1 kind=combinatorial norm=forward\n1,0\n')
        with self.assertRaises(ParseError):
            parse_coeffs_csv(norm)

    def test_filter_json(self):
        """
        Test reading filter descriptions.
        """
        path = self.write('filter.json', json.dumps({'vertex': {'type': 'preset', 'preset': 'LowPass'}}))
        self.assertEqual(parse_filter_json(path), {'vertex': {'type': 'preset', 'preset': 'LowPass'}, 'temporal': {}})
        with self.assertRaises(ParseError):
            parse_filter_json(self.write('list.json', '[]'))
        with self.assertRaises(ParseError):
            parse_filter_json(self.write('section.json', '{"temporal": 3}'))

    def test_load_config(self):
        """
        Test reading YAML and JSON configs.
        """
        self.assertEqual(load_config(self.write('config.yml', 'n: 4\nt: 8\n')), {'n': 4, 't': 8})
        self.assertEqual(load_config(self.write('config.json', '{"n": 4}')), {'n': 4})
        self.assertEqual(load_config(self.write('empty.yml', '')), {})
        with self.assertRaises(ParseError) as context:
            load_config(self.write('broken.yml', 'n: 4\nt: [8\n'))
        self.assertIsNotNone(context.exception.line)
        with self.assertRaises(ParseError):
            load_config(self.write('list.yml', '- 4\n'))

    def tearDown(self):
        """Tear down the tests."""


if __name__ == "__main__":
    unittest.main()
