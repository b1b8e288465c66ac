"""Unit test for filters.joint"""
import unittest
import numpy as np
import yaml
import os
import shutil

from evolvingfourier import PipelineRunner
from evolvingfourier.filters import (
    ChebyshevFilter,
    FilterPreset,
    PresetName,
    TemporalFilter,
    filters_from_spec,
    fit_chebyshev,
    joint_filter,
    temporal_filter_from_preset,
    vertex_filters_from_preset,
)
from evolvingfourier.graph import dirichlet_s2
from evolvingfourier.synth import SynthConfig, gen_dynamic_mesh, gen_evolving_graph
from evolvingfourier.utils.errors import DomainError, ShapeError
from evolvingfourier.utils.io import write_graph_json, write_signal_csv


class JointFilterTestCase(unittest.TestCase):
    """JointFilterTestCase class."""

    @classmethod
    def setUpClass(self):
        self.current_path = os.path.dirname(__file__)
        self.data_path = os.path.join(self.current_path, '..', 'data')
        self.out_path = os.path.join(self.data_path, 'joint_filter_test')
        if os.path.exists(self.out_path) and os.path.isdir(self.out_path):
            shutil.rmtree(self.out_path)
        os.makedirs(self.out_path)

        self.graph = gen_evolving_graph(SynthConfig(n=10, t=12, seed=4, edge_prob=0.5))
        rng = np.random.default_rng(4)
        self.signal = rng.standard_normal(self.graph.shape)
        self.other = rng.standard_normal(self.graph.shape)
        self.vertex_filters = vertex_filters_from_preset(
            self.graph, FilterPreset(PresetName.LOW_PASS, (0.4,)), order=12
        )
        self.temporal_filter = temporal_filter_from_preset(
            FilterPreset(PresetName.LOW_PASS, (0.5,)), self.graph.num_timesteps
        )

    def test_identity(self):
        """
        Test that missing filters leave the signal unchanged.
        """
        filtered = joint_filter(self.graph, self.signal)
        self.assertTrue(np.isrealobj(filtered))
        self.assertTrue(np.allclose(filtered, self.signal, atol=1e-12))
        identity = ChebyshevFilter(np.array([1.0]), 1.0)
        self.assertTrue(np.allclose(
            joint_filter(self.graph, self.signal, identity, order='time_first'), self.signal
        ))

    def test_order_invariance(self):
        """
        Test that both filter orders give the same output.
        """
        vertex_first = joint_filter(self.graph, self.signal, self.vertex_filters, self.temporal_filter)
        time_first = joint_filter(
            self.graph, self.signal, self.vertex_filters, self.temporal_filter, order='time_first'
        )
        self.assertTrue(np.isrealobj(vertex_first))
        self.assertTrue(np.isrealobj(time_first))
        self.assertLessEqual(
            np.abs(vertex_first - time_first).max() / np.abs(vertex_first).max(), 1e-10
        )

    def test_linearity(self):
        """
        Test that the filter is linear in the signal.
        """
        def apply(signal):
            return joint_filter(self.graph, signal, self.vertex_filters, self.temporal_filter)

        combined = apply(2.0 * self.signal - 0.5 * self.other)
        self.assertTrue(np.allclose(combined, 2.0 * apply(self.signal) - 0.5 * apply(self.other)))

    def test_heat_filter_energy(self):
        """
        Test that heat filters with a low-pass temporal response do not add energy.
        """
        heat = [
            fit_chebyshev(lambda x: np.exp(-np.asarray(x)), 16, vertex_filter.lambda_max)
            for vertex_filter in self.vertex_filters
        ]
        filtered = joint_filter(self.graph, self.signal, heat, self.temporal_filter)
        self.assertLessEqual(np.linalg.norm(filtered), np.linalg.norm(self.signal) * (1 + 1e-8))
        self.assertLess(np.linalg.norm(filtered), np.linalg.norm(self.signal))

    def test_channels(self):
        """
        Test that channels are filtered independently.
        """
        stacked = np.stack([self.signal, self.other], axis=-1)
        filtered = joint_filter(self.graph, stacked, self.vertex_filters, self.temporal_filter)
        self.assertEqual(filtered.shape, stacked.shape)
        self.assertTrue(np.allclose(
            filtered[..., 1],
            joint_filter(self.graph, self.other, self.vertex_filters, self.temporal_filter),
        ))

    def test_mesh_low_pass(self):
        """
        Test that a vertex low-pass smooths a noisy dynamic mesh.
        """
        mesh, positions = gen_dynamic_mesh(frames=8, resolution=8, seed=0)
        noisy = positions + np.random.default_rng(0).normal(0.0, 0.3, positions.shape)
        vertex_filters = vertex_filters_from_preset(mesh, FilterPreset(PresetName.LOW_PASS, (0.3,)))
        filtered = joint_filter(mesh, noisy, vertex_filters)
        self.assertEqual(filtered.shape, noisy.shape)
        for channel in range(3):
            self.assertLess(
                dirichlet_s2(mesh, filtered[..., channel]), dirichlet_s2(mesh, noisy[..., channel])
            )

    def test_filters_from_spec(self):
        """
        Test filters described by a filter document.
        """
        vertex_filters, temporal_filter = filters_from_spec({}, self.graph)
        self.assertIsNone(vertex_filters)
        self.assertIsNone(temporal_filter)

        vertex_filters, _ = filters_from_spec(
            {"vertex": {"type": "chebyshev", "coeffs": [1.0, 0.5], "lambda_max": 4.0}}, self.graph
        )
        self.assertIsInstance(vertex_filters, ChebyshevFilter)
        self.assertEqual(vertex_filters.lambda_max, 4.0)
        vertex_filters, _ = filters_from_spec(
            {"vertex": {"type": "chebyshev", "coeffs": [1.0, 0.5]}}, self.graph
        )
        self.assertEqual(len(vertex_filters), self.graph.num_timesteps)

        vertex_filters, temporal_filter = filters_from_spec(
            {
                "vertex": {"type": "preset", "preset": "LowPass", "cutoffs": [0.4], "order": 12},
                "temporal": {"type": "preset", "preset": "LowPass", "cutoffs": [0.5]},
            },
            self.graph,
        )
        self.assertTrue(np.allclose(
            joint_filter(self.graph, self.signal, vertex_filters, temporal_filter),
            joint_filter(self.graph, self.signal, self.vertex_filters, self.temporal_filter),
        ))

        response = np.ones(self.graph.num_timesteps)
        response[3] = 0.25
        _, temporal_filter = filters_from_spec(
            {"temporal": {"type": "explicit", "response_re": response.tolist()}}, self.graph
        )
        self.assertIsInstance(temporal_filter, TemporalFilter)
        self.assertTrue(np.array_equal(temporal_filter.response, response))

        with self.assertRaises(DomainError):
            filters_from_spec({"vertex": {"type": "wavelet"}}, self.graph)
        with self.assertRaises(DomainError):
            filters_from_spec({"vertex": {"type": "chebyshev"}}, self.graph)
        with self.assertRaises(DomainError):
            filters_from_spec({"temporal": {"type": "fir"}}, self.graph)
        with self.assertRaises(ShapeError):
            filters_from_spec({"temporal": {"type": "explicit", "response_re": [1.0]}}, self.graph)

    def test_errors(self):
        """
        Test order and shape errors.
        """
        with self.assertRaises(DomainError):
            joint_filter(self.graph, self.signal, order='diagonal')
        with self.assertRaises(ShapeError):
            joint_filter(self.graph, self.signal, self.vertex_filters[:-1])
        with self.assertRaises(ShapeError):
            joint_filter(self.graph, self.signal, temporal_filter=TemporalFilter.all_pass(5))
        with self.assertRaises(ShapeError):
            joint_filter(self.graph, self.signal[:, :-1])

    def test_joint_filter_with_pipeline_runner(self):
        """
        Test the joint filter step with pipeline runner.
        """
        graph_path = os.path.join(self.out_path, 'graph.json')
        signal_path = os.path.join(self.out_path, 'signal.csv')
        write_graph_json(graph_path, self.graph)
        write_signal_csv(signal_path, self.signal)

        config_fname = os.path.join(self.current_path, 'config', 'joint_filter.yml')
        with open(config_fname, 'r') as file:
            config = yaml.safe_load(file)

        pipeline = PipelineRunner(output_path=self.out_path, **config)
        output = pipeline.run(output_name='sample', graph_path=graph_path, signal_path=signal_path)

        band_stop = temporal_filter_from_preset(
            FilterPreset(PresetName.BAND_STOP, (0.25, 0.75)), self.graph.num_timesteps
        )
        expected = joint_filter(self.graph, self.signal, self.vertex_filters, band_stop)
        self.assertTrue(np.allclose(output['filtered'], expected, atol=1e-10))

        cached = pipeline.run(output_name='sample', graph_path=graph_path, signal_path=signal_path)
        self.assertTrue(np.allclose(cached['filtered'], expected, atol=1e-10))

    def tearDown(self):
        """Tear down the tests."""


if __name__ == "__main__":
    unittest.main()
