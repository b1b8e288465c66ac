"""Unit test for pipeline"""
import unittest
import numpy as np
import os
import shutil

from evolvingfourier import PipelineRunner
from evolvingfourier.graph import JointLaplacianBuilder
from evolvingfourier.pipeline import StageConfig
from evolvingfourier.synth import EvolvingGraphGenerator
from evolvingfourier.utils.errors import DomainError, ParseError, ShapeError


def generator_stage(outputs=('graph',)):
    return {
        'synth': {
            'class': 'EvolvingGraphGenerator',
            'params': {'n': 4, 't': 3},
            'inputs': ['seed'],
            'outputs': list(outputs),
        }
    }


class PipelineTestCase(unittest.TestCase):
    """PipelineTestCase class."""

    @classmethod
    def setUpClass(self):
        self.current_path = os.path.dirname(__file__)
        self.data_path = os.path.join(self.current_path, 'data')
        self.out_path = os.path.join(self.data_path, 'pipeline_test')
        if os.path.exists(self.out_path) and os.path.isdir(self.out_path):
            shutil.rmtree(self.out_path)
        os.makedirs(self.out_path)

    def test_stage_config(self):
        """
        Test parsing of stage mappings.
        """
        config = StageConfig.parse(generator_stage())
        self.assertEqual(config.subpackage, 'synth')
        self.assertEqual(config.class_name, 'EvolvingGraphGenerator')
        self.assertEqual(config.params, {'n': 4, 't': 3})
        self.assertIs(config.step_class(), EvolvingGraphGenerator)

        malformed = [
            [],
            {'synth': {'class': 'EvolvingGraphGenerator'}, 'graph': {'class': 'JointLaplacianBuilder'}},
            {'synth': {'inputs': ['seed']}},
            {'synth': {'class': 'EvolvingGraphGenerator', 'parameters': {}}},
        ]
        for stage in malformed:
            with self.assertRaises(ParseError, msg=str(stage)):
                StageConfig.parse(stage)
        with self.assertRaises(ParseError):
            StageConfig.parse({'synth': {'class': 'MeshGenerator'}}).step_class()
        with self.assertRaises(ParseError):
            StageConfig.parse({'graph': {'class': 'DynamicGraph'}}).step_class()
        with self.assertRaises(ParseError):
            PipelineRunner(stages=[{'nowhere': {'class': 'Step'}}])

    def test_run_errors(self):
        """
        Test missing inputs and outputs.
        """
        pipeline = PipelineRunner(inputs=['seed'], outputs=['graph'], stages=[generator_stage()])
        with self.assertRaises(DomainError):
            pipeline.run()
        with self.assertRaises(DomainError):
            pipeline.run(output_name='sample', seed=0)
        self.assertEqual(pipeline.run(seed=0)['graph'].shape, (4, 3))

        pipeline = PipelineRunner(inputs=['seed'], outputs=['laplacian'], stages=[generator_stage()])
        with self.assertRaises(DomainError):
            pipeline.run(seed=0)
        pipeline = PipelineRunner(inputs=['seed'], stages=[generator_stage(('graph', 'extra'))])
        with self.assertRaises(ShapeError):
            pipeline.run(seed=0)

    def test_step_paths(self):
        """
        Test output directories and links of a step.
        """
        step = JointLaplacianBuilder(kind='norm', save_path=self.out_path)
        self.assertEqual(step.output_dir.name, 'JointLaplacianBuilder(force_dense=False,kind=normalized)')
        self.assertTrue(step.output_dir.is_dir())

        link = os.path.join(self.out_path, 'latest')
        step._link_to_path(link)
        self.assertTrue(os.path.islink(link))
        self.assertEqual(os.path.realpath(link), str(step.output_dir.resolve()))
        with self.assertRaises(DomainError):
            JointLaplacianBuilder(link_path=link)

    def test_cached_outputs(self):
        """
        Test that cached outputs are read back.
        """
        pipeline = PipelineRunner(
            output_path=self.out_path, inputs=['seed'], outputs=['graph'], stages=[generator_stage()]
        )
        first = pipeline.run(output_name='seed_1', seed=1)['graph']
        self.assertTrue(os.path.isfile(os.path.join(pipeline.final_path, 'seed_1.h5')))
        second = pipeline.run(output_name='seed_1', seed=1)['graph']
        self.assertEqual(first, second)
        self.assertTrue(np.array_equal(first[0].toarray(), second[0].toarray()))

    def tearDown(self):
        """Tear down the tests."""


if __name__ == "__main__":
    unittest.main()
