"""Unit test for experiments.reports"""
import unittest
import json
import numpy as np
import pandas as pd
import os
import shutil

from evolvingfourier.experiments import (
    DenoiseReport,
    median_of,
    reports_to_frame,
    summarize_reports,
    write_report,
)


class ReportsTestCase(unittest.TestCase):
    """ReportsTestCase class."""

    @classmethod
    def setUpClass(self):
        self.current_path = os.path.dirname(__file__)
        self.data_path = os.path.join(self.current_path, '..', 'data')
        self.out_path = os.path.join(self.data_path, 'reports_test')
        if os.path.exists(self.out_path) and os.path.isdir(self.out_path):
            shutil.rmtree(self.out_path)
        os.makedirs(self.out_path)
        self.reports = [
            DenoiseReport('EFT', 0.1, 0.2, 0, config={'n': 4}),
            DenoiseReport('EFT', 0.1, 0.4, 1, config={'n': 4}),
            DenoiseReport('EFT', 0.1, 0.9, 2, config={'n': 4}),
            DenoiseReport('AD', 0.1, float('nan'), 0, skipped=True, config={'n': 4}),
        ]

    def test_frame(self):
        """
        Test report tables and medians.
        """
        frame = reports_to_frame(self.reports)
        self.assertEqual(list(frame.columns), ['method', 'keep_fraction', 'error', 'seed', 'skipped'])
        self.assertEqual(len(frame), 4)
        summary = summarize_reports(frame, ['method', 'keep_fraction'])
        self.assertEqual(list(summary.method), ['AD', 'EFT'])
        self.assertTrue(np.isnan(summary.error[0]))
        self.assertAlmostEqual(summary.error[1], 0.4)
        self.assertAlmostEqual(median_of(self.reports, method='EFT', keep_fraction=0.1), 0.4)
        self.assertAlmostEqual(median_of([{'method': 'EFT', 'error': 1.5}], method='EFT'), 1.5)

    def test_write_report(self):
        """
        Test the CSV table and its JSON summary.
        """
        out = os.path.join(self.out_path, 'denoise.csv')
        csv_path, json_path = write_report(
            self.reports, 'denoise', out=out, config={'n': 4}, summary_by=['method']
        )
        self.assertEqual(str(csv_path), out)
        frame = pd.read_csv(csv_path)
        self.assertEqual(len(frame), 4)
        self.assertAlmostEqual(frame.error[1], 0.4)
        with open(json_path) as file:
            summary = json.load(file)
        self.assertEqual(summary['experiment'], 'denoise')
        self.assertEqual(summary['rows'], 4)
        self.assertEqual(summary['config'], {'n': 4})
        self.assertIn('git', summary)
        self.assertIn('cpu_count', summary['hardware'])
        self.assertEqual(summary['medians'][0], {'method': 'AD', 'error': None})
        self.assertEqual(summary['medians'][1], {'method': 'EFT', 'error': 0.4})

    def test_default_name(self):
        """
        Test the timestamped default file name.
        """
        csv_path, json_path = write_report(self.reports, 'denoise', out_dir=os.path.join(self.out_path, 'runs'))
        self.assertTrue(csv_path.name.startswith('denoise_'))
        self.assertEqual(csv_path.suffix, '.csv')
        self.assertTrue(os.path.isfile(json_path))

    def tearDown(self):
        """Tear down the tests."""


if __name__ == "__main__":
    unittest.main()
