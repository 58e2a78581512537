import io
import os
import unittest

import numpy as np
from parameterized import parameterized

from lstdtools import logger
from lstdtools.estimators.exceptions import (
    DimensionMismatch,
    InconsistentDimension,
    IndexOutOfRange,
    ParseError,
)
from lstdtools.estimators.trajectory import (
    Dataset,
    Trajectory,
    dumps_jsonl,
    eligibility_traces,
    monte_carlo_return,
    monte_carlo_returns,
    read_jsonl,
    write_jsonl,
)
from tests.unit.estimators.instances import random_dataset


class TrajectoryTests(unittest.TestCase):
    @classmethod
    def setUpClass(cls) -> None:
        cls.logger = logger.LstdLogger(os.getenv("LSTD_LOG_LEVEL", "info"))

    def test_from_episode_pads_to_horizon(self):
        trajectory = Trajectory.from_episode(3, [[1.0, 2.0], [3.0, 4.0]], [0.5, 1.5], 4)

        self.assertEqual(4, trajectory.horizon)
        self.assertEqual(2, trajectory.d)
        self.assertEqual(2, trajectory.n_steps)
        np.testing.assert_array_equal(trajectory.mask, [True, True, False, False])
        np.testing.assert_array_equal(trajectory.features[2:], np.zeros((3, 2)))
        np.testing.assert_array_equal(trajectory.rewards, [0.5, 1.5, 0.0, 0.0])

    def test_empty_episode_needs_dimension(self):
        trajectory = Trajectory.from_episode(0, [], [], 3, d=2)
        self.assertEqual(0, trajectory.n_steps)
        self.assertEqual((4, 2), trajectory.features.shape)

    def test_episode_longer_than_horizon(self):
        with self.assertRaises(DimensionMismatch):
            Trajectory.from_episode(0, [[1.0]] * 3, [0.0] * 3, 2)

    @parameterized.expand(
        [
            ["Rewards of the wrong length", [[1.0], [0.0]], [1.0, 1.0], None, DimensionMismatch],
            ["Mask of the wrong length", [[1.0], [0.0]], [1.0], [True, False], DimensionMismatch],
            ["Real step after padding", [[0.0], [1.0], [0.0]], [0.0, 1.0], [False, True], ValueError],
            ["Padded step with a reward", [[1.0], [0.0], [0.0]], [1.0, 2.0], [True, False], ValueError],
            ["Non-finite reward", [[1.0], [0.0]], [np.nan], None, ValueError],
        ]
    )
    def test_invalid_trajectory(self, _, features, rewards, mask, error):
        with self.assertRaises(error):
            Trajectory(0, features, rewards, mask)

    def test_trajectory_is_read_only(self):
        trajectory = Trajectory(0, [[1.0], [0.0]], [1.0])
        with self.assertRaises(ValueError):
            trajectory.rewards[0] = 2.0

    def test_dataset_rejects_mixed_horizons(self):
        with self.assertRaises(InconsistentDimension):
            Dataset(
                [Trajectory(0, [[1.0], [0.0]], [1.0]), Trajectory(1, [[1.0], [1.0], [0.0]], [1.0, 1.0])],
                1,
                0.9,
            )

    def test_dataset_rejects_mixed_dimensions(self):
        with self.assertRaises(InconsistentDimension):
            Dataset([Trajectory(0, [[1.0, 0.0], [0.0, 0.0]], [1.0])], 1, 0.9)

    def test_dataset_rejects_gamma_outside_unit_interval(self):
        with self.assertRaises(ValueError):
            Dataset([], 1, 1.5)

    def test_traces_without_decay_are_features(self):
        trajectory = random_dataset(0, 1, 5, 3)[0]
        np.testing.assert_array_equal(
            eligibility_traces(trajectory, 0.0, 0.9), trajectory.features[:-1]
        )

    def test_first_trace_is_first_feature(self):
        trajectory = random_dataset(1, 1, 5, 3)[0]
        np.testing.assert_array_equal(
            eligibility_traces(trajectory, 0.8, 0.9)[0], trajectory.features[0]
        )

    def test_trace_hand_computed(self):
        trajectory = Trajectory(0, [[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]], [0.0, 0.0])
        traces = eligibility_traces(trajectory, 0.5, 0.95)
        np.testing.assert_allclose(traces[1], [0.475, 1.0], rtol=1e-15)

    def test_traces_match_defining_sum(self):
        trajectory = random_dataset(2, 1, 6, 2)[0]
        lambda_, gamma = 0.7, 0.9
        traces = eligibility_traces(trajectory, lambda_, gamma)
        for j in range(trajectory.horizon):
            expected = sum(
                (lambda_ * gamma) ** (j - t) * trajectory.features[t] for t in range(j + 1)
            )
            np.testing.assert_allclose(traces[j], expected, rtol=1e-12, atol=1e-14)

    def test_dataset_traces_reset_per_trajectory(self):
        dataset = random_dataset(3, 4, 5, 2)
        traces = dataset.traces(0.9)
        for i, trajectory in enumerate(dataset):
            np.testing.assert_allclose(
                traces[i], eligibility_traces(trajectory, 0.9, dataset.gamma), rtol=1e-14
            )

    def test_traces_reject_lambda_outside_unit_interval(self):
        with self.assertRaises(ValueError):
            eligibility_traces(random_dataset(0, 1, 2, 1)[0], 1.2, 0.9)

    def test_monte_carlo_return_hand_computed(self):
        trajectory = Trajectory(0, [[1.0]] * 3 + [[0.0]], [1.0, 1.0, 1.0])
        self.assertAlmostEqual(1.75, monte_carlo_return(trajectory, 0, 0.5), places=15)

    def test_monte_carlo_return_zero_rewards(self):
        trajectory = Trajectory(0, [[1.0]] * 3 + [[0.0]], [0.0, 0.0, 0.0])
        self.assertEqual(0.0, monte_carlo_return(trajectory, 1, 0.9))

    def test_monte_carlo_return_myopic(self):
        trajectory = Trajectory(0, [[1.0]] * 3 + [[0.0]], [2.0, 3.0, 4.0])
        self.assertEqual(3.0, monte_carlo_return(trajectory, 1, 0.0))

    def test_monte_carlo_returns_agree_with_single_returns(self):
        trajectory = random_dataset(4, 1, 7, 1)[0]
        returns = monte_carlo_returns(trajectory, 0.8)
        for step in range(trajectory.horizon):
            self.assertAlmostEqual(returns[step], monte_carlo_return(trajectory, step, 0.8), places=12)

    @parameterized.expand([["Negative step", -1], ["Step past the horizon", 3]])
    def test_monte_carlo_return_out_of_range(self, _, step):
        trajectory = Trajectory(0, [[1.0]] * 3 + [[0.0]], [1.0, 1.0, 1.0])
        with self.assertRaises(IndexOutOfRange):
            monte_carlo_return(trajectory, step, 0.5)


class JsonlTests(unittest.TestCase):
    @classmethod
    def setUpClass(cls) -> None:
        cls.logger = logger.LstdLogger(os.getenv("LSTD_LOG_LEVEL", "info"))

    def test_round_trip(self):
        dataset = random_dataset(5, 4, 6, 3, gamma=0.95)
        stream = io.StringIO(dumps_jsonl(dataset))
        self.assertEqual(dataset, read_jsonl(stream))

    def test_single_trajectory_file_has_two_lines(self):
        dataset = Dataset([Trajectory(7, [[0.25], [1.5], [0.0]], [1.0, 0.1])], 1, 0.9)

        text = dumps_jsonl(dataset)

        self.assertEqual(2, text.count("\n"))
        self.assertTrue(text.endswith("\n"))
        self.assertNotIn("\r", text)
        self.assertEqual(dataset, read_jsonl(io.StringIO(text)))

    def test_empty_dataset_is_header_only(self):
        dataset = Dataset([], 2, 0.9)
        text = dumps_jsonl(dataset)
        self.assertEqual(1, text.count("\n"))
        self.assertEqual(dataset, read_jsonl(io.StringIO(text)))

    def test_writes_shortest_round_trip_floats(self):
        dataset = Dataset([Trajectory(0, [[0.1], [0.0]], [0.3])], 1, 0.95)
        text = dumps_jsonl(dataset)
        self.assertIn("0.1", text)
        self.assertNotIn("0.1000", text)

    def test_write_to_path(self):
        import tempfile

        dataset = random_dataset(6, 2, 3, 2)
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "trajectories.jsonl")
            write_jsonl(dataset, path)
            self.assertEqual(dataset, read_jsonl(path))

    def test_invalid_json_names_line(self):
        text = dumps_jsonl(random_dataset(7, 2, 3, 1)).splitlines()
        text[2] = text[2][:-5]
        with self.assertRaises(ParseError) as context:
            read_jsonl(io.StringIO("\n".join(text)))
        self.assertEqual(3, context.exception.line_number)

    def test_missing_header(self):
        with self.assertRaises(ParseError) as context:
            read_jsonl(io.StringIO('{"id": 0}\n'))
        self.assertEqual(1, context.exception.line_number)

    def test_empty_file(self):
        with self.assertRaises(ParseError):
            read_jsonl(io.StringIO(""))

    def test_record_lengths_must_match_horizon(self):
        header = '{"format": "lstdtools-trajectories", "version": 1, "d": 1, "gamma": 0.9, "n": 1}\n'
        record = '{"id": 0, "d": 1, "H": 2, "features": [[1.0], [0.0]], "rewards": [1.0], "mask": [true]}\n'
        with self.assertRaises(ParseError) as context:
            read_jsonl(io.StringIO(header + record))
        self.assertEqual(2, context.exception.line_number)

    def test_record_dimension_must_match_header(self):
        header = '{"format": "lstdtools-trajectories", "version": 1, "d": 2, "gamma": 0.9, "n": 1}\n'
        record = '{"id": 0, "d": 1, "H": 1, "features": [[1.0], [0.0]], "rewards": [1.0], "mask": [true]}\n'
        with self.assertRaises(InconsistentDimension):
            read_jsonl(io.StringIO(header + record))

    def test_records_must_share_horizon(self):
        header = '{"format": "lstdtools-trajectories", "version": 1, "d": 1, "gamma": 0.9, "n": 2}\n'
        first = '{"id": 0, "d": 1, "H": 1, "features": [[1.0], [0.0]], "rewards": [1.0], "mask": [true]}\n'
        second = (
            '{"id": 1, "d": 1, "H": 2, "features": [[1.0], [1.0], [0.0]], "rewards": [1.0, 1.0], '
            '"mask": [true, true]}\n'
        )
        with self.assertRaises(InconsistentDimension):
            read_jsonl(io.StringIO(header + first + second))

    def test_undecodable_bytes_are_a_parse_error(self):
        import tempfile

        header = b'{"format": "lstdtools-trajectories", "version": 1, "d": 1, "gamma": 0.9, "n": 1}\n'
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "latin1.jsonl")
            with open(path, "wb") as file:
                file.write(header + b'{"id": 0, "note": "caf\xe9"}\n')
            with self.assertRaises(ParseError) as context:
                read_jsonl(path)
        self.assertIn("UTF-8", str(context.exception))
        self.assertGreaterEqual(context.exception.line_number, 1)
