import os
import unittest

import numpy as np
from parameterized import parameterized

from lstdtools import logger
from lstdtools.estimators import linalg
from lstdtools.estimators.exceptions import EmptyTrajectory, InsufficientData
from lstdtools.estimators.loto import (
    LOTOResult,
    downdate_inverse,
    loto_error,
    loto_score,
    loto_vector,
    lstd_loto_cv,
    naive_loto_cv,
)
from lstdtools.estimators.lstd import build_system, lstd_solve
from lstdtools.estimators.trajectory import Dataset, Trajectory
from tests.unit.estimators.instances import random_dataset, single_trajectory, well_posed_dataset


class LotoTests(unittest.TestCase):
    @classmethod
    def setUpClass(cls) -> None:
        cls.logger = logger.LstdLogger(os.getenv("LSTD_LOG_LEVEL", "info"))

    def test_downdate_identical_pair_leaves_one_trajectory(self):
        trajectory = Trajectory(0, [[1.0, 0.5], [0.2, 1.0], [0.0, 0.0]], [1.0, 0.5])
        dataset = Dataset([trajectory, trajectory], 2, 0.9)
        a_inv = linalg.invert(build_system(dataset, 0.5).a)

        result = downdate_inverse(a_inv, trajectory, 0.5, 0.9)

        expected = linalg.invert(build_system(dataset.subset([0]), 0.5).a)
        np.testing.assert_allclose(result, expected, rtol=1e-8)

    def test_downdate_empty_trajectory_is_identity(self):
        dataset = random_dataset(0, 3, 4, 2, min_steps=2)
        a_inv = linalg.invert(build_system(dataset, 0.5).a)
        empty = Trajectory.from_episode(9, [], [], 4, d=2)
        np.testing.assert_array_equal(downdate_inverse(a_inv, empty, 0.5, dataset.gamma), a_inv)

    @parameterized.expand([[seed] for seed in range(10)])
    def test_downdate_matches_rebuilt_system(self, seed):
        dataset = random_dataset(10 + seed, 5, 4, 3, min_steps=3)
        a_inv = linalg.invert(build_system(dataset, 0.6).a)
        for i, trajectory in enumerate(dataset):
            result = downdate_inverse(a_inv, trajectory, 0.6, dataset.gamma)
            expected = linalg.invert(build_system(dataset.without(i), 0.6).a)
            self.assertLessEqual(
                np.linalg.norm(result - expected) / np.linalg.norm(expected), 1e-8
            )

    def test_loto_vector_zero_reward_trajectory(self):
        trajectory = Trajectory(0, [[1.0], [2.0], [0.0]], [0.0, 0.0])
        b = np.array([3.5])
        np.testing.assert_array_equal(loto_vector(b, trajectory, 0.5, 0.9), b)

    def test_loto_vector_matches_rebuilt_system(self):
        dataset = random_dataset(20, 4, 5, 3)
        b = build_system(dataset, 0.4).b
        for i, trajectory in enumerate(dataset):
            np.testing.assert_allclose(
                loto_vector(b, trajectory, 0.4, dataset.gamma),
                build_system(dataset.without(i), 0.4).b,
                rtol=1e-10,
                atol=1e-12,
            )

    def test_loto_error_hand_computed(self):
        # returns (1.75, 1.5) at gamma 0.5
        trajectory = Trajectory(0, [[1.0], [1.0], [0.0]], [1.0, 1.5])
        self.assertAlmostEqual(0.40625, loto_error(np.array([1.0]), trajectory, 0.5), places=15)

    def test_loto_error_perfect_prediction(self):
        trajectory = Trajectory(0, [[1.0], [1.0], [0.0]], [0.0, 0.0])
        self.assertEqual(0.0, loto_error(np.array([0.0]), trajectory, 0.9))

    def test_loto_error_ignores_padding(self):
        trajectory = Trajectory.from_episode(0, [[1.0]], [2.0], 5)
        self.assertEqual(1.0, loto_error(np.array([1.0]), trajectory, 0.9))

    def test_loto_error_empty_trajectory(self):
        with self.assertRaises(EmptyTrajectory):
            loto_error(np.array([1.0]), Trajectory.from_episode(0, [], [], 3, d=1), 0.9)

    @parameterized.expand([[seed] for seed in range(50)])
    def test_efficient_matches_naive(self, seed):
        dataset = well_posed_dataset(seed)
        for lambda_ in (0.0, 0.25, 0.5, 0.75, 1.0):
            efficient = lstd_loto_cv(dataset, lambda_, ridge=1e-6)
            naive = naive_loto_cv(dataset, lambda_, ridge=1e-6)

            np.testing.assert_allclose(efficient.errors, naive.errors, rtol=1e-8, atol=1e-12)
            np.testing.assert_allclose(efficient.theta, naive.theta, rtol=1e-8, atol=1e-12)
            self.assertEqual(0, efficient.fold_failures)

    def test_efficient_matches_explicit_folds(self):
        dataset = random_dataset(30, 4, 6, 2, min_steps=3)
        result = lstd_loto_cv(dataset, 0.8)
        for i, trajectory in enumerate(dataset):
            theta_i = lstd_solve(build_system(dataset.without(i), 0.8))
            self.assertAlmostEqual(
                result.errors[i] / loto_error(theta_i, trajectory, dataset.gamma), 1.0, places=8
            )

    def test_fold_error_ignores_order_of_other_trajectories(self):
        dataset = random_dataset(40, 5, 5, 2, min_steps=3)
        order = [0, 3, 1, 4, 2]
        original = lstd_loto_cv(dataset, 0.5)
        shuffled = lstd_loto_cv(dataset.permuted(order), 0.5)
        np.testing.assert_allclose(shuffled.errors, original.errors[order], rtol=1e-10)

    def test_requires_two_trajectories(self):
        dataset = single_trajectory([[1.0], [0.0]], [1.0], 0.9)
        with self.assertRaises(InsufficientData):
            lstd_loto_cv(dataset, 0.5)
        with self.assertRaises(InsufficientData):
            naive_loto_cv(dataset, 0.5)

    def test_empty_trajectory_in_dataset(self):
        dataset = Dataset(
            [Trajectory.from_episode(0, [[1.0]], [1.0], 2), Trajectory.from_episode(1, [], [], 2, d=1)], 1, 0.9
        )
        with self.assertRaises(EmptyTrajectory):
            lstd_loto_cv(dataset, 0.5)

    def test_singular_fold_is_reported_not_raised(self):
        # removing either trajectory leaves a direction with no data and no ridge
        dataset = Dataset(
            [
                Trajectory(0, [[1.0, 0.0], [0.0, 0.0]], [1.0]),
                Trajectory(1, [[0.0, 1.0], [0.0, 0.0]], [1.0]),
            ],
            2,
            0.9,
        )
        result = lstd_loto_cv(dataset, 0.5, ridge=0.0)

        self.assertEqual(2, result.fold_failures)
        self.assertTrue(np.all(np.isinf(result.errors)))
        self.assertEqual(float("inf"), result.score)

    def test_score_is_mean_of_finite_errors(self):
        self.assertEqual(2.0, loto_score([1.0, 3.0, np.inf]))
        self.assertEqual(float("inf"), loto_score([np.inf, np.inf]))

    def test_result_properties(self):
        result = LOTOResult(np.zeros(1), np.array([1.0, 2.0]), 0.5, np.array([False, True]))
        self.assertEqual(1, result.fold_failures)
        self.assertEqual(1.5, result.score)
