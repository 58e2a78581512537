import math
import os
import unittest

import numpy as np

from lstdtools import logger
from lstdtools.envs.mountain_car import (
    FORWARD,
    NEUTRAL,
    REVERSE,
    CarState,
    MountainCarEnvironment,
    mountain_car_generate,
)
from lstdtools.envs.oracle import EnvConfig
from lstdtools.envs.rng import make_rng


class MountainCarTests(unittest.TestCase):
    @classmethod
    def setUpClass(cls) -> None:
        cls.logger = logger.LstdLogger(os.getenv("LSTD_LOG_LEVEL", "info"))
        cls.environment = MountainCarEnvironment()

    def test_dynamics(self):
        state = CarState(-0.5, 0.01)
        result = self.environment.dynamics(state, FORWARD)
        velocity = 0.01 + 0.001 - 0.0025 * math.cos(-1.5)
        self.assertAlmostEqual(velocity, result.velocity, places=15)
        self.assertAlmostEqual(-0.5 + velocity, result.position, places=15)

    def test_dynamics_clamps(self):
        fast = self.environment.dynamics(CarState(-1.0, 0.07), FORWARD)
        self.assertEqual(0.07, fast.velocity)
        wall = self.environment.dynamics(CarState(-1.19, -0.07), REVERSE)
        self.assertEqual(-1.2, wall.position)

    def test_reaching_goal_terminates_with_zero_reward(self):
        next_state, reward, done = self.environment.step(CarState(0.49, 0.07), make_rng(0))
        self.assertIsNone(next_state)
        self.assertEqual(0.0, reward)
        self.assertTrue(done)

    def test_policy_actions(self):
        actions = {self.environment.policy(CarState(-0.5, 0.0), make_rng(0, 0, i)) for i in range(200)}
        self.assertEqual({REVERSE, NEUTRAL, FORWARD}, actions)

    def test_same_seed_same_dataset(self):
        config = EnvConfig.create("mountain-car", 5, seed=2)
        self.assertEqual(mountain_car_generate(config), mountain_car_generate(config))

    def test_states_stay_in_bounds(self):
        dataset = mountain_car_generate(EnvConfig.create("mountain-car", 20, seed=4))
        self.assertEqual(2, dataset.d)
        self.assertEqual(1.0, dataset.gamma)
        features = dataset.features
        self.assertTrue(np.all((features[:, :, 0] >= -1.2) & (features[:, :, 0] <= 0.5)))
        self.assertTrue(np.all(np.abs(features[:, :, 1]) <= 0.07))
        self.assertTrue(set(dataset.rewards[dataset.mask].tolist()) <= {-1.0, 0.0})

    def test_policy_reaches_goal_within_horizon(self):
        reached = 0
        episodes = 1000
        for i in range(episodes):
            _, _, terminated = self.environment.simulate_episode(make_rng(6, 0, i), 500)
            reached += terminated
        self.assertGreaterEqual(reached / episodes, 0.95)
