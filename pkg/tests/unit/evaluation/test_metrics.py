import os
import unittest

import numpy as np

from lstdtools import logger
from lstdtools.envs.oracle import EnvOracle, EvalState, random_walk_true_values
from lstdtools.estimators.exceptions import MissingOracleValue
from lstdtools.evaluation.metrics import root_msve


def one_state_oracle(value):
    return EnvOracle("random_walk", 1, 0.95, {"s": value}, {"s": 1.0}, {"s": [1.0]})


class RootMsveTests(unittest.TestCase):
    @classmethod
    def setUpClass(cls) -> None:
        cls.logger = logger.LstdLogger(os.getenv("LSTD_LOG_LEVEL", "info"))

    def test_exact_weights_score_zero(self):
        oracle = random_walk_true_values()
        theta = np.array([oracle.value(state) for state in range(5)])
        self.assertAlmostEqual(0.0, root_msve(theta, oracle), places=15)

    def test_single_state(self):
        self.assertEqual(2.0, root_msve(np.array([0.0]), one_state_oracle(2.0)))

    def test_weighted_error(self):
        oracle = EnvOracle(
            "random_walk", 1, 0.95, {0: 1.0, 1: 3.0}, {0: 3.0, 1: 1.0}, {0: [1.0], 1: [1.0]}
        )
        # errors 0 and 2 weighted 0.75 and 0.25
        self.assertAlmostEqual(1.0, root_msve(np.array([1.0]), oracle), places=15)

    def test_invariant_to_state_order_and_split_weights(self):
        oracle = random_walk_true_values()
        theta = np.linspace(0.1, 0.9, 5)
        states = oracle.eval_states()
        reordered = list(reversed(states))
        split = [EvalState(s.key, s.features, s.weight / 2) for s in states for _ in range(2)]
        expected = root_msve(theta, oracle)
        self.assertAlmostEqual(expected, root_msve(theta, oracle, reordered), places=12)
        self.assertAlmostEqual(expected, root_msve(theta, oracle, split), places=12)

    def test_missing_oracle_value(self):
        with self.assertRaises(MissingOracleValue):
            root_msve(np.array([0.0]), one_state_oracle(1.0), [EvalState("other", np.array([1.0]), 1.0)])

    def test_no_states(self):
        with self.assertRaises(ValueError):
            root_msve(np.array([0.0]), one_state_oracle(1.0), [])
