import logging
import os
import unittest

from lstdtools import logger
from lstdtools.envs.oracle import evaluation_oracle, generate_trial, random_walk_true_values
from lstdtools.evaluation.benchmark import (
    BENCH_METHODS,
    bench_table,
    best_worst_fixed_lambda,
    lambda_sweep,
    summarise_sweep,
)


def best_lstd_row(summary):
    return summary[(summary["method"] == "lstd") & summary["best"]].iloc[0]


class FixedLambdaTests(unittest.TestCase):
    @classmethod
    def setUpClass(cls) -> None:
        cls.logger = logger.LstdLogger(os.getenv("LSTD_LOG_LEVEL", "info"))

    def test_random_walk_best_lambda_bootstraps_at_small_n(self):
        datasets = [generate_trial("random-walk", 10, trial, 0) for trial in range(20)]
        summary = best_worst_fixed_lambda(datasets, random_walk_true_values())
        self.assertLess(best_lstd_row(summary)["lambda"], 1.0)

    def test_mountain_car_best_lambda_is_monte_carlo(self):
        oracle = evaluation_oracle("mountain-car", 0)
        datasets = [generate_trial("mountain-car", 50, trial, 0) for trial in range(5)]
        summary = best_worst_fixed_lambda(datasets, oracle)
        logging.info(summary[summary["method"] == "lstd"][["lambda", "mean_root_msve"]].to_string())
        self.assertEqual(1.0, best_lstd_row(summary)["lambda"])

    def test_random_walk_error_is_small_with_many_trajectories(self):
        oracle = random_walk_true_values(horizon=100)
        sweep = lambda_sweep(
            "random-walk", [1000], 3, oracle, lambdas=(0.0, 0.5, 0.9, 1.0), horizon=100, quiet=True
        )
        self.assertLess(best_lstd_row(summarise_sweep(sweep))["mean_root_msve"], 0.05)


class TrainingTimeTests(unittest.TestCase):
    @classmethod
    def setUpClass(cls) -> None:
        cls.logger = logger.LstdLogger(os.getenv("LSTD_LOG_LEVEL", "info"))

    def test_training_time_grows_with_trajectories(self):
        table = bench_table("random-walk", [20, 40, 80], lambdas=(0.0, 1.0), quiet=True)
        for method in BENCH_METHODS:
            seconds = table[table["method"] == method].sort_values("n")["median_seconds"].tolist()
            self.assertEqual(3, len(seconds))
            for smaller, larger in zip(seconds, seconds[1:]):
                self.assertLessEqual(smaller, larger, method)
