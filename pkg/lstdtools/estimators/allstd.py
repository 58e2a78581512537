"""
Selecting lambda for LSTD(lambda) by leave-one-trajectory-out cross-validation over a finite grid.

``allstd`` inverts the lambda = 0 system once, reaches every other lambda by warm-starting that inverse, and scores
each lambda with downdated folds. ``naive_cv_lstd`` produces the same selection by re-solving LSTD for every fold
of every lambda.
"""
import logging
from typing import NamedTuple, Sequence

import numpy as np

from lstdtools.estimators import linalg
from lstdtools.estimators.exceptions import InsufficientData, NumericalError
from lstdtools.estimators.loto import loto_errors, loto_score, naive_loto_cv
from lstdtools.estimators.lstd import (
    DEFAULT_RIDGE,
    build_system,
    warm_start_inverse,
)
from lstdtools.estimators.thread_pool import ordered_map
from lstdtools.estimators.trajectory import Dataset
from lstdtools.estimators.utilities import checkargs
from lstdtools.estimators.validator import Validator

DEFAULT_LAMBDAS = (0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 1.0)


class LambdaSelection(NamedTuple):
    lambdas: Sequence[float]
    scores: np.ndarray
    chosen: int
    theta: np.ndarray
    fold_failures: int

    @property
    def lambda_star(self) -> float:
        return self.lambdas[self.chosen]

    @property
    def score(self) -> float:
        return float(self.scores[self.chosen])


def check_grid(lambdas) -> tuple:
    """
    Validates a lambda grid: non-empty, strictly increasing, inside [0, 1]
    """

    lambdas = tuple(float(lambda_) for lambda_ in lambdas)
    Validator(lambdas, "lambda grid").check_not_empty().check_strictly_increasing()
    for lambda_ in lambdas:
        Validator(lambda_, "lambda").check_in_range(0.0, 1.0)
    if 1.0 not in lambdas:
        logging.debug("the lambda grid does not contain 1, selection is not guaranteed consistent")
    return lambdas


def _prepare(dataset, lambdas, gamma):
    if dataset.n < 2:
        raise InsufficientData(
            f"selecting lambda needs at least 2 trajectories, the dataset has {dataset.n}"
        )
    return check_grid(lambdas), dataset.gamma if gamma is None else gamma


def _select(lambdas, scores, thetas, fold_failures):
    scores = np.asarray(scores, dtype=np.float64)
    if not np.isfinite(scores).any():
        raise NumericalError(
            f"every lambda in {list(lambdas)} failed cross-validation"
        )
    # argmin returns the first minimum, so ties go to the smallest lambda
    chosen = int(np.argmin(scores))
    logging.debug(
        f"selected lambda={lambdas[chosen]} with score {scores[chosen]:.6g}"
    )
    return LambdaSelection(lambdas, scores, chosen, thetas[chosen], int(fold_failures))


@checkargs
def allstd(
    dataset: Dataset,
    lambdas=DEFAULT_LAMBDAS,
    gamma=None,
    ridge=DEFAULT_RIDGE,
    threads: int = 1,
) -> LambdaSelection:
    """
    Chooses lambda from a grid by leave-one-trajectory-out error, sharing one matrix inversion across the grid.

    Parameters
    ----------
    dataset : Dataset
        At least two trajectories
    lambdas : sequence of float
        Strictly increasing grid inside [0, 1], containing 1 for consistency
    gamma : float
        Discount factor, defaults to the dataset's
    ridge : float
        Non-negative ridge added to every system
    threads : int
        Number of threads evaluating grid points; the result does not depend on it

    Returns
    -------
    LambdaSelection
    """

    lambdas, gamma = _prepare(dataset, lambdas, gamma)

    a0_inv = linalg.invert(build_system(dataset, 0.0, gamma, ridge).a)
    rewards = dataset.rewards

    def evaluate(lambda_):
        traces = dataset.traces(lambda_, gamma)
        b = np.einsum("nhi,nh->i", traces, rewards)
        try:
            a_inv = warm_start_inverse(a0_inv, dataset, lambda_, gamma)
        except NumericalError as error:
            logging.warning(f"lambda={lambda_} could not be warm started: {error}")
            return float("inf"), np.full(dataset.d, np.nan), dataset.n
        errors, failed = loto_errors(a_inv, b, dataset, lambda_, gamma, traces=traces)
        logging.debug(f"lambda={lambda_}: LOTO score {loto_score(errors):.6g}")
        return loto_score(errors), a_inv @ b, int(failed.sum())

    results = ordered_map(evaluate, lambdas, threads)
    scores = [score for score, _, _ in results]
    thetas = [theta for _, theta, _ in results]
    return _select(lambdas, scores, thetas, sum(failures for _, _, failures in results))


@checkargs
def naive_cv_lstd(
    dataset: Dataset,
    lambdas=DEFAULT_LAMBDAS,
    gamma=None,
    ridge=DEFAULT_RIDGE,
    threads: int = 1,
) -> LambdaSelection:
    """
    The same selection as allstd, computed by re-solving LSTD(lambda) for every fold of every lambda.
    """

    lambdas, gamma = _prepare(dataset, lambdas, gamma)

    results = ordered_map(
        lambda lambda_: naive_loto_cv(dataset, lambda_, gamma, ridge), lambdas, threads
    )
    return _select(
        lambdas,
        [result.score for result in results],
        [result.theta for result in results],
        sum(result.fold_failures for result in results),
    )
