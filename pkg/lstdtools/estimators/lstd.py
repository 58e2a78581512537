"""
LSTD(lambda): building the linear system A theta = b from a dataset, solving it, the recursive RLSTD(lambda)
estimator, and the warm start that turns the inverse of the lambda = 0 system into the inverse for any lambda.

Every estimator visits transitions in the same order, trajectory index ascending then step ascending, so that
order-sensitive floating point folds are reproducible.
"""
import logging
from typing import NamedTuple

import numpy as np

from lstdtools.estimators import linalg
from lstdtools.estimators.exceptions import DimensionMismatch, SingularUpdate
from lstdtools.estimators.trajectory import Dataset
from lstdtools.estimators.utilities import checkargs
from lstdtools.estimators.validator import Validator

DEFAULT_RIDGE = 1e-6
DEFAULT_RHO = 1.0


class LinearSystem(NamedTuple):
    a: np.ndarray
    b: np.ndarray
    lambda_: float
    gamma: float
    ridge: float

    @property
    def d(self) -> int:
        return self.b.shape[0]


def _check_parameters(lambda_, gamma, ridge=None):
    Validator(lambda_, "lambda").check_in_range(0.0, 1.0)
    Validator(gamma, "discount factor gamma").check_in_range(0.0, 1.0)
    if ridge is not None:
        Validator(ridge, "ridge").check_at_least(0.0)


def _gamma(dataset, gamma):
    return dataset.gamma if gamma is None else gamma


def _real_steps(dataset):
    # (trajectory, step) pairs of every real transition, in the fixed visiting order
    return [
        (i, step)
        for i, trajectory in enumerate(dataset)
        for step in range(trajectory.n_steps)
    ]


@checkargs
def build_system(
    dataset: Dataset, lambda_, gamma=None, ridge=DEFAULT_RIDGE
) -> LinearSystem:
    """
    Builds A = ridge I + sum_i sum_t z_t w_t' and b = sum_i sum_t z_t r_t.

    Rank-one terms are accumulated one transition at a time. Padded steps contribute exactly zero and are
    skipped.

    Parameters
    ----------
    dataset : Dataset
        The trajectories
    lambda_ : float
        Trace decay in [0, 1]
    gamma : float
        Discount factor, defaults to the dataset's
    ridge : float
        Non-negative multiple of the identity added to A

    Returns
    -------
    LinearSystem
    """

    gamma = _gamma(dataset, gamma)
    _check_parameters(lambda_, gamma, ridge)

    d = dataset.d
    a = ridge * np.eye(d)
    b = np.zeros(d)
    traces = dataset.traces(lambda_, gamma)
    transitions = dataset.transitions(gamma)
    rewards = dataset.rewards
    for i, step in _real_steps(dataset):
        z = traces[i, step]
        a += np.outer(z, transitions[i, step])
        b += z * rewards[i, step]

    return LinearSystem(a, b, float(lambda_), float(gamma), float(ridge))


def lstd_solve(system: LinearSystem) -> np.ndarray:
    """
    Solves A theta = b.

    Raises
    ------
    SingularMatrix
        when A is singular at tolerance, e.g. when the data cannot determine every feature weight. A larger
        ridge makes the system solvable.
    """
    return linalg.solve(system.a, system.b)


@checkargs
def rlstd(
    dataset: Dataset, lambda_, gamma=None, rho=DEFAULT_RHO
) -> np.ndarray:
    """
    Recursive LSTD(lambda): keeps an estimate of A^-1, starting from I / rho, and applies one Sherman-Morrison
    update with u = z_t, v = w_t per transition while accumulating b.

    Parameters
    ----------
    dataset : Dataset
        The trajectories
    lambda_ : float
        Trace decay in [0, 1]
    gamma : float
        Discount factor, defaults to the dataset's
    rho : float
        Strictly positive initial variance parameter

    Returns
    -------
    np.ndarray
        theta

    Raises
    ------
    SingularUpdate
        carrying the trajectory and step of the failing update
    """

    gamma = _gamma(dataset, gamma)
    _check_parameters(lambda_, gamma)
    Validator(rho, "rho").check_positive()

    d = dataset.d
    a_inv = np.eye(d) / rho
    b = np.zeros(d)
    traces = dataset.traces(lambda_, gamma)
    transitions = dataset.transitions(gamma)
    rewards = dataset.rewards
    for i, step in _real_steps(dataset):
        z = traces[i, step]
        try:
            a_inv = linalg._sherman_morrison_step(a_inv, z, transitions[i, step])
        except SingularUpdate as error:
            raise error.located(step=step, trajectory=i) from None
        b += z * rewards[i, step]

    return a_inv @ b


@checkargs
def warm_start_inverse(a0_inv, dataset: Dataset, lambda_, gamma=None) -> np.ndarray:
    """
    Turns the inverse of the lambda = 0 system matrix into the inverse for lambda using

        A_lambda = A_0 + sum_i sum_t (z_t - x_t)(x_t - gamma x_{t+1})'

    folded in with one Sherman-Morrison update per transition.

    Parameters
    ----------
    a0_inv : array_like
        Inverse of build_system(dataset, 0, gamma, ridge).a, ridge included
    dataset : Dataset
        The trajectories A_0 was built from
    lambda_ : float
        Target trace decay
    gamma : float
        Discount factor, defaults to the dataset's

    Returns
    -------
    np.ndarray
        A_lambda^-1, with the same ridge as a0_inv
    """

    gamma = _gamma(dataset, gamma)
    _check_parameters(lambda_, gamma)
    a_inv = linalg.as_square_matrix(a0_inv, "a0_inv")
    if a_inv.shape[0] != dataset.d:
        raise DimensionMismatch(
            f"a0_inv is {a_inv.shape[0]}x{a_inv.shape[0]} but the dataset has d={dataset.d}"
        )

    features = dataset.features[:, :-1]
    differences = dataset.traces(lambda_, gamma) - features
    transitions = dataset.transitions(gamma)

    result = a_inv.copy()
    for i, step in _real_steps(dataset):
        u = differences[i, step]
        # z_0 = x_0 and every trace at lambda = 0, zero terms leave the inverse unchanged
        if not u.any():
            continue
        try:
            result = linalg._sherman_morrison_step(result, u, transitions[i, step])
        except SingularUpdate as error:
            raise error.located(step=step, trajectory=i) from None

    logging.debug(f"warm started inverse for lambda={lambda_}")
    return linalg._check_finite(result, "warm_start_inverse")


@checkargs
def regression_on_returns(dataset: Dataset, ridge=DEFAULT_RIDGE, gamma=None) -> np.ndarray:
    """
    Ridge least-squares fit of the masked Monte-Carlo returns onto the features, solving
    (X X' + ridge I) theta = X G. With the same ridge this equals LSTD(1).
    """

    gamma = _gamma(dataset, gamma)
    mask = dataset.mask
    features = dataset.features[:, :-1][mask]
    returns = dataset.returns(gamma)[mask]
    a = features.T @ features + ridge * np.eye(dataset.d)
    return linalg.solve(a, features.T @ returns)
