"""
Leave-one-trajectory-out cross-validation of LSTD(lambda).

The efficient path inverts the full-data system once and removes each trajectory's rank-one terms from that
inverse with Sherman-Morrison downdates. The naive path rebuilds and re-solves the system without each
trajectory; it exists as a correctness oracle and as a timing baseline.
"""
import logging
from typing import NamedTuple

import numpy as np

from lstdtools.estimators import linalg
from lstdtools.estimators.exceptions import (
    DimensionMismatch,
    EmptyTrajectory,
    InsufficientData,
    NumericalError,
)
from lstdtools.estimators.lstd import DEFAULT_RIDGE, build_system, lstd_solve
from lstdtools.estimators.trajectory import (
    Dataset,
    Trajectory,
    eligibility_traces,
    monte_carlo_returns,
)
from lstdtools.estimators.utilities import checkargs


class LOTOResult(NamedTuple):
    theta: np.ndarray
    errors: np.ndarray
    lambda_: float
    failed: np.ndarray

    @property
    def fold_failures(self) -> int:
        return int(self.failed.sum())

    @property
    def score(self) -> float:
        return loto_score(self.errors)


def loto_score(errors) -> float:
    """
    Mean of the finite fold errors; +inf when every fold failed
    """
    errors = np.asarray(errors, dtype=np.float64)
    finite = errors[np.isfinite(errors)]
    if finite.size == 0:
        return float("inf")
    return float(finite.mean())


def _require_folds(dataset):
    if dataset.n < 2:
        raise InsufficientData(
            f"leave-one-trajectory-out needs at least 2 trajectories, the dataset has {dataset.n}"
        )


def downdate_inverse(a_inv, traj: Trajectory, lambda_, gamma) -> np.ndarray:
    """
    Removes one trajectory's contribution from A^-1, returning C_(i)^-1 where
    C_(i) = A - sum_t z_t (x_t - gamma x_{t+1})'.

    Parameters
    ----------
    a_inv : array_like
        Inverse of the full-data system matrix, ridge included
    traj : Trajectory
        The trajectory to remove
    lambda_ : float
        Trace decay the system was built with
    gamma : float
        Discount factor the system was built with

    Returns
    -------
    np.ndarray
        C_(i)^-1

    Raises
    ------
    SingularUpdate
        when removing the trajectory leaves the system numerically singular
    """

    traces = eligibility_traces(traj, lambda_, gamma)
    downdates = -traj.transitions(gamma)
    steps = traj.n_steps
    return linalg.recursive_sherman_morrison(
        a_inv, zip(traces[:steps], downdates[:steps])
    )


def loto_vector(b, traj: Trajectory, lambda_, gamma) -> np.ndarray:
    """
    Returns y_(i) = b - sum_t z_t r_t, the right-hand side without trajectory i
    """
    b = np.asarray(b, dtype=np.float64)
    if b.shape != (traj.d,):
        raise DimensionMismatch(
            f"b must have dimension {traj.d}, found shape {b.shape}"
        )
    return b - eligibility_traces(traj, lambda_, gamma).T @ traj.rewards


def loto_error(theta_i, traj: Trajectory, gamma) -> float:
    """
    Mean squared gap between the held-out predictions x_t' theta_(i) and the Monte-Carlo returns, over the real
    steps of the trajectory.

    Raises
    ------
    EmptyTrajectory
        when the trajectory has no real steps
    """

    theta_i = np.asarray(theta_i, dtype=np.float64)
    if theta_i.shape != (traj.d,):
        raise DimensionMismatch(
            f"theta must have dimension {traj.d}, found shape {theta_i.shape}"
        )
    steps = traj.n_steps
    if steps == 0:
        raise EmptyTrajectory(f"trajectory {traj.id} has no real steps")
    predictions = traj.features[:steps] @ theta_i
    residuals = predictions - monte_carlo_returns(traj, gamma)[:steps]
    return float(np.mean(residuals ** 2))


def loto_errors(a_inv, b, dataset: Dataset, lambda_, gamma, traces=None):
    """
    Computes every fold's held-out error from the full-data inverse in one pass, downdating all n copies of
    A^-1 together.

    Parameters
    ----------
    a_inv : array_like
        Inverse of the full-data system matrix
    b : array_like
        Full-data right-hand side
    dataset : Dataset
        The trajectories
    lambda_ : float
        Trace decay
    gamma : float
        Discount factor
    traces : array_like
        Optional precomputed (n, H, d) traces

    Returns
    -------
    errors : np.ndarray
        (n,) fold errors, +inf for failed folds
    failed : np.ndarray
        (n,) booleans flagging folds whose downdate hit a vanishing denominator
    """

    if traces is None:
        traces = dataset.traces(lambda_, gamma)
    mask = dataset.mask
    steps = mask.sum(axis=1)
    if np.any(steps == 0):
        empty = int(np.argmin(steps))
        raise EmptyTrajectory(f"trajectory {dataset[empty].id} has no real steps")

    masked_traces = traces * mask[:, :, None]
    downdates = -dataset.transitions(gamma)
    inverses, failed_step = linalg.recursive_sherman_morrison_batch(
        a_inv, masked_traces, downdates
    )
    failed = failed_step >= 0

    held_out = np.asarray(b)[None, :] - np.einsum(
        "nhi,nh->ni", masked_traces, dataset.rewards
    )
    thetas = np.einsum("nij,nj->ni", inverses, held_out)
    predictions = np.einsum("nhi,ni->nh", dataset.features[:, :-1], thetas)
    residuals = (predictions - dataset.returns(gamma)) * mask
    with np.errstate(over="ignore", invalid="ignore"):
        errors = (residuals ** 2).sum(axis=1) / steps
    errors[failed | ~np.isfinite(errors)] = np.inf
    failed |= ~np.isfinite(thetas).all(axis=1)

    for i in np.flatnonzero(failed):
        logging.warning(
            f"lambda={lambda_}: fold {i} could not be downdated "
            f"(step {failed_step[i]}), its error is reported as infinite"
        )
    return errors, failed


@checkargs
def lstd_loto_cv(
    dataset: Dataset, lambda_, gamma=None, ridge=DEFAULT_RIDGE
) -> LOTOResult:
    """
    LSTD(lambda) together with its leave-one-trajectory-out errors at the cost of a single LSTD solve.

    Parameters
    ----------
    dataset : Dataset
        At least two trajectories
    lambda_ : float
        Trace decay in [0, 1]
    gamma : float
        Discount factor, defaults to the dataset's
    ridge : float
        Non-negative ridge

    Returns
    -------
    LOTOResult
        full-data theta and per-trajectory errors
    """

    _require_folds(dataset)
    gamma = dataset.gamma if gamma is None else gamma
    system = build_system(dataset, lambda_, gamma, ridge)
    a_inv = linalg.invert(system.a)
    theta = lstd_solve(system)
    errors, failed = loto_errors(a_inv, system.b, dataset, lambda_, gamma)
    return LOTOResult(theta, errors, float(lambda_), failed)


@checkargs
def naive_loto_cv(
    dataset: Dataset, lambda_, gamma=None, ridge=DEFAULT_RIDGE
) -> LOTOResult:
    """
    Leave-one-trajectory-out errors by rebuilding and solving LSTD(lambda) without each trajectory.
    """

    _require_folds(dataset)
    gamma = dataset.gamma if gamma is None else gamma
    theta = lstd_solve(build_system(dataset, lambda_, gamma, ridge))

    errors = np.zeros(dataset.n)
    failed = np.zeros(dataset.n, dtype=bool)
    for i, trajectory in enumerate(dataset):
        try:
            theta_i = lstd_solve(build_system(dataset.without(i), lambda_, gamma, ridge))
            errors[i] = loto_error(theta_i, trajectory, gamma)
        except NumericalError as error:
            logging.warning(
                f"lambda={lambda_}: fold {i} could not be solved ({error}), its error is reported as infinite"
            )
            errors[i] = np.inf
            failed[i] = True
    return LOTOResult(theta, errors, float(lambda_), failed)
