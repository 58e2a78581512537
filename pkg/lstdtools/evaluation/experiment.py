"""
The experiment protocol: independent trials, each training every method on the same freshly generated dataset
and scoring the learned weights against the domain's oracle.
"""
import logging

import pandas as pd
from tqdm import tqdm

from lstdtools.envs.oracle import EnvOracle, generate_trial, make_environment
from lstdtools.estimators.allstd import DEFAULT_LAMBDAS, allstd, check_grid, naive_cv_lstd
from lstdtools.estimators.exceptions import NumericalError
from lstdtools.estimators.lstd import (
    DEFAULT_RHO,
    DEFAULT_RIDGE,
    build_system,
    lstd_solve,
    rlstd,
)
from lstdtools.estimators.thread_pool import ordered_map
from lstdtools.estimators.validator import Validator
from lstdtools.evaluation.benchmark import timed
from lstdtools.evaluation.metrics import EvalReport, root_msve

RUN_METHODS = ("allstd", "naive-cv", "lstd-fixed", "rlstd-fixed")
RUN_COLUMNS = ["trial", "method", "n", "lambda_used", "score", "root_msve", "seconds"]


def _fit(method, dataset, lambdas, lambda_, ridge, rho):
    # returns (theta, lambda used, cross-validation score)
    if method == "allstd":
        selection = allstd(dataset, lambdas, ridge=ridge)
        return selection.theta, selection.lambda_star, selection.score
    if method == "naive-cv":
        selection = naive_cv_lstd(dataset, lambdas, ridge=ridge)
        return selection.theta, selection.lambda_star, selection.score
    if method == "lstd-fixed":
        return lstd_solve(build_system(dataset, lambda_, ridge=ridge)), lambda_, float("nan")
    if method == "rlstd-fixed":
        return rlstd(dataset, lambda_, rho=rho), lambda_, float("nan")
    raise ValueError(f"unknown method '{method}', valid methods are {', '.join(RUN_METHODS)}")


def run_method(
    method,
    dataset,
    oracle: EnvOracle = None,
    lambdas=DEFAULT_LAMBDAS,
    lambda_=None,
    ridge=DEFAULT_RIDGE,
    rho=DEFAULT_RHO,
    trial=0,
    omit_timing=False,
) -> list:
    """
    Trains one method on a dataset and scores it.

    The selecting methods, allstd and naive-cv, produce one report. The fixed-lambda methods produce one report for
    ``lambda_``, or one per grid point when ``lambda_`` is None.

    Parameters
    ----------
    method : str
        One of RUN_METHODS
    dataset : Dataset
        Training data
    oracle : EnvOracle
        True values; root_msve is NaN without one
    lambdas : sequence of float
        The grid
    lambda_ : float
        Fixed lambda for lstd-fixed and rlstd-fixed
    ridge : float
        LSTD ridge
    rho : float
        RLSTD initial variance parameter
    trial : int
        Trial index recorded in the reports
    omit_timing : bool
        Report 0 seconds so that outputs are reproducible byte for byte

    Returns
    -------
    list of EvalReport

    Raises
    ------
    NumericalError
        naming the trial, method and lambda that failed
    """

    Validator(method, "method").check_allowed_value(list(RUN_METHODS))
    if method in ("allstd", "naive-cv"):
        fixed = [None]
    else:
        fixed = check_grid(lambdas) if lambda_ is None else [float(lambda_)]

    reports = []
    for value in fixed:
        try:
            (theta, lambda_used, score), seconds = timed(
                _fit, method, dataset, lambdas, value, ridge, rho
            )
        except NumericalError as exception:
            where = f"trial {trial}, n={dataset.n}, method {method}" + (
                f", lambda={value}" if value is not None else ""
            )
            raise NumericalError(f"{where}: {exception}") from exception

        error = root_msve(theta, oracle) if oracle is not None else float("nan")
        reports.append(
            EvalReport(
                trial,
                method,
                dataset.n,
                float(lambda_used),
                float(score),
                error,
                0.0 if omit_timing else seconds,
            )
        )
        logging.debug(
            f"trial {trial} {method}: lambda={lambda_used} root MSVE={error:.6g}"
        )
    return reports


def reports_to_df(reports) -> pd.DataFrame:
    return pd.DataFrame(
        [{column: getattr(report, column) for column in RUN_COLUMNS} for report in reports],
        columns=RUN_COLUMNS,
    )


def run_trials(
    env_id,
    ns,
    trials,
    oracle: EnvOracle,
    methods=("allstd", "naive-cv"),
    lambdas=DEFAULT_LAMBDAS,
    lambda_=None,
    horizon=None,
    seed=0,
    gamma=None,
    ridge=DEFAULT_RIDGE,
    rho=DEFAULT_RHO,
    threads=1,
    omit_timing=False,
    quiet=False,
) -> pd.DataFrame:
    """
    Runs every method on ``trials`` independent datasets for each size in ``ns``.

    Trials run concurrently on ``threads`` threads while the timed regions are serialised. The table is the same for
    any thread count apart from the seconds column.

    Returns
    -------
    pd.DataFrame
        columns trial, method, n, lambda_used, score, root_msve, seconds; rows ordered by n, trial, then method in
        the order given
    """

    make_environment(env_id)
    Validator(trials, "number of trials").check_at_least(1)
    lambdas = check_grid(lambdas)
    for method in methods:
        Validator(method, "method").check_allowed_value(list(RUN_METHODS))

    work = [(n, trial) for n in ns for trial in range(trials)]
    progress = tqdm(total=len(work), desc=f"{env_id} trials", disable=quiet)

    def run(task):
        n, trial = task
        dataset = generate_trial(env_id, n, trial, seed, horizon, gamma)
        reports = [
            report
            for method in methods
            for report in run_method(
                method, dataset, oracle, lambdas, lambda_, ridge, rho, trial, omit_timing
            )
        ]
        progress.update()
        return reports

    results = ordered_map(run, work, threads)
    progress.close()
    logging.info(f"completed {len(work)} trials on {env_id}")
    return reports_to_df([report for reports in results for report in reports])
