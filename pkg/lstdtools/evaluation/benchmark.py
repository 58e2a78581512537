"""
Wall-clock timing of the estimators and fixed-lambda baselines.

Timed regions are serialised through a module lock so that concurrent trials never overlap a measurement.
"""
import logging
import threading
import time
from typing import NamedTuple

import numpy as np
import pandas as pd
from tqdm import tqdm

from lstdtools.envs.oracle import EnvOracle, generate_trial, make_environment
from lstdtools.estimators.allstd import DEFAULT_LAMBDAS, allstd, check_grid, naive_cv_lstd
from lstdtools.estimators.exceptions import InsufficientData, NumericalError
from lstdtools.estimators.lstd import (
    DEFAULT_RHO,
    DEFAULT_RIDGE,
    build_system,
    lstd_solve,
    rlstd,
)
from lstdtools.estimators.thread_pool import ordered_map
from lstdtools.estimators.validator import Validator
from lstdtools.evaluation.metrics import root_msve

MINIMUM_REPEATS = 5
BENCH_METHODS = ("allstd", "naive-cv", "k-x-lstd", "k-x-rlstd")
BENCH_COLUMNS = ["method", "n", "H", "d", "k", "median_seconds"]
SWEEP_COLUMNS = ["method", "n", "trial", "lambda", "root_msve"]

_timing_lock = threading.Lock()


class TimingResult(NamedTuple):
    median_seconds: float
    repeats: int
    meta: dict


def time_method(method, *args, repeats=MINIMUM_REPEATS, warmup=True, meta=None, **kwargs) -> TimingResult:
    """
    Median wall-clock time of method(*args, **kwargs) over ``repeats`` calls.

    Parameters
    ----------
    method : callable
        The code to time
    repeats : int
        Timed calls, at least 5
    warmup : bool
        Make one untimed call first
    meta : dict
        Recorded alongside the timing, e.g. n, H, d, k

    Returns
    -------
    TimingResult
    """

    Validator(repeats, "number of repeats").check_at_least(MINIMUM_REPEATS)
    with _timing_lock:
        if warmup:
            method(*args, **kwargs)
        seconds = []
        for _ in range(repeats):
            start = time.perf_counter()
            method(*args, **kwargs)
            seconds.append(time.perf_counter() - start)
    return TimingResult(float(np.median(seconds)), repeats, dict(meta or {}))


def timed(method, *args, **kwargs):
    """
    Runs method once inside the timing lock, returning (result, seconds)
    """
    with _timing_lock:
        start = time.perf_counter()
        result = method(*args, **kwargs)
        return result, time.perf_counter() - start


def k_x_lstd(dataset, lambdas, ridge=DEFAULT_RIDGE):
    return [lstd_solve(build_system(dataset, lambda_, ridge=ridge)) for lambda_ in lambdas]


def k_x_rlstd(dataset, lambdas, rho=DEFAULT_RHO):
    return [rlstd(dataset, lambda_, rho=rho) for lambda_ in lambdas]


def _bench_call(method, dataset, lambdas, ridge, rho):
    if method == "allstd":
        return lambda: allstd(dataset, lambdas, ridge=ridge)
    if method == "naive-cv":
        return lambda: naive_cv_lstd(dataset, lambdas, ridge=ridge)
    if method == "k-x-lstd":
        return lambda: k_x_lstd(dataset, lambdas, ridge)
    if method == "k-x-rlstd":
        return lambda: k_x_rlstd(dataset, lambdas, rho)
    raise ValueError(f"unknown benchmark method '{method}', valid methods are {', '.join(BENCH_METHODS)}")


def bench_table(
    env_id,
    ns,
    lambdas=DEFAULT_LAMBDAS,
    horizon=None,
    seed=0,
    gamma=None,
    repeats=MINIMUM_REPEATS,
    ridge=DEFAULT_RIDGE,
    rho=DEFAULT_RHO,
    methods=BENCH_METHODS,
    quiet=False,
) -> pd.DataFrame:
    """
    Median training time of each method for every dataset size in ``ns``.

    Returns
    -------
    pd.DataFrame
        columns method, n, H, d, k, median_seconds; rows ordered by n then method
    """

    lambdas = check_grid(lambdas)
    for method in methods:
        Validator(method, "benchmark method").check_allowed_value(list(BENCH_METHODS))

    rows = []
    work = [(n, method) for n in ns for method in methods]
    datasets = {}
    for n, method in tqdm(work, desc="bench", disable=quiet):
        if n not in datasets:
            datasets[n] = generate_trial(env_id, n, 0, seed, horizon, gamma)
        dataset = datasets[n]
        meta = {"n": dataset.n, "H": dataset.horizon, "d": dataset.d, "k": len(lambdas)}
        result = time_method(_bench_call(method, dataset, lambdas, ridge, rho), repeats=repeats, meta=meta)
        logging.debug(f"{method} at n={n}: {result.median_seconds:.4g}s")
        rows.append({"method": method, **result.meta, "median_seconds": result.median_seconds})

    return pd.DataFrame(rows, columns=BENCH_COLUMNS)


def _fixed_lambda_rows(dataset, lambdas, oracle, ridge, rho):
    rows = []
    for lambda_ in lambdas:
        for method, estimate in (
            ("lstd", lambda: lstd_solve(build_system(dataset, lambda_, ridge=ridge))),
            ("rlstd", lambda: rlstd(dataset, lambda_, rho=rho)),
        ):
            try:
                error = root_msve(estimate(), oracle)
            except NumericalError as exception:
                logging.warning(f"{method} with lambda={lambda_} failed at n={dataset.n}: {exception}")
                error = float("nan")
            rows.append({"method": method, "n": dataset.n, "lambda": lambda_, "root_msve": error})
    return rows


def lambda_sweep(
    env_id,
    ns,
    trials,
    oracle: EnvOracle,
    lambdas=DEFAULT_LAMBDAS,
    horizon=None,
    seed=0,
    gamma=None,
    ridge=DEFAULT_RIDGE,
    rho=DEFAULT_RHO,
    threads=1,
    quiet=False,
) -> pd.DataFrame:
    """
    Root MSVE of fixed-lambda LSTD and RLSTD for every lambda, dataset size and trial.

    Trial t at size n uses the same data as trial t of run_trials, so the tables can be compared row for row.

    Returns
    -------
    pd.DataFrame
        columns method, n, trial, lambda, root_msve
    """

    lambdas = check_grid(lambdas)
    make_environment(env_id)
    work = [(n, trial) for n in ns for trial in range(trials)]
    progress = tqdm(total=len(work), desc="sweep", disable=quiet)

    def run(task):
        n, trial = task
        dataset = generate_trial(env_id, n, trial, seed, horizon, gamma)
        rows = [
            {**row, "trial": trial}
            for row in _fixed_lambda_rows(dataset, lambdas, oracle, ridge, rho)
        ]
        progress.update()
        return rows

    results = ordered_map(run, work, threads)
    progress.close()
    return pd.DataFrame(
        [row for rows in results for row in rows], columns=SWEEP_COLUMNS
    ).sort_values(["n", "trial", "method", "lambda"], kind="stable").reset_index(drop=True)


def summarise_sweep(sweep: pd.DataFrame) -> pd.DataFrame:
    """
    Mean root MSVE per (method, n, lambda) over trials, flagging the best and worst lambda of each (method, n).
    Ties go to the smallest lambda.
    """

    summary = (
        sweep.groupby(["method", "n", "lambda"], sort=True)["root_msve"]
        .agg(
            mean_root_msve="mean",
            standard_error=lambda values: values.std(ddof=1) / np.sqrt(values.count()),
            trials="count",
        )
        .reset_index()
    )
    groups = summary.dropna(subset=["mean_root_msve"]).groupby(["method", "n"], sort=True)[
        "mean_root_msve"
    ]
    summary["best"] = summary.index.isin(groups.idxmin())
    summary["worst"] = summary.index.isin(groups.idxmax())
    return summary


def best_worst_fixed_lambda(
    datasets, oracle: EnvOracle, lambdas=DEFAULT_LAMBDAS, ridge=DEFAULT_RIDGE, rho=DEFAULT_RHO
) -> pd.DataFrame:
    """
    Runs LSTD and RLSTD at every lambda on each trial's dataset and summarises them with summarise_sweep.

    Parameters
    ----------
    datasets : sequence of Dataset
        One dataset per trial, at least two
    oracle : EnvOracle
        True values
    lambdas : sequence of float
        The grid

    Returns
    -------
    pd.DataFrame
        columns method, n, lambda, mean_root_msve, standard_error, trials, best, worst
    """

    datasets = list(datasets)
    if len(datasets) < 2:
        raise InsufficientData(f"comparing fixed lambdas needs at least 2 trials, found {len(datasets)}")
    lambdas = check_grid(lambdas)
    rows = [
        {**row, "trial": trial}
        for trial, dataset in enumerate(datasets)
        for row in _fixed_lambda_rows(dataset, lambdas, oracle, ridge, rho)
    ]
    return summarise_sweep(pd.DataFrame(rows, columns=SWEEP_COLUMNS))
