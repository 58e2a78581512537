"""
Root mean squared value error of a linear value estimate against an oracle.
"""
from typing import NamedTuple

import numpy as np

from lstdtools.envs.oracle import EnvOracle


class EvalReport(NamedTuple):
    trial: int
    method: str
    n: int
    lambda_used: float
    score: float
    root_msve: float
    seconds: float


def root_msve(theta, oracle: EnvOracle, eval_states=None) -> float:
    """
    sqrt( sum_s w(s) (v(s) - phi(s)' theta)^2 ) with the weights of the evaluation states normalised to sum to 1.

    Parameters
    ----------
    theta : array_like
        Weights of the linear value estimate
    oracle : EnvOracle
        True values
    eval_states : sequence of EvalState
        States to score, the oracle's own evaluation states by default

    Returns
    -------
    float

    Raises
    ------
    MissingOracleValue
        when the oracle has no value for an evaluation state
    """

    theta = np.asarray(theta, dtype=np.float64)
    states = oracle.eval_states() if eval_states is None else list(eval_states)
    if not states:
        raise ValueError("root MSVE needs at least one evaluation state")

    true_values = np.array([oracle.value(state.key) for state in states])
    features = np.stack([np.asarray(state.features, dtype=np.float64) for state in states])
    weights = np.array([state.weight for state in states], dtype=np.float64)
    if np.any(weights < 0) or weights.sum() <= 0:
        raise ValueError("evaluation state weights must be non-negative with a positive sum")

    errors = true_values - features @ theta
    return float(np.sqrt(weights @ errors ** 2 / weights.sum()))
