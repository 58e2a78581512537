"""
True-value oracles for measuring root MSVE.

The random walk is valued exactly by solving its Bellman equation. 2048 and mountain car are valued by
Monte-Carlo rollouts from states drawn out of a held-out evaluation set, which approximates the on-policy
state distribution.
"""
import logging
from typing import Dict, Hashable, NamedTuple

import numpy as np

from lstdtools.envs.base import resolve_env_id
from lstdtools.envs.game2048 import Game2048Environment
from lstdtools.envs.mountain_car import MountainCarEnvironment
from lstdtools.envs.random_walk import RandomWalkEnvironment
from lstdtools.envs.rng import (
    EVAL_STREAM,
    ROLLOUT_STREAM,
    SUBSAMPLE_STREAM,
    check_seed,
    make_rng,
    trial_seed,
)
from lstdtools.estimators import linalg
from lstdtools.estimators.exceptions import MissingOracleValue
from lstdtools.estimators.trajectory import Dataset
from lstdtools.estimators.thread_pool import ordered_map
from lstdtools.estimators.validator import Validator

ENVIRONMENTS = {
    RandomWalkEnvironment.env_id: RandomWalkEnvironment,
    Game2048Environment.env_id: Game2048Environment,
    MountainCarEnvironment.env_id: MountainCarEnvironment,
}


def make_environment(env_id):
    return ENVIRONMENTS[resolve_env_id(env_id)]()


class EnvConfig(NamedTuple):
    env_id: str
    horizon: int
    n_trajectories: int
    seed: int

    @classmethod
    def create(cls, env_id, n_trajectories, horizon=None, seed=0):
        """
        Validates the parameters and fills the domain's default horizon
        """
        environment = make_environment(env_id)
        horizon = (
            Validator(horizon, "horizon")
            .set_default_value_if_none(environment.default_horizon)
            .check_at_least(1)
            .value
        )
        Validator(n_trajectories, "number of trajectories").check_at_least(1)
        return cls(environment.env_id, int(horizon), int(n_trajectories), check_seed(seed))


def generate(config: EnvConfig, threads=1):
    return make_environment(config.env_id).generate_dataset(
        config.n_trajectories, config.horizon, config.seed, threads=threads
    )


def generate_trial(env_id, n, trial, seed, horizon=None, gamma=None, threads=1):
    """
    The training data of one experimental trial. Trials draw from independent seeds derived from the run seed,
    and for a given trial the dataset of size n is a prefix of the dataset of any larger size.
    """
    dataset = generate(EnvConfig.create(env_id, n, horizon, trial_seed(seed, trial)), threads)
    if gamma is None or gamma == dataset.gamma:
        return dataset
    return Dataset(dataset.trajectories, dataset.d, gamma)


class EvalState(NamedTuple):
    key: Hashable
    features: np.ndarray
    weight: float


class EnvOracle:
    """
    The true values of a set of evaluation states and the weights of those states in the MSVE.

    Parameters
    ----------
    env_id : str
        The environment
    d : int
        Feature dimension
    gamma : float
        Discount factor the values are computed under
    true_value : dict
        state key -> value
    weights : dict
        state key -> non-negative weight; normalised to sum to 1
    features : dict
        state key -> feature vector
    standard_errors : dict
        state key -> standard error of a Monte-Carlo value, 0 for exact values
    """

    def __init__(self, env_id, d, gamma, true_value, weights, features, standard_errors=None):
        self.env_id = env_id
        self.d = int(d)
        self.gamma = float(gamma)
        self.true_value: Dict[Hashable, float] = dict(true_value)
        self.features = {key: np.asarray(value, dtype=np.float64) for key, value in features.items()}

        total = float(sum(weights.values()))
        if total <= 0 or any(weight < 0 for weight in weights.values()):
            raise ValueError("oracle weights must be non-negative with a positive sum")
        self.weights = {key: float(weight) / total for key, weight in weights.items()}
        self.standard_errors = (
            {key: 0.0 for key in self.true_value}
            if standard_errors is None
            else dict(standard_errors)
        )

    def __len__(self):
        return len(self.weights)

    def value(self, key) -> float:
        try:
            return self.true_value[key]
        except KeyError:
            raise MissingOracleValue(key) from None

    def eval_states(self) -> list:
        return [
            EvalState(key, self.features[key], weight)
            for key, weight in self.weights.items()
        ]

    def __repr__(self):
        return f"EnvOracle(env_id={self.env_id}, d={self.d}, gamma={self.gamma}, states={len(self)})"


def random_walk_true_values(gamma=None, horizon=None) -> EnvOracle:
    """
    Exact random-walk values from (I - gamma P) v = r, weighted by the expected number of visits to each state
    within the first ``horizon`` steps from the start state.
    """

    environment = RandomWalkEnvironment()
    gamma = environment.gamma if gamma is None else gamma
    horizon = environment.default_horizon if horizon is None else horizon
    Validator(gamma, "discount factor gamma").check_in_range(0.0, 1.0)
    Validator(horizon, "horizon").check_at_least(1)

    p = environment.transition_matrix()
    values = linalg.solve(np.eye(environment.states) - gamma * p, environment.expected_rewards())

    occupancy = np.zeros(environment.states)
    occupancy[environment.start] = 1.0
    visits = np.zeros(environment.states)
    for _ in range(horizon):
        visits += occupancy
        occupancy = occupancy @ p

    states = range(environment.states)
    return EnvOracle(
        environment.env_id,
        environment.d,
        gamma,
        {state: float(values[state]) for state in states},
        {state: float(visits[state]) for state in states},
        {state: environment.features(state) for state in states},
    )


def mc_true_values(
    env_id, states, rollouts, seed, weights=None, gamma=None, max_steps=None, threads=1
) -> EnvOracle:
    """
    Monte-Carlo values: the mean discounted return of ``rollouts`` independent policy rollouts from each state.

    Parameters
    ----------
    env_id : str
        The environment the states belong to
    states : sequence
        States to value; ``None`` is the terminal state. Repeated states share one value and pool their weight.
    rollouts : int
        Rollouts per state
    seed : int
        Experiment seed; rollouts of state j draw from stream (ROLLOUT_STREAM, j)
    weights : sequence of float
        Weight of each state, uniform by default
    gamma : float
        Discount factor, defaults to the domain's
    max_steps : int
        Rollout length limit, defaults to the domain's rollout_horizon
    threads : int
        Worker threads; the output is the same for any value

    Returns
    -------
    EnvOracle
        with a standard error per state
    """

    environment = make_environment(env_id)
    gamma = environment.gamma if gamma is None else gamma
    Validator(rollouts, "number of rollouts").check_at_least(1)
    states = list(states)
    weights = [1.0] * len(states) if weights is None else list(weights)
    if len(weights) != len(states):
        raise ValueError(f"{len(weights)} weights supplied for {len(states)} states")

    first_index = {}
    for index, state in enumerate(states):
        first_index.setdefault(environment.key(state) if state is not None else None, index)

    def value(index):
        rng = make_rng(seed, ROLLOUT_STREAM, index)
        returns = np.array(
            [
                environment.rollout_return(states[index], rng, gamma, max_steps)
                for _ in range(rollouts)
            ]
        )
        error = returns.std(ddof=1) / np.sqrt(rollouts) if rollouts > 1 else 0.0
        return float(returns.mean()), float(error)

    estimates = dict(
        zip(first_index, ordered_map(value, first_index.values(), threads))
    )

    pooled = {}
    for state, weight in zip(states, weights):
        key = environment.key(state) if state is not None else None
        pooled[key] = pooled.get(key, 0.0) + weight

    features = {
        key: environment.features(states[index]) if key is not None else np.zeros(environment.d)
        for key, index in first_index.items()
    }
    logging.debug(f"valued {len(first_index)} {environment.env_id} states with {rollouts} rollouts each")
    return EnvOracle(
        environment.env_id,
        environment.d,
        gamma,
        {key: estimate for key, (estimate, _) in estimates.items()},
        pooled,
        features,
        {key: error for key, (_, error) in estimates.items()},
    )


def evaluation_oracle(
    env_id,
    seed,
    gamma=None,
    horizon=None,
    eval_trajectories=None,
    eval_states=None,
    rollouts=None,
    threads=1,
) -> EnvOracle:
    """
    The oracle used to score an experiment on a domain.

    The random walk gets its exact values. Other domains simulate ``eval_trajectories`` held-out episodes,
    draw ``eval_states`` of the visited states uniformly over all visits, which samples the on-policy
    distribution, and value each with ``rollouts`` Monte-Carlo rollouts.
    """

    environment = make_environment(env_id)
    horizon = environment.default_horizon if horizon is None else horizon
    if environment.env_id == RandomWalkEnvironment.env_id:
        return random_walk_true_values(gamma, horizon)

    settings = environment.settings
    eval_trajectories = (
        Validator(eval_trajectories, "number of evaluation trajectories")
        .set_default_value_if_none(settings["eval_trajectories"])
        .check_at_least(1)
        .value
    )
    eval_states = (
        Validator(eval_states, "number of evaluation states")
        .set_default_value_if_none(settings["eval_states"])
        .check_at_least(1)
        .value
    )
    rollouts = (
        Validator(rollouts, "number of rollouts")
        .set_default_value_if_none(settings["rollouts"])
        .check_at_least(1)
        .value
    )

    visited = []
    for i in range(eval_trajectories):
        states, _, _ = environment.simulate_episode(make_rng(seed, EVAL_STREAM, i), horizon)
        visited.extend(states)

    rng = make_rng(seed, SUBSAMPLE_STREAM, 0)
    chosen = rng.choice(len(visited), size=min(eval_states, len(visited)), replace=False)
    sample = [visited[index] for index in sorted(chosen)]
    logging.info(
        f"{environment.env_id} oracle: {len(sample)} states out of {len(visited)} visits, {rollouts} rollouts each"
    )
    return mc_true_values(
        environment.env_id, sample, rollouts, seed, gamma=gamma, threads=threads
    )
