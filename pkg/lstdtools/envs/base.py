"""
The shared episode machinery of the benchmark domains. A domain supplies its start distribution, one step of its
dynamics under the fixed data-generating policy, and its feature map; simulation, dataset generation and
Monte-Carlo rollouts are implemented once here.
"""
import abc
import logging

import numpy as np

from lstdtools.envs.rng import TRAIN_STREAM, make_rng
from lstdtools.estimators.thread_pool import ordered_map
from lstdtools.estimators.trajectory import Dataset, Trajectory
from lstdtools.estimators.utilities import load_json_file
from lstdtools.estimators.validator import Validator

SETTINGS_FILE = "envs/config/domain_settings.json"


def domain_settings() -> dict:
    return load_json_file(SETTINGS_FILE)


def env_names() -> list:
    """
    The command line names of every environment
    """
    return [settings["aliases"][0] for settings in domain_settings().values()]


def resolve_env_id(name: str) -> str:
    """
    Maps an environment name or alias, e.g. "random-walk", to its identifier, e.g. "random_walk".

    Raises
    ------
    ValueError
        naming the valid environments when the name is unknown
    """

    wanted = str(name).strip().lower()
    for env_id, settings in domain_settings().items():
        if wanted == env_id or wanted in settings["aliases"]:
            return env_id
    raise ValueError(
        f"unknown environment '{name}', valid environments are {', '.join(env_names())}"
    )


class Environment(abc.ABC):
    """
    An episodic domain together with the policy that generates its data.

    States are opaque to this class. ``step`` returns ``None`` as the next state once the episode has terminated.
    """

    env_id = None

    def __init__(self, settings=None):
        self.settings = (
            domain_settings()[self.env_id] if settings is None else dict(settings)
        )
        self.gamma = float(self.settings["gamma"])
        self.default_horizon = int(self.settings["horizon"])
        self.d = int(self.settings["d"])

    @abc.abstractmethod
    def reset(self, rng: np.random.Generator):
        """Samples a start state"""

    @abc.abstractmethod
    def step(self, state, rng: np.random.Generator):
        """Samples an action from the policy and applies it, returning (next_state, reward, done)"""

    @abc.abstractmethod
    def features(self, state) -> np.ndarray:
        """The d-dimensional feature vector of a non-terminal state"""

    def key(self, state):
        """A hashable canonical encoding of a state"""
        return state

    def simulate_episode(self, rng: np.random.Generator, horizon, state=None):
        """
        Runs the policy for at most ``horizon`` steps.

        Returns
        -------
        states : list
            the visited non-terminal states, one per step taken
        rewards : list
            the reward of each step
        terminated : bool
            whether the episode ended before the horizon cut it off
        """

        state = self.reset(rng) if state is None else state
        states, rewards = [], []
        terminated = False
        while len(states) < horizon:
            next_state, reward, done = self.step(state, rng)
            states.append(state)
            rewards.append(reward)
            if done:
                terminated = True
                break
            state = next_state
        return states, rewards, terminated

    def trajectory(self, id, rng: np.random.Generator, horizon) -> Trajectory:
        states, rewards, _ = self.simulate_episode(rng, horizon)
        features = [self.features(state) for state in states]
        return Trajectory.from_episode(id, features, rewards, horizon, d=self.d)

    def generate_dataset(
        self, n, horizon=None, seed=0, stream=TRAIN_STREAM, threads=1
    ) -> Dataset:
        """
        Generates n trajectories; trajectory i depends only on (seed, stream, i).

        Parameters
        ----------
        n : int
            Number of trajectories
        horizon : int
            H, defaults to the domain's setting
        seed : int
            Experiment seed
        stream : int
            Random stream, training data by default
        threads : int
            Worker threads; the output is the same for any value

        Returns
        -------
        Dataset
        """

        horizon = (
            Validator(horizon, "horizon")
            .set_default_value_if_none(self.default_horizon)
            .check_at_least(1)
            .value
        )
        Validator(n, "number of trajectories").check_at_least(0)

        trajectories = ordered_map(
            lambda i: self.trajectory(i, make_rng(seed, stream, i), horizon),
            range(n),
            threads,
        )
        logging.debug(f"generated {n} {self.env_id} trajectories with H={horizon}")
        return Dataset(trajectories, self.d, self.gamma)

    def rollout_return(self, state, rng: np.random.Generator, gamma=None, max_steps=None) -> float:
        """
        Discounted return of one policy rollout from ``state``, run until termination or ``max_steps`` steps.
        A terminal state (``None``) is worth 0.
        """

        if state is None:
            return 0.0
        gamma = self.gamma if gamma is None else gamma
        max_steps = (
            int(self.settings["rollout_horizon"]) if max_steps is None else max_steps
        )
        _, rewards, _ = self.simulate_episode(rng, max_steps, state=state)
        discounts = gamma ** np.arange(len(rewards))
        return float(discounts @ np.asarray(rewards, dtype=np.float64)) if rewards else 0.0
