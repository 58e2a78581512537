"""
Mountain car with the textbook dynamics, driven by an energy-pumping policy with 25% uniform exploration.
Features are the raw (position, velocity) pair.
"""
import math
from typing import NamedTuple

import numpy as np

from lstdtools.envs.base import Environment

REVERSE = -1
NEUTRAL = 0
FORWARD = 1
ACTIONS = (REVERSE, NEUTRAL, FORWARD)


class CarState(NamedTuple):
    position: float
    velocity: float


class MountainCarEnvironment(Environment):
    env_id = "mountain_car"

    def __init__(self, settings=None):
        super().__init__(settings)
        s = self.settings
        self.min_position = float(s["min_position"])
        self.max_position = float(s["max_position"])
        self.max_speed = float(s["max_speed"])
        self.goal_position = float(s["goal_position"])
        self.force = float(s["force"])
        self.gravity = float(s["gravity"])
        self.start_low = float(s["start_low"])
        self.start_high = float(s["start_high"])
        self.random_action_probability = float(s["random_action_probability"])
        self.policy_slope = float(s["policy_slope"])
        self.policy_offset = float(s["policy_offset"])

    def reset(self, rng):
        return CarState(float(rng.uniform(self.start_low, self.start_high)), 0.0)

    def policy(self, state, rng) -> int:
        if rng.random() < self.random_action_probability:
            return ACTIONS[rng.integers(len(ACTIONS))]
        if state.velocity > self.policy_slope * state.position + self.policy_offset:
            return FORWARD
        return REVERSE

    def dynamics(self, state, action) -> CarState:
        velocity = state.velocity + self.force * action - self.gravity * math.cos(3 * state.position)
        velocity = min(max(velocity, -self.max_speed), self.max_speed)
        position = min(max(state.position + velocity, self.min_position), self.max_position)
        return CarState(position, velocity)

    def step(self, state, rng):
        next_state = self.dynamics(state, self.policy(state, rng))
        if next_state.position >= self.goal_position:
            return None, 0.0, True
        return next_state, -1.0, False

    def features(self, state):
        return np.array([state.position, state.velocity])

    def key(self, state):
        return (state.position, state.velocity)


def mountain_car_generate(config):
    """
    Generates the mountain-car Dataset described by an EnvConfig
    """
    return MountainCarEnvironment().generate_dataset(
        config.n_trajectories, config.horizon, config.seed
    )
