"""
A chain of five states between two absorbing exits. The policy moves left or right with equal probability from
the middle state onward; leaving the chain on the right pays +1, leaving it on the left pays 0, and both end the
episode. Features are 1-hot, so the value function is exactly representable.
"""
import numpy as np

from lstdtools.envs.base import Environment


class RandomWalkEnvironment(Environment):
    env_id = "random_walk"

    def __init__(self, settings=None):
        super().__init__(settings)
        self.states = int(self.settings["states"])
        self.start = int(self.settings["start"])
        self.exit_reward = float(self.settings["exit_reward"])

    def reset(self, rng):
        return self.start

    def step(self, state, rng):
        next_state = state + (1 if rng.integers(2) else -1)
        if next_state >= self.states:
            return None, self.exit_reward, True
        if next_state < 0:
            return None, 0.0, True
        return next_state, 0.0, False

    def features(self, state):
        features = np.zeros(self.d)
        features[state] = 1.0
        return features

    def transition_matrix(self):
        """
        P between non-terminal states under the policy; rows sum to less than 1 at the ends of the chain
        """
        p = np.zeros((self.states, self.states))
        for state in range(self.states):
            if state > 0:
                p[state, state - 1] = 0.5
            if state < self.states - 1:
                p[state, state + 1] = 0.5
        return p

    def expected_rewards(self):
        rewards = np.zeros(self.states)
        rewards[-1] = 0.5 * self.exit_reward
        return rewards


def random_walk_generate(config):
    """
    Generates the random-walk Dataset described by an EnvConfig
    """
    return RandomWalkEnvironment().generate_dataset(
        config.n_trajectories, config.horizon, config.seed
    )
