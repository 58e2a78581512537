import lstdtools.envs.rng
import lstdtools.envs.base
from lstdtools.envs.rng import make_rng
from lstdtools.envs.base import Environment, env_names, resolve_env_id
from lstdtools.envs.random_walk import RandomWalkEnvironment, random_walk_generate
from lstdtools.envs.game2048 import Game2048Environment, game2048_generate, move
from lstdtools.envs.mountain_car import MountainCarEnvironment, mountain_car_generate
from lstdtools.envs.oracle import (
    EnvConfig,
    EnvOracle,
    EvalState,
    evaluation_oracle,
    generate,
    generate_trial,
    make_environment,
    mc_true_values,
    random_walk_true_values,
)
