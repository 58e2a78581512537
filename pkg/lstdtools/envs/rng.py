"""
Seeded random number generators.

Every trajectory, rollout and subsample draws from its own stream, keyed by (seed, stream, index) through
numpy's SeedSequence spawn keys over the counter-based Philox bit generator. Adding trajectories never changes
the ones generated before them.
"""
import numpy as np

TRAIN_STREAM = 0
EVAL_STREAM = 1
ROLLOUT_STREAM = 2
SUBSAMPLE_STREAM = 3

SEED_LIMIT = 2 ** 64


def check_seed(seed) -> int:
    seed = int(seed)
    if not 0 <= seed < SEED_LIMIT:
        raise ValueError(f"seed must be a 64-bit unsigned integer, you supplied {seed}")
    return seed


def make_rng(seed, stream=TRAIN_STREAM, index=0) -> np.random.Generator:
    """
    Builds the generator for one (stream, index) pair of a seed.

    Parameters
    ----------
    seed : int
        64-bit unsigned experiment seed
    stream : int
        what the numbers are used for, one of the *_STREAM constants
    index : int
        trajectory, rollout or state index within the stream

    Returns
    -------
    np.random.Generator
    """

    sequence = np.random.SeedSequence(check_seed(seed), spawn_key=(int(stream), int(index)))
    return np.random.Generator(np.random.Philox(sequence))


def trial_seed(seed, trial) -> int:
    """
    Derives the seed of one experimental trial from the run seed
    """
    sequence = np.random.SeedSequence(check_seed(seed), spawn_key=(SUBSAMPLE_STREAM + 1, int(trial)))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])
