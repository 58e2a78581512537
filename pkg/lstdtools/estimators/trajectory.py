"""
Fixed-horizon trajectories, datasets of trajectories, eligibility traces, Monte-Carlo returns and the JSONL
trajectory file format.

A trajectory of horizon H holds H+1 feature vectors x_0..x_H, H rewards r_0..r_{H-1} and a mask of H booleans.
Episodes that terminate before H are padded: padded steps have zero features, zero reward and mask False.
The feature vector following the last step, x_H, is always the zero vector for generated data.
"""
import io
import json
import logging

import numpy as np
import scipy.signal

from lstdtools.estimators.exceptions import (
    DimensionMismatch,
    InconsistentDimension,
    IndexOutOfRange,
    ParseError,
)
from lstdtools.estimators.utilities import checkargs
from lstdtools.estimators.validator import Validator

FILE_FORMAT = "lstdtools-trajectories"
FILE_VERSION = 1


def _read_only(array):
    array.setflags(write=False)
    return array


class Trajectory:
    """
    One episode of (feature vector, reward) steps padded to a fixed horizon.

    Parameters
    ----------
    id : int
        Identifier of the trajectory
    features : array_like
        (H+1, d) feature vectors
    rewards : array_like
        (H,) rewards
    mask : array_like
        (H,) booleans, True for real steps. Defaults to every step being real.
    """

    __slots__ = ("id", "features", "rewards", "mask")

    def __init__(self, id, features, rewards, mask=None):
        features = np.array(features, dtype=np.float64)
        rewards = np.array(rewards, dtype=np.float64)
        if features.ndim != 2:
            raise DimensionMismatch(
                f"trajectory {id}: features must be a (H+1, d) array, found shape {features.shape}"
            )
        if rewards.ndim != 1 or features.shape[0] != rewards.shape[0] + 1:
            raise DimensionMismatch(
                f"trajectory {id}: expected {features.shape[0] - 1} rewards for {features.shape[0]} feature vectors, "
                f"found shape {rewards.shape}"
            )
        if mask is None:
            mask = np.ones(rewards.shape[0], dtype=bool)
        mask = np.array(mask, dtype=bool)
        if mask.shape != rewards.shape:
            raise DimensionMismatch(
                f"trajectory {id}: mask must hold {rewards.shape[0]} entries, found shape {mask.shape}"
            )
        if not (np.all(np.isfinite(features)) and np.all(np.isfinite(rewards))):
            raise ValueError(f"trajectory {id}: features and rewards must be finite")
        # once a step is padding every later step is padding
        if np.any(mask[1:] & ~mask[:-1]):
            raise ValueError(f"trajectory {id}: mask must be a run of True followed by False")
        padded = ~mask
        if np.any(features[:-1][padded] != 0.0) or np.any(rewards[padded] != 0.0):
            raise ValueError(
                f"trajectory {id}: padded steps must have zero features and zero reward"
            )
        if padded.any() and np.any(features[-1] != 0.0):
            raise ValueError(
                f"trajectory {id}: the feature vector after termination must be zero"
            )

        self.id = int(id)
        self.features = _read_only(features)
        self.rewards = _read_only(rewards)
        self.mask = _read_only(mask)

    @classmethod
    def from_episode(cls, id, features, rewards, horizon, d=None):
        """
        Pads a variable-length episode to a fixed horizon.

        Parameters
        ----------
        id : int
            Identifier of the trajectory
        features : sequence
            feature vectors of the T <= horizon visited states
        rewards : sequence
            the T rewards received
        horizon : int
            H
        d : int
            feature dimension, needed only when the episode is empty

        Returns
        -------
        Trajectory
        """

        features = np.asarray(features, dtype=np.float64)
        rewards = np.asarray(rewards, dtype=np.float64)
        steps = rewards.shape[0]
        if steps > horizon or features.shape[0] != steps:
            raise DimensionMismatch(
                f"episode {id} has {features.shape[0]} states and {steps} rewards for horizon {horizon}"
            )
        if d is None:
            d = features.shape[1] if features.ndim == 2 else 0
        features = features.reshape(steps, d)
        padded_features = np.zeros((horizon + 1, d))
        padded_features[:steps] = features
        padded_rewards = np.zeros(horizon)
        padded_rewards[:steps] = rewards
        mask = np.arange(horizon) < steps
        return cls(id, padded_features, padded_rewards, mask)

    @property
    def horizon(self) -> int:
        return self.rewards.shape[0]

    @property
    def d(self) -> int:
        return self.features.shape[1]

    @property
    def n_steps(self) -> int:
        return int(self.mask.sum())

    def transitions(self, gamma) -> np.ndarray:
        """
        Returns the (H, d) array of w_t = x_t - gamma x_{t+1}
        """
        return self.features[:-1] - gamma * self.features[1:]

    def __eq__(self, other):
        if not isinstance(other, Trajectory):
            return NotImplemented
        return (
            self.id == other.id
            and np.array_equal(self.features, other.features)
            and np.array_equal(self.rewards, other.rewards)
            and np.array_equal(self.mask, other.mask)
        )

    def __repr__(self):
        return f"Trajectory(id={self.id}, H={self.horizon}, d={self.d}, steps={self.n_steps})"


class Dataset:
    """
    A collection of trajectories that share their feature dimension and horizon, with the discount factor they
    were generated under.
    """

    def __init__(self, trajectories, d, gamma):
        self.trajectories = tuple(trajectories)
        self.d = int(d)
        self.gamma = float(
            Validator(gamma, "discount factor gamma").check_in_range(0.0, 1.0).value
        )

        horizons = {trajectory.horizon for trajectory in self.trajectories}
        if len(horizons) > 1:
            raise InconsistentDimension(
                f"all trajectories must share one horizon, found {sorted(horizons)}"
            )
        for trajectory in self.trajectories:
            if trajectory.d != self.d:
                raise InconsistentDimension(
                    f"trajectory {trajectory.id} has feature dimension {trajectory.d}, dataset has {self.d}"
                )
        self._stacked = None

    @property
    def n(self) -> int:
        return len(self.trajectories)

    @property
    def horizon(self):
        return self.trajectories[0].horizon if self.trajectories else None

    def __len__(self):
        return self.n

    def __iter__(self):
        return iter(self.trajectories)

    def __getitem__(self, index):
        return self.trajectories[index]

    def __eq__(self, other):
        if not isinstance(other, Dataset):
            return NotImplemented
        return (
            self.d == other.d
            and self.gamma == other.gamma
            and self.trajectories == other.trajectories
        )

    def __repr__(self):
        return f"Dataset(n={self.n}, H={self.horizon}, d={self.d}, gamma={self.gamma})"

    def _stack(self):
        if self._stacked is None:
            horizon = self.horizon or 0
            if self.trajectories:
                features = np.stack([t.features for t in self.trajectories])
                rewards = np.stack([t.rewards for t in self.trajectories])
                mask = np.stack([t.mask for t in self.trajectories])
            else:
                features = np.zeros((0, horizon + 1, self.d))
                rewards = np.zeros((0, horizon))
                mask = np.zeros((0, horizon), dtype=bool)
            self._stacked = tuple(_read_only(a) for a in (features, rewards, mask))
        return self._stacked

    @property
    def features(self) -> np.ndarray:
        """(n, H+1, d) stacked features"""
        return self._stack()[0]

    @property
    def rewards(self) -> np.ndarray:
        """(n, H) stacked rewards"""
        return self._stack()[1]

    @property
    def mask(self) -> np.ndarray:
        """(n, H) stacked masks"""
        return self._stack()[2]

    def transitions(self, gamma=None) -> np.ndarray:
        """(n, H, d) array of w_t = x_t - gamma x_{t+1}"""
        gamma = self.gamma if gamma is None else gamma
        features = self.features
        return features[:, :-1] - gamma * features[:, 1:]

    def traces(self, lambda_, gamma=None) -> np.ndarray:
        """(n, H, d) eligibility traces of every trajectory"""
        gamma = self.gamma if gamma is None else gamma
        return _trace_filter(self.features[:, :-1], lambda_ * gamma, axis=1)

    def returns(self, gamma=None) -> np.ndarray:
        """(n, H) Monte-Carlo returns of every trajectory"""
        gamma = self.gamma if gamma is None else gamma
        return _return_filter(self.rewards, gamma, axis=1)

    def without(self, index):
        """The dataset with trajectory ``index`` removed"""
        return Dataset(
            self.trajectories[:index] + self.trajectories[index + 1 :], self.d, self.gamma
        )

    def subset(self, indices):
        return Dataset([self.trajectories[i] for i in indices], self.d, self.gamma)

    def permuted(self, order):
        return self.subset(order)


def _trace_filter(features, decay, axis):
    # z_j = decay * z_{j-1} + x_j, z_0 = x_0
    if features.shape[axis] == 0:
        return np.zeros(features.shape)
    return scipy.signal.lfilter([1.0], [1.0, -decay], features, axis=axis)


def _return_filter(rewards, gamma, axis):
    # G_t = r_t + gamma G_{t+1}, run backwards in time
    if rewards.shape[axis] == 0:
        return np.zeros(rewards.shape)
    reversed_rewards = np.flip(rewards, axis=axis)
    return np.flip(
        scipy.signal.lfilter([1.0], [1.0, -gamma], reversed_rewards, axis=axis),
        axis=axis,
    )


def eligibility_traces(traj: Trajectory, lambda_, gamma) -> np.ndarray:
    """
    Computes the eligibility traces z_j = sum_{t <= j} (lambda gamma)^(j - t) x_t of one trajectory.

    Traces are computed by the recursion z_j = (lambda gamma) z_{j-1} + x_j and never carry over between
    trajectories.

    Parameters
    ----------
    traj : Trajectory
        The trajectory
    lambda_ : float
        Trace decay in [0, 1]
    gamma : float
        Discount factor

    Returns
    -------
    np.ndarray
        (H, d) traces, one per step
    """

    Validator(lambda_, "lambda").check_in_range(0.0, 1.0)
    return _trace_filter(traj.features[:-1], lambda_ * gamma, axis=0)


def monte_carlo_returns(traj: Trajectory, gamma) -> np.ndarray:
    """
    Returns G_t = sum_{j >= t} gamma^(j - t) r_j for every step of the trajectory as an (H,) array
    """
    return _return_filter(traj.rewards, gamma, axis=0)


def monte_carlo_return(traj: Trajectory, step: int, gamma) -> float:
    """
    Discounted sum of rewards from ``step`` (0-based) to the end of the trajectory.

    Raises
    ------
    IndexOutOfRange
        when step is not in [0, H)
    """

    if not 0 <= step < traj.horizon:
        raise IndexOutOfRange(
            f"step {step} is outside trajectory {traj.id} of horizon {traj.horizon}"
        )
    rewards = traj.rewards[step:]
    return float(np.sum(rewards * gamma ** np.arange(rewards.shape[0])))


def _trajectory_record(trajectory):
    return {
        "id": trajectory.id,
        "d": trajectory.d,
        "H": trajectory.horizon,
        "features": trajectory.features.tolist(),
        "rewards": trajectory.rewards.tolist(),
        "mask": trajectory.mask.tolist(),
    }


@checkargs
def write_jsonl(dataset: Dataset, sink) -> None:
    """
    Writes a dataset as JSON lines: a header line followed by one line per trajectory.

    Parameters
    ----------
    dataset : Dataset
        The dataset to write
    sink : str or text stream
        A path, or an open text stream
    """

    if isinstance(sink, (str, bytes)) or hasattr(sink, "__fspath__"):
        with open(sink, "w", encoding="utf-8", newline="\n") as stream:
            return write_jsonl(dataset, stream)

    header = {
        "format": FILE_FORMAT,
        "version": FILE_VERSION,
        "d": dataset.d,
        "gamma": dataset.gamma,
        "n": dataset.n,
    }
    sink.write(json.dumps(header) + "\n")
    for trajectory in dataset:
        sink.write(json.dumps(_trajectory_record(trajectory)) + "\n")
    logging.debug(f"wrote {dataset.n} trajectories")


def _parse_trajectory(record, line_number, d):
    try:
        horizon = int(record["H"])
        features = record["features"]
        rewards = record["rewards"]
        mask = record["mask"]
        if int(record["d"]) != d:
            raise InconsistentDimension(
                f"line {line_number}: trajectory has d={record['d']} but the file declares d={d}"
            )
        if len(features) != horizon + 1 or len(rewards) != horizon or len(mask) != horizon:
            raise ParseError(
                f"record lengths do not match H={horizon}", line_number=line_number
            )
        if any(len(row) != d for row in features):
            raise InconsistentDimension(
                f"line {line_number}: feature vectors must have dimension {d}"
            )
        if not all(isinstance(flag, bool) for flag in mask):
            raise ParseError("mask entries must be booleans", line_number=line_number)
        return Trajectory(record["id"], np.array(features, dtype=np.float64).reshape(horizon + 1, d), rewards, mask)
    except (KeyError, TypeError) as exception:
        raise ParseError(
            f"malformed trajectory record ({exception})", line_number=line_number
        ) from exception
    except InconsistentDimension:
        raise
    except ParseError:
        raise
    except ValueError as exception:
        raise ParseError(str(exception), line_number=line_number) from exception


def _numbered_lines(source):
    # decoding happens as lines are read, so a bad byte surfaces here
    line_number = 0
    lines = iter(source)
    while True:
        try:
            line = next(lines)
        except StopIteration:
            return
        except UnicodeDecodeError as exception:
            raise ParseError(
                f"not valid UTF-8 ({exception.reason})", line_number=line_number + 1
            ) from exception
        line_number += 1
        yield line_number, line


def read_jsonl(source) -> Dataset:
    """
    Reads a dataset written by write_jsonl.

    Parameters
    ----------
    source : str or text stream
        A path, or an open text stream

    Returns
    -------
    Dataset

    Raises
    ------
    ParseError
        naming the offending line, also when the file is not valid UTF-8
    InconsistentDimension
        when records disagree on dimension or horizon
    """

    if isinstance(source, (str, bytes)) or hasattr(source, "__fspath__"):
        with open(source, "r", encoding="utf-8") as stream:
            return read_jsonl(stream)

    header = None
    trajectories = []
    for line_number, line in _numbered_lines(source):
        if line.strip() == "":
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exception:
            raise ParseError(f"invalid JSON ({exception.msg})", line_number=line_number) from exception
        if not isinstance(record, dict):
            raise ParseError("expected a JSON object", line_number=line_number)

        if header is None:
            if record.get("format") != FILE_FORMAT:
                raise ParseError(
                    f"expected a '{FILE_FORMAT}' header", line_number=line_number
                )
            try:
                header = {"d": int(record["d"]), "gamma": float(record["gamma"])}
            except (KeyError, TypeError, ValueError) as exception:
                raise ParseError("malformed header", line_number=line_number) from exception
            continue

        trajectory = _parse_trajectory(record, line_number, header["d"])
        if trajectories and trajectory.horizon != trajectories[0].horizon:
            raise InconsistentDimension(
                f"line {line_number}: trajectory has H={trajectory.horizon}, earlier records have H={trajectories[0].horizon}"
            )
        trajectories.append(trajectory)

    if header is None:
        raise ParseError("empty file, no header found", line_number=1)
    return Dataset(trajectories, header["d"], header["gamma"])


def dumps_jsonl(dataset: Dataset) -> str:
    stream = io.StringIO()
    write_jsonl(dataset, stream)
    return stream.getvalue()
