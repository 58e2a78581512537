import argparse

from lstdtools.envs.base import env_names
from lstdtools.estimators.allstd import DEFAULT_LAMBDAS
from lstdtools.estimators.lstd import DEFAULT_RHO, DEFAULT_RIDGE
from lstdtools.estimators.utilities import parse_float_list, parse_int_list

# Ensure standardisation of commonly used arguments


def _comma_floats(text):
    try:
        return parse_float_list(text)
    except ValueError as error:
        raise argparse.ArgumentTypeError(str(error))


def _comma_ints(text):
    try:
        return parse_int_list(text)
    except ValueError as error:
        raise argparse.ArgumentTypeError(str(error))


class Parser:

    # Create a parser and add in the standard arguments
    def __init__(self, description, sections=[]):
        self.parser = argparse.ArgumentParser(
            description=description, fromfile_prefix_chars="@"
        )
        self.arguments = []

        if "env" in sections:
            self.add(
                "--env",
                help=f"benchmark domain, one of {', '.join(env_names())}",
            )

        if "data" in sections:
            self.add("--data", metavar="trajectories.jsonl", help="read trajectories from this file")

        if "n" in sections:
            self.add("--n", type=int, default=100, metavar="n", help="number of trajectories")

        if "n_list" in sections:
            self.add(
                "--n",
                type=_comma_ints,
                default=[100],
                metavar="n1,n2,...",
                help="comma separated numbers of trajectories",
            )

        if "horizon" in sections:
            self.add("--horizon", type=int, metavar="H", help="trajectory length, defaults to the domain's")

        if "seed" in sections:
            self.add("--seed", type=int, default=0, help="64-bit experiment seed")

        if "grid" in sections:
            self.add(
                "--lambdas",
                type=_comma_floats,
                default=list(DEFAULT_LAMBDAS),
                metavar="l1,l2,...",
                help="strictly increasing lambda grid inside [0, 1]",
            )
            self.add("--gamma", type=float, help="override the domain's discount factor")
            self.add("--ridge", type=float, default=DEFAULT_RIDGE, help="ridge added to every LSTD system")
            self.add("--rho", type=float, default=DEFAULT_RHO, help="RLSTD initial variance parameter")

        if "trials" in sections:
            self.add("--trials", type=int, default=20, help="number of independent trials")

        if "threads" in sections:
            self.add(
                "--threads",
                type=int,
                help="worker threads, defaults to ALLSTD_THREADS or the machine's parallelism",
            )

        if "oracle" in sections:
            self.add("--eval-states", dest="eval_states", type=int, help="states valued by the Monte-Carlo oracle")
            self.add("--rollouts", type=int, help="Monte-Carlo rollouts per evaluation state")

        if "filename" in sections:
            self.add(
                "-o", "--out", dest="filename", metavar="results.csv", help="write to this file"
            )

        if "quiet" in sections:
            self.add(
                "-q",
                "--quiet",
                action="store_true",
                help="Quiet mode. Doesn't show the progress bar",
            )

        self.add("-d", "--debug", help=r"logging level, e.g. 'debug'")
        self.add("--logging-file", dest="logging_file", help="also write log messages to this file")

    def add(self, *args, **kwargs):
        # Arguments are collected here and added to argparse in parse()
        self.arguments.append((args[0], args, kwargs))
        return self

    def parse(self, args=None):
        for arg in self.arguments:
            self.parser.add_argument(*arg[1], **arg[2])

        return self.parser.parse_args(args)

    def extend(self, fn):
        if fn:
            fn(self)
        return self
