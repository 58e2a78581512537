import pandas as pd

from lstdtools.envs.oracle import EnvConfig, generate
from lstdtools.estimators.trajectory import write_jsonl
from lstdtools.estimators.utilities import resolve_threads
from lstdtools.tools import lpt
from lstdtools.tools import stdargs

TOOLNAME = "gen"
TOOLTIP = "Generate trajectories from a benchmark domain"


def parse(extend=None, args=None):
    return (
        stdargs.Parser("Generate trajectories", ["env", "n", "horizon", "seed", "threads"])
        .add("-o", "--out", required=True, metavar="trajectories.jsonl", help="write to this file")
        .extend(extend)
        .parse(args)
    )


def process_args(args):
    if args.env is None:
        raise ValueError("--env is required")
    config = EnvConfig.create(args.env, args.n, args.horizon, args.seed)
    dataset = generate(config, resolve_threads(args.threads))
    write_jsonl(dataset, args.out)
    return pd.DataFrame(
        [{"env": config.env_id, "n": dataset.n, "H": dataset.horizon, "d": dataset.d, "gamma": dataset.gamma}]
    )


# Standalone tool
def main(parse=parse, display_df=lpt.display_df):
    return lpt.standard_flow(parse, process_args, display_df)
