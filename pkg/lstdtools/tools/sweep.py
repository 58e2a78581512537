from lstdtools.envs.oracle import make_environment
from lstdtools.estimators.utilities import resolve_threads
from lstdtools.evaluation.benchmark import lambda_sweep, summarise_sweep
from lstdtools.tools import lpt
from lstdtools.tools import stdargs
from lstdtools.tools.run import oracle_from

TOOLNAME = "sweep"
TOOLTIP = "Root MSVE of fixed-lambda LSTD and RLSTD for every lambda and n"


def parse(extend=None, args=None):
    return (
        stdargs.Parser(
            "Sweep fixed lambdas",
            ["env", "n_list", "horizon", "seed", "grid", "trials", "threads", "oracle", "filename", "quiet"],
        )
        .add("--raw", action="store_true", help="one row per trial instead of the summary with best/worst flags")
        .extend(extend)
        .parse(args)
    )


def process_args(args):
    if args.env is None:
        raise ValueError("--env is required")
    threads = resolve_threads(args.threads)
    horizon = args.horizon or make_environment(args.env).default_horizon
    sweep = lambda_sweep(
        args.env,
        args.n,
        args.trials,
        oracle_from(args, horizon, threads),
        lambdas=args.lambdas,
        horizon=horizon,
        seed=args.seed,
        gamma=args.gamma,
        ridge=args.ridge,
        rho=args.rho,
        threads=threads,
        quiet=args.quiet,
    )
    return sweep if args.raw else summarise_sweep(sweep)


# Standalone tool
def main(parse=parse, display_df=lpt.display_df):
    return lpt.standard_flow(parse, process_args, display_df)
