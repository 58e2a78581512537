import logging

from lstdtools.envs.oracle import evaluation_oracle, make_environment
from lstdtools.estimators.trajectory import Dataset, read_jsonl
from lstdtools.estimators.utilities import resolve_threads
from lstdtools.evaluation.experiment import RUN_METHODS, reports_to_df, run_method, run_trials
from lstdtools.tools import lpt
from lstdtools.tools import stdargs

TOOLNAME = "run"
TOOLTIP = "Select lambda with ALLSTD and the baselines over independent trials"


def parse(extend=None, args=None):
    return (
        stdargs.Parser(
            "Run lambda selection experiments",
            ["env", "data", "n_list", "horizon", "seed", "grid", "trials", "threads", "oracle", "filename", "quiet"],
        )
        .add(
            "--method",
            default="allstd,naive-cv",
            metavar="m1,m2,...",
            help=f"comma separated methods from {', '.join(RUN_METHODS)}",
        )
        .add("--lambda", dest="lambda_", type=float, help="lambda for the fixed-lambda methods, every grid value if omitted")
        .add("--omit-timing", dest="omit_timing", action="store_true", help="write 0 in the seconds column")
        .extend(extend)
        .parse(args)
    )


def methods_from(args):
    methods = [method.strip() for method in args.method.split(",") if method.strip()]
    for method in methods:
        if method not in RUN_METHODS:
            raise ValueError(f"unknown method '{method}', valid methods are {', '.join(RUN_METHODS)}")
    return methods


def oracle_from(args, horizon, threads):
    return evaluation_oracle(
        args.env,
        args.seed,
        gamma=args.gamma,
        horizon=horizon,
        eval_states=args.eval_states,
        rollouts=args.rollouts,
        threads=threads,
    )


def process_args(args):
    methods = methods_from(args)
    threads = resolve_threads(args.threads)

    if args.data is not None:
        dataset = read_jsonl(args.data)
        if args.gamma is not None:
            dataset = Dataset(dataset.trajectories, dataset.d, args.gamma)
        oracle = oracle_from(args, dataset.horizon, threads) if args.env else None
        if oracle is None:
            logging.warning("no --env given, root_msve is left empty")
        reports = [
            report
            for method in methods
            for report in run_method(
                method,
                dataset,
                oracle,
                args.lambdas,
                args.lambda_,
                args.ridge,
                args.rho,
                omit_timing=args.omit_timing,
            )
        ]
        return reports_to_df(reports)

    if args.env is None:
        raise ValueError("either --env or --data is required")
    horizon = args.horizon or make_environment(args.env).default_horizon
    return run_trials(
        args.env,
        args.n,
        args.trials,
        oracle_from(args, horizon, threads),
        methods=methods,
        lambdas=args.lambdas,
        lambda_=args.lambda_,
        horizon=horizon,
        seed=args.seed,
        gamma=args.gamma,
        ridge=args.ridge,
        rho=args.rho,
        threads=threads,
        omit_timing=args.omit_timing,
        quiet=args.quiet,
    )


# Standalone tool
def main(parse=parse, display_df=lpt.display_df):
    return lpt.standard_flow(parse, process_args, display_df)
