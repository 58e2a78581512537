from lstdtools.evaluation.benchmark import BENCH_METHODS, MINIMUM_REPEATS, bench_table
from lstdtools.tools import lpt
from lstdtools.tools import stdargs

TOOLNAME = "bench"
TOOLTIP = "Time ALLSTD against naive cross-validation and k independent solves"


def parse(extend=None, args=None):
    return (
        stdargs.Parser(
            "Benchmark training time",
            ["env", "n_list", "horizon", "seed", "grid", "filename", "quiet"],
        )
        .add(
            "--method",
            default=",".join(BENCH_METHODS),
            metavar="m1,m2,...",
            help=f"comma separated methods from {', '.join(BENCH_METHODS)}",
        )
        .add("--reps", type=int, default=MINIMUM_REPEATS, help="timed repetitions per point, at least 5")
        .extend(extend)
        .parse(args)
    )


def process_args(args):
    if args.env is None:
        raise ValueError("--env is required")
    methods = [method.strip() for method in args.method.split(",") if method.strip()]
    return bench_table(
        args.env,
        args.n,
        lambdas=args.lambdas,
        horizon=args.horizon,
        seed=args.seed,
        gamma=args.gamma,
        repeats=args.reps,
        ridge=args.ridge,
        rho=args.rho,
        methods=methods,
        quiet=args.quiet,
    )


# Standalone tool
def main(parse=parse, display_df=lpt.display_df):
    return lpt.standard_flow(parse, process_args, display_df)
