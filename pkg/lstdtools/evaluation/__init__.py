from lstdtools.evaluation.metrics import EvalReport, root_msve
from lstdtools.evaluation.benchmark import (
    TimingResult,
    bench_table,
    best_worst_fixed_lambda,
    lambda_sweep,
    summarise_sweep,
    time_method,
)
from lstdtools.evaluation.experiment import run_method, run_trials
from lstdtools.evaluation.svg import chart_from_table, line_chart
