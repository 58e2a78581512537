import lstdtools.estimators.exceptions
import lstdtools.estimators.linalg
import lstdtools.estimators.trajectory
import lstdtools.estimators.lstd
import lstdtools.estimators.loto
import lstdtools.estimators.allstd
from lstdtools.estimators.trajectory import (
    Trajectory,
    Dataset,
    eligibility_traces,
    monte_carlo_return,
    monte_carlo_returns,
    read_jsonl,
    write_jsonl,
)
from lstdtools.estimators.lstd import (
    LinearSystem,
    build_system,
    lstd_solve,
    rlstd,
    warm_start_inverse,
    regression_on_returns,
)
from lstdtools.estimators.loto import (
    LOTOResult,
    downdate_inverse,
    loto_vector,
    loto_error,
    loto_errors,
    lstd_loto_cv,
    naive_loto_cv,
)
from lstdtools.estimators.allstd import (
    DEFAULT_LAMBDAS,
    LambdaSelection,
    allstd,
    naive_cv_lstd,
)
