import lstdtools.estimators
import lstdtools.envs
import lstdtools.evaluation
from lstdtools.estimators import allstd, lstd_loto_cv, naive_cv_lstd
from lstdtools.envs import evaluation_oracle, generate, make_environment
