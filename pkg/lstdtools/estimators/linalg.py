"""
Dense linear algebra for small systems: a pivoted direct solver and Sherman-Morrison rank-one maintenance of an
inverse, both for a single matrix and for a stack of independent matrices.
"""
import warnings

import numpy as np
import scipy.linalg

from lstdtools.estimators.exceptions import (
    DimensionMismatch,
    NumericalError,
    SingularMatrix,
    SingularUpdate,
)

DENOMINATOR_EPSILON = 1e-12
PIVOT_EPSILON = 1e-12


def as_square_matrix(m, name="matrix") -> np.ndarray:
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"{name} must be a square matrix, found shape {m.shape}")
    return m


def as_vector(v, dim, name="vector") -> np.ndarray:
    v = np.asarray(v, dtype=np.float64)
    if v.ndim != 1 or v.shape[0] != dim:
        raise DimensionMismatch(
            f"{name} must be a vector of dimension {dim}, found shape {v.shape}"
        )
    return v


def _sherman_morrison_step(m_inv, u, v):
    # (M + uv')^-1 = M^-1 - M^-1 u v' M^-1 / (1 + v' M^-1 u)
    m_inv_u = m_inv @ u
    v_m_inv = v @ m_inv
    denominator = 1.0 + v_m_inv @ u
    if abs(denominator) <= DENOMINATOR_EPSILON:
        raise SingularUpdate(denominator)
    return m_inv - np.outer(m_inv_u, v_m_inv) / denominator


def _check_finite(m, what):
    if not np.all(np.isfinite(m)):
        raise NumericalError(f"{what} produced non-finite entries")
    return m


def sherman_morrison(m_inv, u, v) -> np.ndarray:
    """
    Returns (M + uv')^-1 given M^-1 without forming M.

    Parameters
    ----------
    m_inv : array_like
        d x d inverse of M
    u, v : array_like
        vectors of dimension d

    Returns
    -------
    np.ndarray
        a new d x d matrix; m_inv is not modified
    """

    m_inv = as_square_matrix(m_inv, "m_inv")
    d = m_inv.shape[0]
    u = as_vector(u, d, "u")
    v = as_vector(v, d, "v")
    return _check_finite(_sherman_morrison_step(m_inv, u, v), "sherman_morrison")


def recursive_sherman_morrison(m_inv, pairs) -> np.ndarray:
    """
    Folds sherman_morrison over a sequence of (u, v) pairs, returning (M + sum_t u_t v_t')^-1.

    Parameters
    ----------
    m_inv : array_like
        d x d inverse of M
    pairs : iterable of (u, v)
        the rank-one terms, applied in order

    Returns
    -------
    np.ndarray
        a new d x d matrix

    Raises
    ------
    SingularUpdate
        with ``step`` set to the index of the offending pair
    """

    result = as_square_matrix(m_inv, "m_inv")
    d = result.shape[0]
    for step, (u, v) in enumerate(pairs):
        u = as_vector(u, d, "u")
        v = as_vector(v, d, "v")
        try:
            result = _sherman_morrison_step(result, u, v)
        except SingularUpdate as error:
            raise error.located(step=step) from None
    if result is m_inv:
        result = result.copy()
    return _check_finite(result, "recursive_sherman_morrison")


def recursive_sherman_morrison_batch(m_invs, us, vs):
    """
    Applies recursive_sherman_morrison to a stack of independent inverses at once.

    Parameters
    ----------
    m_invs : array_like
        (k, d, d) stack of inverses, or a single (d, d) inverse shared by every member
    us, vs : array_like
        (k, T, d) rank-one terms; member i receives the pairs (us[i, t], vs[i, t]) for t = 0..T-1

    Returns
    -------
    inverses : np.ndarray
        (k, d, d) updated inverses
    failed_step : np.ndarray
        (k,) integer array, -1 where every update succeeded, otherwise the step at which the denominator vanished.
        A failed member keeps the value it had before that step.
    """

    us = np.asarray(us, dtype=np.float64)
    vs = np.asarray(vs, dtype=np.float64)
    if us.ndim != 3 or us.shape != vs.shape:
        raise DimensionMismatch(
            f"us and vs must share a (k, T, d) shape, found {us.shape} and {vs.shape}"
        )
    k, steps, d = us.shape

    m_invs = np.asarray(m_invs, dtype=np.float64)
    if m_invs.ndim == 2:
        m_invs = np.broadcast_to(m_invs, (k, d, d))
    if m_invs.shape != (k, d, d):
        raise DimensionMismatch(
            f"m_invs must have shape {(k, d, d)}, found {m_invs.shape}"
        )
    inverses = m_invs.copy()

    failed_step = np.full(k, -1, dtype=np.int64)
    active = np.ones(k, dtype=bool)
    for step in range(steps):
        u = us[:, step, :]
        v = vs[:, step, :]
        m_inv_u = np.einsum("kij,kj->ki", inverses, u)
        v_m_inv = np.einsum("ki,kij->kj", v, inverses)
        denominator = 1.0 + np.einsum("ki,ki->k", v_m_inv, u)

        vanished = active & (np.abs(denominator) <= DENOMINATOR_EPSILON)
        if vanished.any():
            failed_step[vanished] = step
            active &= ~vanished

        scale = np.where(active, 1.0 / np.where(active, denominator, 1.0), 0.0)
        inverses -= m_inv_u[:, :, None] * (v_m_inv * scale[:, None])[:, None, :]

    return inverses, failed_step


def _lu_factor(a):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        warnings.simplefilter("ignore", RuntimeWarning)
        lu, piv = scipy.linalg.lu_factor(a, check_finite=True)
    pivots = np.abs(np.diag(lu))
    smallest = int(np.argmin(pivots)) if pivots.size else 0
    if pivots.size and pivots[smallest] < PIVOT_EPSILON:
        raise SingularMatrix(
            f"matrix is singular to working precision: pivot {smallest} has magnitude {pivots[smallest]:.3e}",
            pivot=smallest,
        )
    return lu, piv


def solve(a, b) -> np.ndarray:
    """
    Solves a x = b with an LU factorisation with partial pivoting.

    Parameters
    ----------
    a : array_like
        d x d matrix
    b : array_like
        vector of dimension d

    Returns
    -------
    np.ndarray
        x

    Raises
    ------
    SingularMatrix
        when a pivot's magnitude falls below PIVOT_EPSILON
    """

    a = as_square_matrix(a, "a")
    b = as_vector(b, a.shape[0], "b")
    if a.shape[0] == 0:
        return np.zeros(0)
    x = scipy.linalg.lu_solve(_lu_factor(a), b)
    if not np.all(np.isfinite(x)):
        raise SingularMatrix("solve produced non-finite entries")
    return x


def invert(a) -> np.ndarray:
    """
    Inverts a by solving against every column of the identity with one pivoted LU factorisation.
    """

    a = as_square_matrix(a, "a")
    if a.shape[0] == 0:
        return np.zeros((0, 0))
    inverse = scipy.linalg.lu_solve(_lu_factor(a), np.eye(a.shape[0]))
    if not np.all(np.isfinite(inverse)):
        raise SingularMatrix("invert produced non-finite entries")
    return inverse
