"""
Accelerated proximal gradient for ‖b − A f‖² plus a simple convex term.

The constrained problem uses the ℓ1-ball indicator (prox = projection), the
penalized one uses c(‖f‖_1)² (prox = :func:`prox_squared_l1`). Both share
:func:`_accelerated_descent`: FISTA momentum, backtracking on the Lipschitz
estimate, and a function-value restart that keeps the accepted iterates
monotone in objective up to a relative slack of OBJECTIVE_SLACK.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from typing import TYPE_CHECKING

import numpy as np
from scipy.sparse.linalg import LinearOperator
from scipy.sparse.linalg import aslinearoperator

from shift_denoise.conv_operators.operators import power_iteration
from shift_denoise.global_data.exceptions import ConfigurationError
from shift_denoise.global_data.exceptions import DataError
from shift_denoise.solvers.options import SolverOptions
from shift_denoise.solvers.options import SolverResult
from shift_denoise.solvers.prox import project_l1_ball
from shift_denoise.solvers.prox import prox_squared_l1

if TYPE_CHECKING:
    from numpy.typing import ArrayLike
    from numpy.typing import NDArray

logger = logging.getLogger(__name__)

# relative objective increase still treated as no increase
OBJECTIVE_SLACK = 1e-12

# prox(v, step) -> argmin_x g(x) + ‖x − v‖² / (2 step)
Prox = Callable[["NDArray[np.complex128]", float], "NDArray[np.complex128]"]
Penalty = Callable[["NDArray[np.complex128]"], float]


def _as_operator(operator) -> LinearOperator:
    return operator.as_linear_operator() if hasattr(operator, "as_linear_operator") else aslinearoperator(operator)


def _smooth(op: LinearOperator, b: NDArray, x: NDArray) -> tuple[NDArray, float]:
    residual = op.matvec(x) - b
    return residual, float(np.vdot(residual, residual).real)


def gradient_mapping(
    operator,
    b: ArrayLike,
    f: ArrayLike,
    lipschitz: float,
    prox: Prox,
) -> float:
    """‖f − prox(f − ∇/L, 1/L)‖ for ‖b − A f‖², with A = ``operator`` and L = ``lipschitz``."""
    op = _as_operator(operator)
    b = np.asarray(b, dtype=np.complex128)
    f = np.asarray(f, dtype=np.complex128)
    residual, _ = _smooth(op, b, f)
    grad = 2 * op.rmatvec(residual)
    return float(np.linalg.norm(f - prox(f - grad / lipschitz, 1 / lipschitz)))


def _accelerated_descent(  # noqa: PLR0913
    op: LinearOperator,
    b: NDArray[np.complex128],
    prox: Prox,
    penalty: Penalty,
    opts: SolverOptions,
    x0: NDArray[np.complex128] | None,
) -> SolverResult:
    sigma, _ = power_iteration(op, opts.power_iters)
    lipschitz = 2 * sigma**2 * (1 + opts.step_safety)
    if lipschitz == 0:
        lipschitz = 1.0
    if x0 is None:
        x = np.zeros(op.shape[1], dtype=np.complex128)
    else:
        x = prox(np.asarray(x0, np.complex128), 1 / lipschitz)
    residual, fx = _smooth(op, b, x)
    objective = fx + penalty(x)
    y = x.copy()
    t = 1.0
    restarts = 0
    certificate = np.inf
    converged = False
    iteration = 0

    for iteration in range(1, opts.max_iters + 1):
        res_y, fy = _smooth(op, b, y)
        grad = 2 * op.rmatvec(res_y)
        while True:
            candidate = prox(y - grad / lipschitz, 1 / lipschitz)
            step = candidate - y
            res_c, fc = _smooth(op, b, candidate)
            bound = fy + float(np.vdot(grad, step).real) + 0.5 * lipschitz * float(np.vdot(step, step).real)
            if fc <= bound + 1e-12 * max(1.0, fy):
                break
            lipschitz *= 2
        candidate_objective = fc + penalty(candidate)

        # steps taken from the accepted point itself are always kept
        from_accepted = np.array_equal(y, x)
        if candidate_objective > objective + OBJECTIVE_SLACK * max(1.0, abs(objective)) and not from_accepted:
            # restart momentum from the last accepted point
            restarts += 1
            t = 1.0
            y = x.copy()
            continue

        t_next = (1 + np.sqrt(1 + 4 * t * t)) / 2
        y = candidate + ((t - 1) / t_next) * (candidate - x)
        x, residual, objective, t = candidate, res_c, candidate_objective, t_next

        grad_x = 2 * op.rmatvec(residual)
        certificate = float(np.linalg.norm(x - prox(x - grad_x / lipschitz, 1 / lipschitz)))
        if certificate <= opts.tol * (1 + np.linalg.norm(x)):
            converged = True
            break

    if not converged:
        grad_x = 2 * op.rmatvec(residual)
        certificate = float(np.linalg.norm(x - prox(x - grad_x / lipschitz, 1 / lipschitz)))
        converged = certificate <= opts.tol * (1 + np.linalg.norm(x))

    if not converged:
        logger.warning(
            "solver stopped after %d iterations with certificate %.3e (tol %.1e)",
            iteration,
            certificate,
            opts.tol,
        )
    return SolverResult(
        solution=x,
        objective=float(objective),
        certificate=certificate,
        iterations=iteration,
        converged=converged,
        lipschitz=lipschitz,
        restarts=restarts,
    )


def _prepare(operator, b: ArrayLike) -> tuple[LinearOperator, NDArray[np.complex128]]:
    op = _as_operator(operator)
    b = np.asarray(b, dtype=np.complex128).reshape(-1)
    if b.size != op.shape[0]:
        msg = f"right-hand side has length {b.size}, operator expects {op.shape[0]}"
        raise DataError(msg)
    return op, b


def solve_constrained(
    operator,
    b: ArrayLike,
    r: float,
    opts: SolverOptions | None = None,
    x0: ArrayLike | None = None,
) -> SolverResult:
    """Minimize ‖b − A f‖² subject to ‖f‖_1 ≤ r."""
    if r < 0:
        msg = f"radius must be non-negative, got {r}"
        raise ConfigurationError(msg)
    opts = opts or SolverOptions.from_settings()
    op, b = _prepare(operator, b)
    logger.debug("constrained solve: shape=%s radius=%.6g", op.shape, r)
    return _accelerated_descent(
        op,
        b,
        lambda v, _step: project_l1_ball(v, r),
        lambda _x: 0.0,
        opts,
        None if x0 is None else np.asarray(x0),
    )


def solve_penalized(
    operator,
    b: ArrayLike,
    c: float,
    opts: SolverOptions | None = None,
    x0: ArrayLike | None = None,
) -> SolverResult:
    """Minimize ‖b − A f‖² + c (‖f‖_1)²."""
    if c < 0:
        msg = f"penalty must be non-negative, got {c}"
        raise ConfigurationError(msg)
    opts = opts or SolverOptions.from_settings()
    op, b = _prepare(operator, b)
    logger.debug("penalized solve: shape=%s penalty=%.6g", op.shape, c)
    return _accelerated_descent(
        op,
        b,
        lambda v, step: prox_squared_l1(v, c * step),
        lambda x: c * float(np.sum(np.abs(x))) ** 2,
        opts,
        None if x0 is None else np.asarray(x0),
    )
