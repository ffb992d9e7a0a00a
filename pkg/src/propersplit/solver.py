"""Stationary iteration x <- U+V x + U+ b for a single proper splitting, plus
verification of candidate solutions against the minimum-norm least-squares
characterization.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .matcore import DEFAULT_TOLS, Tolerances, as_matrix, as_vector, pinv
from .splitting import Splitting

__all__ = [
    "StopRule",
    "IterationReport",
    "SolutionCheck",
    "stationary_solve",
    "verify_solution",
    "HISTORY_CAP",
]

# residual histories keep at most this many trailing entries
HISTORY_CAP = 1000

_STOP_REASONS = {
    _kernels.TOL_MET: "tolerance_met",
    _kernels.MAX_ITERS: "max_iters",
    _kernels.DIVERGED: "diverged",
}


@dataclass(frozen=True)
class StopRule:
    """Iteration budget and thresholds.

    The iteration stops when the successive change satisfies
    ||x_new - x||_2 <= rel_tol * (1 + ||x_new||_2), when max_iters runs out,
    or when ||x||_2 > overflow_guard * (1 + ||b||_2) (reported as divergence).
    """

    max_iters: int = 10_000
    rel_tol: float = 1e-10
    overflow_guard: float = 1e12

    def __post_init__(self) -> None:
        if self.max_iters <= 0:
            raise ValueError("max_iters must be positive")
        if not self.rel_tol > 0.0:
            raise ValueError("rel_tol must be positive")
        if not self.overflow_guard > 0.0:
            raise ValueError("overflow_guard must be positive")


DEFAULT_STOP = StopRule()


@dataclass(frozen=True, eq=False)
class IterationReport:
    """Outcome of one iterative run.

    residual_history holds the trailing successive-change norms (at most
    HISTORY_CAP of them); converged is equivalent to
    stop_reason == 'tolerance_met'.
    """

    iterations: int
    converged: bool
    stop_reason: str
    final: np.ndarray
    residual_history: np.ndarray


def _run_fixed_point(kernel, h, c, x0, stop: StopRule, scale_norm: float) -> IterationReport:
    guard_limit = stop.overflow_guard * (1.0 + scale_norm)
    x, iters, status, changes = kernel(
        np.ascontiguousarray(h),
        np.ascontiguousarray(c),
        np.ascontiguousarray(x0),
        stop.max_iters,
        stop.rel_tol,
        guard_limit,
    )
    history = np.array(changes[-HISTORY_CAP:], dtype=np.float64)
    history.flags.writeable = False
    x = np.ascontiguousarray(x)
    x.flags.writeable = False
    reason = _STOP_REASONS[int(status)]
    return IterationReport(
        iterations=int(iters),
        converged=reason == "tolerance_met",
        stop_reason=reason,
        final=x,
        residual_history=history,
    )


def stationary_solve(
    s: Splitting, b, x0=None, stop: StopRule | None = None
) -> IterationReport:
    """Iterate x <- U+V x + U+ b from x0 (default zero).

    When rho(U+V) < 1 the limit is the minimum-norm least-squares solution
    A+ b, independent of the start.
    """
    stop = stop or DEFAULT_STOP
    if not s.proper:
        raise ValueError("stationary_solve needs a proper splitting")
    m, n = s.shape
    b = as_vector(b, length=m, name="b")
    x0 = np.zeros(n) if x0 is None else as_vector(x0, length=n, name="x0")
    c = s.u_pinv @ b
    return _run_fixed_point(
        _kernels.fixed_point_vector, s.h, c, x0, stop, float(np.linalg.norm(b))
    )


@dataclass(frozen=True)
class SolutionCheck:
    """How a candidate x relates to the minimum-norm least-squares solution."""

    normal_residual: float
    in_rowspace: bool
    matches_pinv_solution: bool


def verify_solution(a, b, x, tols: Tolerances | None = None) -> SolutionCheck:
    """Check the normal equations, row-space membership, and A+ b agreement."""
    tols = tols or DEFAULT_TOLS
    a = as_matrix(a, "A")
    b = as_vector(b, length=a.shape[0], name="b")
    x = as_vector(x, length=a.shape[1], name="x")
    normal_residual = float(np.linalg.norm(a.T @ (a @ x - b)))
    g = pinv(a, tols)
    x_star = g @ b
    in_rowspace = bool(
        np.linalg.norm(g @ (a @ x) - x) <= tols.eq_tol * (1.0 + np.linalg.norm(x))
    )
    matches = bool(
        np.linalg.norm(x - x_star) <= tols.eq_tol * (1.0 + np.linalg.norm(x_star))
    )
    return SolutionCheck(
        normal_residual=normal_residual,
        in_rowspace=in_rowspace,
        matches_pinv_solution=matches,
    )
