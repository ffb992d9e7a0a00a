"""Alternating two-splitting iteration and its induced single splitting.

Two proper splittings A = M - N = U - V alternate as

    x(i+1/2) = M+N x(i) + M+ b,      x(i+1) = U+V x(i+1/2) + U+ b,

which collapses to the stationary form x(i+1) = H x(i) + c b with composite
iteration matrix H = U+V M+N and c = U+(V M+ + I).  H is also the iteration
matrix of exactly one proper splitting A = B - C with B = M(M+U-A)+U; this
module computes that induced splitting, the convergence and comparison
predicates for the composite scheme, and the matrix recursion
X(i+1) = H X(i) + c whose limit is the Moore-Penrose inverse of A.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .matcore import (
    DEFAULT_TOLS,
    Tolerances,
    as_matrix,
    as_vector,
    is_nonneg,
    pinv,
    positive_row_sums,
    subspace_equal,
)
from .spectral import spectral_radius
from .splitting import SplitClass, Splitting, build_splitting, is_semimonotone
from .solver import DEFAULT_STOP, IterationReport, StopRule, _run_fixed_point

__all__ = [
    "AlternatingScheme",
    "InducedSplitting",
    "AlternatingConvergenceReport",
    "AlternatingComparisonReport",
    "build_alternating",
    "alternating_solve",
    "convergence_check",
    "induced_splitting",
    "compare_alternating",
    "mp_iterate",
    "ALT_COMPARE_MODES",
]


@dataclass(frozen=True, eq=False)
class AlternatingScheme:
    """Two proper splittings of one matrix plus the composite H and c.

    ``first`` is the half-step splitting (A = M - N), ``second`` the full-step
    one (A = U - V); H = U+V M+N and c = U+(V M+ + I) has shape n x m.
    """

    a: np.ndarray
    first: Splitting
    second: Splitting
    h: np.ndarray
    c: np.ndarray
    tols: Tolerances

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape


def build_alternating(a, m, u, tols: Tolerances | None = None) -> AlternatingScheme:
    """Validate both splittings and assemble the composite operators."""
    tols = tols or DEFAULT_TOLS
    a = as_matrix(a, "A")
    first = build_splitting(a, m, tols)
    second = build_splitting(a, u, tols)
    bad = [name for name, s in (("M", first), ("U", second)) if not s.proper]
    if bad:
        raise ValueError(f"not a proper splitting of A: {', '.join(bad)}")
    h = second.h @ first.h
    c = second.u_pinv @ (second.v @ first.u_pinv + np.eye(a.shape[0]))
    h.flags.writeable = False
    c.flags.writeable = False
    return AlternatingScheme(a=a, first=first, second=second, h=h, c=c, tols=tols)


def alternating_solve(
    sch: AlternatingScheme, b, x0=None, stop: StopRule | None = None
) -> IterationReport:
    """Iterate the collapsed alternating scheme x <- H x + c b."""
    stop = stop or DEFAULT_STOP
    m, n = sch.shape
    b = as_vector(b, length=m, name="b")
    x0 = np.zeros(n) if x0 is None else as_vector(x0, length=n, name="x0")
    cb = sch.c @ b
    return _run_fixed_point(
        _kernels.fixed_point_vector, sch.h, cb, x0, stop, float(np.linalg.norm(b))
    )


@dataclass(frozen=True)
class AlternatingConvergenceReport:
    """Hypotheses and radius for the composite convergence theorem.

    When both splittings are weak regular and A is semi-monotone the theorem
    guarantees rho(H) < 1; the converse is not asserted.
    """

    both_weak_regular: bool
    semimonotone: bool
    rho_h: float
    theorem_applies: bool


def convergence_check(
    sch: AlternatingScheme, tols: Tolerances | None = None
) -> AlternatingConvergenceReport:
    tols = tols or sch.tols
    both = (
        sch.first.split_class >= SplitClass.PROPER_WEAK_REGULAR
        and sch.second.split_class >= SplitClass.PROPER_WEAK_REGULAR
    )
    semi = is_semimonotone(sch.first, tols)
    rho_h = spectral_radius(sch.h, tols)
    return AlternatingConvergenceReport(
        both_weak_regular=both,
        semimonotone=semi,
        rho_h=rho_h,
        theorem_applies=both and semi,
    )


@dataclass(frozen=True, eq=False)
class InducedSplitting:
    """The unique splitting A = B - C whose iteration matrix is H.

    hypotheses_ok records whether M + U - A spans the same range and null
    space as A; only then is the weak regular classification guaranteed.
    """

    b: np.ndarray
    c: np.ndarray
    h: np.ndarray
    hypotheses_ok: bool
    split_class: SplitClass
    splitting: Splitting


def induced_splitting(
    sch: AlternatingScheme, tols: Tolerances | None = None
) -> InducedSplitting:
    """Compute B = M(M+U-A)+U and classify the induced splitting.

    Requires rho(H) < 1 so that the identity B = A(I-H)^(-1) is meaningful.
    """
    tols = tols or sch.tols
    # radius within 1e-9 of 1 makes I - H numerically singular
    if spectral_radius(sch.h, tols) >= 1.0 - _RADIUS_TOL:
        raise ValueError("induced splitting needs rho(H) < 1")
    s = sch.first.u + sch.second.u - sch.a
    hyp = subspace_equal(s, sch.a, tols)
    b_mat = sch.first.u @ pinv(s, tols) @ sch.second.u
    b_mat.flags.writeable = False
    built = build_splitting(sch.a, b_mat, tols)
    return InducedSplitting(
        b=b_mat,
        c=built.v,
        h=sch.h,
        hypotheses_ok=hyp[0] and hyp[1],
        split_class=built.split_class,
        splitting=built,
    )


# 'main33' demands an entrywise nonnegative A; 'main333' swaps that for
# positive row sums of both pseudoinverse factors
ALT_COMPARE_MODES = ("main33", "main333")

_RADIUS_TOL = 1e-9


@dataclass(frozen=True)
class AlternatingComparisonReport:
    """Composite-vs-factor radius comparison under either hypothesis set."""

    mode: str
    hypotheses_ok: bool
    rho_h: float
    rho_second: float
    rho_first: float
    conclusion_ok: bool


def compare_alternating(
    sch: AlternatingScheme, mode: str = "main33", tols: Tolerances | None = None
) -> AlternatingComparisonReport:
    """Check rho(H) <= min of the factor radii < 1 and its hypotheses.

    The conclusion is reported even when the hypotheses fail, supporting
    exploration of whether the nonnegativity requirement is sharp.
    """
    tols = tols or sch.tols
    if mode not in ALT_COMPARE_MODES:
        raise ValueError(f"mode must be one of {ALT_COMPARE_MODES}, got {mode!r}")
    both_regular = (
        sch.first.split_class >= SplitClass.PROPER_REGULAR
        and sch.second.split_class >= SplitClass.PROPER_REGULAR
    )
    semi = is_semimonotone(sch.first, tols)
    s = sch.first.u + sch.second.u - sch.a
    sub = subspace_equal(s, sch.a, tols)
    common = both_regular and semi and sub[0] and sub[1]
    if mode == "main33":
        hypotheses = common and is_nonneg(sch.a, tols)
    else:
        hypotheses = (
            common
            and positive_row_sums(sch.second.u_pinv, tols)
            and positive_row_sums(sch.first.u_pinv, tols)
        )

    rho_h = spectral_radius(sch.h, tols)
    rho_second = spectral_radius(sch.second.h, tols)
    rho_first = spectral_radius(sch.first.h, tols)
    smallest = min(rho_second, rho_first)
    conclusion = rho_h <= smallest + _RADIUS_TOL and smallest < 1.0
    return AlternatingComparisonReport(
        mode=mode,
        hypotheses_ok=hypotheses,
        rho_h=rho_h,
        rho_second=rho_second,
        rho_first=rho_first,
        conclusion_ok=conclusion,
    )


def mp_iterate(sch: AlternatingScheme, stop: StopRule | None = None) -> IterationReport:
    """Matrix recursion X <- H X + c from X = 0; the limit is pinv(A).

    Convergence is governed by the same rho(H) < 1 condition as the vector
    scheme; norms in the stop rule are Frobenius.
    """
    stop = stop or DEFAULT_STOP
    m, n = sch.shape
    x0 = np.zeros((n, m))
    return _run_fixed_point(
        _kernels.fixed_point_matrix,
        sch.h,
        sch.c,
        x0,
        stop,
        float(np.linalg.norm(sch.c)),
    )
