"""Proper-splitting construction, classification, and executable forms of the
single-splitting convergence, implication-chain, and comparison theorems.

A splitting of A is a pair (U, V) with A = U - V; it is *proper* when U spans
the same range and null space as A.  The classes form a lattice ordered by
predicate strength:

    NotProper < Proper < ProperNonnegative (U+V >= 0)
              < ProperWeakRegular (U+ >= 0 and U+V >= 0)
              < ProperRegular (U+ >= 0 and V >= 0)

``classify`` returns the strongest class that holds; weaker predicates follow
by implication.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from .matcore import (
    DEFAULT_TOLS,
    Tolerances,
    as_matrix,
    dominates,
    is_nonneg,
    pinv,
    positive_row_sums,
    subspace_equal,
)
from .spectral import spectral_radius

__all__ = [
    "SplitClass",
    "Splitting",
    "IdentityChecks",
    "ChainReport",
    "ConvergenceReport",
    "ComparisonReport",
    "build_splitting",
    "classify",
    "iteration_identities",
    "is_semimonotone",
    "convergence_characterization",
    "implication_chain",
    "compare_splittings",
]


class SplitClass(IntEnum):
    """Classification lattice; comparisons follow predicate strength."""

    NOT_PROPER = 0
    PROPER = 1
    PROPER_NONNEGATIVE = 2
    PROPER_WEAK_REGULAR = 3
    PROPER_REGULAR = 4

    @property
    def label(self) -> str:
        return _LABELS[self]


_LABELS = {
    SplitClass.NOT_PROPER: "NotProper",
    SplitClass.PROPER: "Proper",
    SplitClass.PROPER_NONNEGATIVE: "ProperNonnegative",
    SplitClass.PROPER_WEAK_REGULAR: "ProperWeakRegular",
    SplitClass.PROPER_REGULAR: "ProperRegular",
}


@dataclass(frozen=True, eq=False)
class Splitting:
    """Validated splitting A = U - V with cached pseudoinverses.

    V is always derived as U - A, never supplied, so A = U - V holds by
    construction.  ``h`` is the iteration matrix U+V of the stationary scheme
    x <- H x + U+ b.
    """

    a: np.ndarray
    u: np.ndarray
    v: np.ndarray
    a_pinv: np.ndarray
    u_pinv: np.ndarray
    h: np.ndarray
    range_match: bool
    null_match: bool
    split_class: SplitClass
    tols: Tolerances

    @property
    def proper(self) -> bool:
        return self.range_match and self.null_match

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape


def build_splitting(a, u, tols: Tolerances | None = None) -> Splitting:
    """Construct and classify the splitting A = U - (U - A)."""
    tols = tols or DEFAULT_TOLS
    a = as_matrix(a, "A")
    u = as_matrix(u, "U")
    if a.shape != u.shape:
        raise ValueError(f"A and U must share a shape: {a.shape} vs {u.shape}")
    v = u - a
    v.flags.writeable = False
    a_pinv = pinv(a, tols)
    u_pinv = pinv(u, tols)
    h = u_pinv @ v
    h.flags.writeable = False
    range_match, null_match = subspace_equal(a, u, tols)
    cls = _classify(range_match and null_match, u_pinv, v, h, tols)
    return Splitting(
        a=a,
        u=u,
        v=v,
        a_pinv=a_pinv,
        u_pinv=u_pinv,
        h=h,
        range_match=range_match,
        null_match=null_match,
        split_class=cls,
        tols=tols,
    )


def _classify(proper: bool, u_pinv, v, h, tols: Tolerances) -> SplitClass:
    if not proper:
        return SplitClass.NOT_PROPER
    if not is_nonneg(h, tols):
        return SplitClass.PROPER
    if not is_nonneg(u_pinv, tols):
        return SplitClass.PROPER_NONNEGATIVE
    if not is_nonneg(v, tols):
        return SplitClass.PROPER_WEAK_REGULAR
    return SplitClass.PROPER_REGULAR


def classify(s: Splitting, tols: Tolerances | None = None) -> SplitClass:
    """Strongest class of an already-built splitting."""
    tols = tols or s.tols
    return _classify(s.proper, s.u_pinv, s.v, s.h, tols)


def _require_class(s: Splitting, needed: SplitClass, who: str) -> None:
    if s.split_class < needed:
        raise ValueError(
            f"{who} needs a splitting classified at least {needed.label}, "
            f"got {s.split_class.label}"
        )


@dataclass(frozen=True, eq=False)
class IdentityChecks:
    """Residuals of the proper-splitting identities.

    factorization : max|A - U(I-H)|
    pinv_identity : max|A+ - (I-H)^(-1) U+| (inf when I-H is singular)
    sigma_min     : smallest singular value of I-H (invertibility witness)
    """

    h: np.ndarray
    factorization_residual: float
    sigma_min: float
    pinv_residual: float
    factorization_ok: bool
    invertible_ok: bool
    pinv_ok: bool

    @property
    def all_ok(self) -> bool:
        return self.factorization_ok and self.invertible_ok and self.pinv_ok


def iteration_identities(s: Splitting, tols: Tolerances | None = None) -> IdentityChecks:
    """Evaluate A = U(I-H), invertibility of I-H, and A+ = (I-H)^(-1) U+."""
    tols = tols or s.tols
    if not s.proper:
        raise ValueError("iteration identities only hold for proper splittings")
    n = s.h.shape[0]
    i_minus_h = np.eye(n) - s.h
    fact_res = float(np.abs(s.a - s.u @ i_minus_h).max())
    sigma_min = float(np.linalg.svd(i_minus_h, compute_uv=False).min())
    invertible = sigma_min > tols.subspace_tol
    if invertible:
        pinv_res = float(np.abs(s.a_pinv - np.linalg.solve(i_minus_h, s.u_pinv)).max())
    else:
        pinv_res = np.inf
    return IdentityChecks(
        h=s.h,
        factorization_residual=fact_res,
        sigma_min=sigma_min,
        pinv_residual=pinv_res,
        factorization_ok=fact_res <= tols.eq_tol,
        invertible_ok=invertible,
        pinv_ok=pinv_res <= tols.eq_tol,
    )


def is_semimonotone(a, tols: Tolerances | None = None) -> bool:
    """True when the Moore-Penrose inverse is entrywise nonnegative."""
    tols = tols or DEFAULT_TOLS
    if isinstance(a, Splitting):
        return is_nonneg(a.a_pinv, tols)
    return is_nonneg(pinv(a, tols), tols)


@dataclass(frozen=True)
class ConvergenceReport:
    """Both sides of 'A+ >= 0 iff rho(U+V) < 1' for a weak regular splitting."""

    semimonotone: bool
    rho: float
    rho_lt_1: bool
    agrees: bool


def convergence_characterization(
    s: Splitting, tols: Tolerances | None = None
) -> ConvergenceReport:
    """Evaluate the semi-monotonicity/convergence equivalence on one splitting."""
    tols = tols or s.tols
    _require_class(s, SplitClass.PROPER_WEAK_REGULAR, "convergence_characterization")
    semi = is_nonneg(s.a_pinv, tols)
    rho = spectral_radius(s.h, tols)
    rho_lt_1 = rho < 1.0
    return ConvergenceReport(
        semimonotone=semi, rho=rho, rho_lt_1=rho_lt_1, agrees=semi == rho_lt_1
    )


@dataclass(frozen=True)
class ChainReport:
    """Flags of the seven-condition implication chain for weak regular splittings.

    Each flag implies the next one; ``implications_hold`` checks exactly that.

    pinv_u_nonneg        (a) A+U >= 0
    radius_from_au_ok    (b) rho(U+V) = (rho(A+U) - 1)/rho(A+U)
    radius_lt_one        (c) rho(U+V) < 1
    resolvent_nonneg     (d) (I - U+V)^(-1) >= 0
    pinv_v_nonneg        (e) A+V >= 0
    pinv_v_dominates     (f) A+V >= U+V
    radius_from_av_ok    (g) rho(U+V) = rho(A+V)/(1 + rho(A+V)) < 1
    """

    pinv_u_nonneg: bool
    radius_from_au_ok: bool
    radius_lt_one: bool
    resolvent_nonneg: bool
    pinv_v_nonneg: bool
    pinv_v_dominates: bool
    radius_from_av_ok: bool
    rho_uv: float
    rho_au: float
    rho_av: float

    @property
    def flags(self) -> tuple[bool, ...]:
        return (
            self.pinv_u_nonneg,
            self.radius_from_au_ok,
            self.radius_lt_one,
            self.resolvent_nonneg,
            self.pinv_v_nonneg,
            self.pinv_v_dominates,
            self.radius_from_av_ok,
        )

    @property
    def implications_hold(self) -> bool:
        f = self.flags
        return all(not f[i] or f[i + 1] for i in range(len(f) - 1))


# formula agreement tolerance for the chain's two radius identities
FORMULA_TOL = 1e-8


def implication_chain(s: Splitting, tols: Tolerances | None = None) -> ChainReport:
    """Evaluate all seven chain conditions on a weak regular splitting."""
    tols = tols or s.tols
    _require_class(s, SplitClass.PROPER_WEAK_REGULAR, "implication_chain")
    au = s.a_pinv @ s.u
    av = s.a_pinv @ s.v
    rho_uv = spectral_radius(s.h, tols)
    rho_au = spectral_radius(au, tols)
    rho_av = spectral_radius(av, tols)

    flag_a = is_nonneg(au, tols)
    flag_b = rho_au > 0.0 and abs(rho_uv - (rho_au - 1.0) / rho_au) <= FORMULA_TOL
    flag_c = rho_uv < 1.0
    n = s.h.shape[0]
    i_minus_h = np.eye(n) - s.h
    if np.linalg.svd(i_minus_h, compute_uv=False).min() > tols.subspace_tol:
        flag_d = is_nonneg(np.linalg.inv(i_minus_h), tols)
    else:
        flag_d = False
    flag_e = is_nonneg(av, tols)
    flag_f = dominates(av, s.h, tols)
    flag_g = flag_c and abs(rho_uv - rho_av / (1.0 + rho_av)) <= FORMULA_TOL

    return ChainReport(
        pinv_u_nonneg=flag_a,
        radius_from_au_ok=flag_b,
        radius_lt_one=flag_c,
        resolvent_nonneg=flag_d,
        pinv_v_nonneg=flag_e,
        pinv_v_dominates=flag_f,
        radius_from_av_ok=flag_g,
        rho_uv=rho_uv,
        rho_au=rho_au,
        rho_av=rho_av,
    )


# comparison modes: 'tcomp1' pairs the pseudoinverse-domination hypothesis
# with A >= 0; 'tcomp2' swaps A >= 0 for positive row sums of the regular
# factor's pseudoinverse
COMPARE_MODES = ("tcomp1", "tcomp2")

# slack for radius-ordering conclusions
RADIUS_TOL = 1e-9


@dataclass(frozen=True)
class ComparisonReport:
    """Hypotheses and conclusion of a two-splitting comparison.

    The conclusion rho_first <= rho_second < 1 is reported unconditionally;
    the theorems guarantee it only when ``hypotheses_ok``.
    """

    mode: str
    hypotheses_ok: bool
    rho_first: float
    rho_second: float
    conclusion_ok: bool


def compare_splittings(
    first: Splitting,
    second: Splitting,
    mode: str = "tcomp1",
    tols: Tolerances | None = None,
) -> ComparisonReport:
    """Compare convergence rates of two splittings of one semi-monotone matrix.

    ``first`` must be at least weak regular, ``second`` regular.  Under either
    mode's hypotheses the first splitting converges at least as fast:
    rho(first) <= rho(second) < 1.
    """
    tols = tols or first.tols
    if mode not in COMPARE_MODES:
        raise ValueError(f"mode must be one of {COMPARE_MODES}, got {mode!r}")
    if first.shape != second.shape or np.abs(first.a - second.a).max() > tols.eq_tol:
        raise ValueError("both splittings must decompose the same matrix")
    _require_class(first, SplitClass.PROPER_WEAK_REGULAR, "compare_splittings(first)")
    _require_class(second, SplitClass.PROPER_REGULAR, "compare_splittings(second)")
    if not is_nonneg(first.a_pinv, tols):
        raise ValueError("compare_splittings needs a semi-monotone matrix")

    dominated = dominates(first.u_pinv, second.u_pinv, tols)
    if mode == "tcomp1":
        hypotheses = is_nonneg(first.a, tols) and dominated
    else:
        hypotheses = dominated and positive_row_sums(second.u_pinv, tols)

    rho_first = spectral_radius(first.h, tols)
    rho_second = spectral_radius(second.h, tols)
    conclusion = rho_first <= rho_second + RADIUS_TOL and rho_second < 1.0
    return ComparisonReport(
        mode=mode,
        hypotheses_ok=hypotheses,
        rho_first=rho_first,
        rho_second=rho_second,
        conclusion_ok=conclusion,
    )
