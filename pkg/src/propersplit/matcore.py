"""Dense-matrix foundation: validated arrays, the Moore-Penrose inverse,
orthogonal projectors, subspace-equality tests, entrywise order predicates,
and the minimum-norm least-squares solve.

Every public function accepts anything ``np.asarray`` turns into a real 2-D
array (vectors may be 1-D) and hands back read-only float64 arrays, so results
can be cached and shared without defensive copies.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

__all__ = [
    "NumericalError",
    "Tolerances",
    "as_matrix",
    "as_vector",
    "pinv",
    "numerical_rank",
    "orth_projectors",
    "subspace_equal",
    "entrywise_cmp",
    "is_nonneg",
    "dominates",
    "positive_row_sums",
    "min_norm_lsq",
]


class NumericalError(RuntimeError):
    """A numerical routine failed to converge (SVD or eigenvalue iteration)."""


@dataclass(frozen=True)
class Tolerances:
    """Tolerance bundle shared by every predicate.

    Parameters
    ----------
    rank_tol_factor : float
        Multiplier on the dimension-scaled cutoff ``max(m, n) * sigma_max *
        ulp(1)`` below which singular values are treated as zero.
    subspace_tol : float
        Max-entry distance between orthogonal projectors under which two
        subspaces count as equal.
    order_tol : float
        Slack for entrywise ">= 0" tests; strict positivity uses ``> order_tol``.
    eq_tol : float
        Max-entry (or 2-norm, where stated) tolerance for identity checks.
    """

    rank_tol_factor: float = 1.0
    subspace_tol: float = 1e-10
    order_tol: float = 1e-12
    eq_tol: float = 1e-10

    def __post_init__(self) -> None:
        for name in ("rank_tol_factor", "subspace_tol", "order_tol", "eq_tol"):
            if not getattr(self, name) >= 0.0:
                raise ValueError(f"{name} must be >= 0")

    @classmethod
    def from_env(cls) -> "Tolerances":
        """Build defaults, letting PROPERSPLIT_* environment variables override.

        Recognised: PROPERSPLIT_RANK_TOL_FACTOR, PROPERSPLIT_SUBSPACE_TOL,
        PROPERSPLIT_ORDER_TOL, PROPERSPLIT_EQ_TOL.
        """
        kwargs = {}
        for field, var in (
            ("rank_tol_factor", "PROPERSPLIT_RANK_TOL_FACTOR"),
            ("subspace_tol", "PROPERSPLIT_SUBSPACE_TOL"),
            ("order_tol", "PROPERSPLIT_ORDER_TOL"),
            ("eq_tol", "PROPERSPLIT_EQ_TOL"),
        ):
            raw = os.environ.get(var)
            if raw is not None:
                kwargs[field] = float(raw)
        return cls(**kwargs)


DEFAULT_TOLS = Tolerances()


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Validate and freeze a real 2-D float64 array.

    Rejects non-finite entries up front: every predicate downstream assumes
    finite values, so NaN/Inf must not propagate.
    """
    arr = np.array(a, dtype=np.float64, order="C", copy=True)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got ndim={arr.ndim}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} must have positive dimensions, got {arr.shape}")
    if not np.isfinite(arr).all():
        raise ValueError(f"{name} contains non-finite entries")
    arr.flags.writeable = False
    return arr


def as_vector(b, length: int | None = None, name: str = "vector") -> np.ndarray:
    """Validate a vector given as a 1-D array or a single-column matrix.

    Returns a read-only 1-D float64 array.
    """
    arr = np.array(b, dtype=np.float64, copy=True)
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0]
    if arr.ndim != 1:
        raise ValueError(f"{name} must be 1-D or a single-column matrix")
    if length is not None and arr.shape[0] != length:
        raise ValueError(f"{name} has length {arr.shape[0]}, expected {length}")
    if not np.isfinite(arr).all():
        raise ValueError(f"{name} contains non-finite entries")
    arr.flags.writeable = False
    return arr


def _rank_cutoff(s: np.ndarray, shape: tuple[int, int], tols: Tolerances) -> float:
    # dimension-scaled cutoff; s is sorted descending so s[0] = sigma_max
    if s.size == 0 or s[0] == 0.0:
        return 0.0
    return tols.rank_tol_factor * max(shape) * np.finfo(np.float64).eps * s[0]


def pinv(a, tols: Tolerances | None = None) -> np.ndarray:
    """Moore-Penrose inverse via SVD with a dimension-scaled rank cutoff.

    Singular values at or below ``rank_tol_factor * max(m, n) * sigma_max *
    ulp(1)`` are truncated to zero, so rank decisions are explicit and
    reproducible.

    Parameters
    ----------
    a : array_like
        Real matrix, any shape.
    tols : Tolerances, optional

    Returns
    -------
    ndarray
        The unique G with AGA=A, GAG=G, (AG)^T=AG, (GA)^T=GA.
    """
    tols = tols or DEFAULT_TOLS
    a = as_matrix(a)
    try:
        u, s, vt = np.linalg.svd(a, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"SVD did not converge: {exc}") from exc
    cutoff = _rank_cutoff(s, a.shape, tols)
    s_inv = np.where(s > cutoff, 1.0 / np.where(s > cutoff, s, 1.0), 0.0)
    g = (vt.T * s_inv) @ u.T
    g.flags.writeable = False
    return g


def numerical_rank(a, tols: Tolerances | None = None) -> int:
    """Number of singular values above the rank cutoff used by :func:`pinv`."""
    tols = tols or DEFAULT_TOLS
    a = as_matrix(a)
    try:
        s = np.linalg.svd(a, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"SVD did not converge: {exc}") from exc
    return int(np.count_nonzero(s > _rank_cutoff(s, a.shape, tols)))


def orth_projectors(a, tols: Tolerances | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Orthogonal projectors (A A^+, A^+ A) onto the range and the row space."""
    a = as_matrix(a)
    g = pinv(a, tols)
    range_proj = a @ g
    rowspace_proj = g @ a
    range_proj.flags.writeable = False
    rowspace_proj.flags.writeable = False
    return range_proj, rowspace_proj


def subspace_equal(a, b, tols: Tolerances | None = None) -> tuple[bool, bool]:
    """Compare ranges and null spaces of two same-shaped matrices.

    Equality is measured through projector distance: the subspaces agree
    exactly when the orthogonal projectors coincide, so
    ``range_equal  <=> max|AA^+ - BB^+| <= subspace_tol`` and
    ``null_equal   <=> max|A^+A - B^+B| <= subspace_tol``.

    Returns
    -------
    (range_equal, nullspace_equal) : tuple of bool
    """
    tols = tols or DEFAULT_TOLS
    a = as_matrix(a, "A")
    b = as_matrix(b, "B")
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    pa, qa = orth_projectors(a, tols)
    pb, qb = orth_projectors(b, tols)
    range_equal = bool(np.abs(pa - pb).max() <= tols.subspace_tol)
    null_equal = bool(np.abs(qa - qb).max() <= tols.subspace_tol)
    return range_equal, null_equal


def entrywise_cmp(a, b=None, mode: str = "nonneg", tols: Tolerances | None = None) -> bool:
    """Entrywise order predicate.

    mode='nonneg'            every entry of A >= -order_tol (B ignored)
    mode='dominates'         A - B is nonneg in the same slack sense
    mode='positive_row_sums' every row sum of A > order_tol (B ignored)
    """
    tols = tols or DEFAULT_TOLS
    a = as_matrix(a, "A")
    if mode == "nonneg":
        return bool((a >= -tols.order_tol).all())
    if mode == "dominates":
        if b is None:
            raise ValueError("dominates mode needs a second matrix")
        b = as_matrix(b, "B")
        if a.shape != b.shape:
            raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
        return bool((a - b >= -tols.order_tol).all())
    if mode == "positive_row_sums":
        return bool((a.sum(axis=1) > tols.order_tol).all())
    raise ValueError(f"unknown mode {mode!r}")


def is_nonneg(a, tols: Tolerances | None = None) -> bool:
    return entrywise_cmp(a, mode="nonneg", tols=tols)


def dominates(a, b, tols: Tolerances | None = None) -> bool:
    return entrywise_cmp(a, b, mode="dominates", tols=tols)


def positive_row_sums(a, tols: Tolerances | None = None) -> bool:
    return entrywise_cmp(a, mode="positive_row_sums", tols=tols)


def min_norm_lsq(a, b, tols: Tolerances | None = None) -> np.ndarray:
    """Minimum-norm least-squares solution x = A^+ b.

    The result lies in the row space of A (A^+ A x = x) and satisfies the
    normal equations A^T (A x - b) = 0.
    """
    a = as_matrix(a, "A")
    x = pinv(a, tols) @ as_vector(b, length=a.shape[0], name="b")
    x.flags.writeable = False
    return x
