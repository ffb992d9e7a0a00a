"""Seeded random proper splittings for property campaigns.

Nonnegative semi-monotone matrices are built from positive rank-1 blocks laid
on a row/column partition: the pseudoinverse of such a block structure is
again blockwise rank-1 and nonnegative, so A >= 0 and pinv(A) >= 0 hold by
construction, with no zero rows or columns.

Two splitting families:

scaling    U = A / alpha, alpha in (0.1, 0.9).  Always proper regular, with
           rho(U+V) = 1 - alpha exactly.
perturbed  U = A + t * (A A+) E (A+ A) for random E >= 0 and small t, which
           keeps the range and null space of A; accepted only when the result
           classifies at least weak regular over a semi-monotone A, with
           rejection sampling.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matcore import DEFAULT_TOLS, Tolerances, as_matrix, orth_projectors
from .splitting import SplitClass, build_splitting, is_semimonotone

__all__ = [
    "GeneratedSplitting",
    "random_semimonotone",
    "scaling_splitting",
    "generate_random_splitting",
    "MAX_SHAPE",
    "FAMILIES",
]

MAX_SHAPE = 64
FAMILIES = ("scaling", "perturbed")
_MAX_RETRIES = 100


@dataclass(frozen=True, eq=False)
class GeneratedSplitting:
    """One generator draw: the pair, its family, and the acceptance verdict."""

    a: np.ndarray
    u: np.ndarray
    family: str
    seed: int
    accepted: bool
    attempts: int
    parameter: float


def _partition(rng: np.random.Generator, total: int, parts: int) -> list[int]:
    # sizes >= 1 summing to total
    cuts = np.sort(rng.choice(np.arange(1, total), size=parts - 1, replace=False))
    bounds = np.concatenate(([0], cuts, [total]))
    return list(np.diff(bounds))


def random_semimonotone(
    rng: np.random.Generator, shape: tuple[int, int], blocks: int | None = None
) -> np.ndarray:
    """Nonnegative matrix with nonnegative pseudoinverse (positive rank-1 blocks)."""
    m, n = shape
    if not (1 <= m <= MAX_SHAPE and 1 <= n <= MAX_SHAPE):
        raise ValueError(f"shape {shape} outside the supported range")
    r = int(blocks) if blocks is not None else int(rng.integers(1, min(m, n, 3) + 1))
    if not 1 <= r <= min(m, n):
        raise ValueError(f"block count {r} incompatible with shape {shape}")
    row_sizes = _partition(rng, m, r)
    col_sizes = _partition(rng, n, r)
    a = np.zeros((m, n))
    i = j = 0
    for mk, nk in zip(row_sizes, col_sizes):
        x = rng.uniform(0.2, 2.0, mk)
        y = rng.uniform(0.2, 2.0, nk)
        a[i : i + mk, j : j + nk] = np.outer(x, y)
        i += mk
        j += nk
    a.flags.writeable = False
    return a


def scaling_splitting(a, alpha: float) -> np.ndarray:
    """U = A / alpha; for semi-monotone A >= 0 this is proper regular with
    rho(U+V) = 1 - alpha."""
    a = as_matrix(a, "A")
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0, 1)")
    u = a / alpha
    u.flags.writeable = False
    return u


def generate_random_splitting(
    seed: int,
    shape: tuple[int, int] = (3, 3),
    family: str = "scaling",
    tols: Tolerances | None = None,
) -> GeneratedSplitting:
    """Deterministic draw of one (A, U) pair from the requested family."""
    tols = tols or DEFAULT_TOLS
    if family not in FAMILIES:
        raise ValueError(f"family must be one of {FAMILIES}, got {family!r}")
    rng = np.random.default_rng(seed)

    if family == "scaling":
        a = random_semimonotone(rng, shape)
        alpha = float(rng.uniform(0.1, 0.9))
        u = scaling_splitting(a, alpha)
        return GeneratedSplitting(
            a=a, u=u, family=family, seed=seed, accepted=True, attempts=1, parameter=alpha
        )

    a = u = None
    t = 0.0
    for attempt in range(1, _MAX_RETRIES + 1):
        # fresh A each attempt; U = A + t * P_R E P_C keeps R(A) and N(A)
        a = random_semimonotone(rng, shape)
        range_proj, row_proj = orth_projectors(a, tols)
        t = float(rng.uniform(0.05, 0.5))
        e = rng.uniform(0.0, 1.0, shape)
        u = a + t * (range_proj @ e @ row_proj)
        s = build_splitting(a, u, tols)
        if is_semimonotone(a, tols) and s.split_class >= SplitClass.PROPER_WEAK_REGULAR:
            return GeneratedSplitting(
                a=a,
                u=u,
                family=family,
                seed=seed,
                accepted=True,
                attempts=attempt,
                parameter=t,
            )
    return GeneratedSplitting(
        a=a, u=u, family=family, seed=seed, accepted=False, attempts=_MAX_RETRIES, parameter=t
    )
