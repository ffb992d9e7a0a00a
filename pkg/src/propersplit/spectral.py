"""Spectral-radius and eigenvalue machinery behind every convergence predicate.

Spectra come from Hessenberg-reduction + shifted-QR iteration (LAPACK, via
numpy).  Two further estimators are kept deliberately independent of it:
``gelfand_radius`` (normalized repeated squaring) as a method-independent
cross-check, and ``perron_pair`` (power iteration) which also delivers the
nonnegative eigenvector that several comparison results rely on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .matcore import DEFAULT_TOLS, NumericalError, Tolerances, as_matrix, as_vector

__all__ = [
    "MAX_EIG_SIZE",
    "SpectrumReport",
    "spectral_radius",
    "eigenvalues",
    "perron_pair",
    "subinvariance_bound",
    "neumann_sum",
    "gelfand_radius",
]

# desk-scale cap: full spectra are only promised for small dense matrices
MAX_EIG_SIZE = 64


@dataclass(frozen=True, eq=False)
class SpectrumReport:
    """Spectral radius plus, for small square inputs, the full spectrum.

    eigenvalues are sorted by descending modulus, ties broken by descending
    real part; ``method`` names the algorithm that produced the report.
    """

    radius: float
    eigenvalues: tuple[complex, ...] | None
    method: str


def _square(h, name: str = "H") -> np.ndarray:
    h = as_matrix(h, name)
    if h.shape[0] != h.shape[1]:
        raise ValueError(f"{name} must be square, got {h.shape}")
    return h


def spectral_radius(h, tols: Tolerances | None = None) -> float:
    """Spectral radius of a square matrix (absolute accuracy ~1e-9 at n<=64)."""
    h = _square(h)
    try:
        eig = np.linalg.eigvals(h)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"QR iteration did not converge: {exc}") from exc
    return float(np.abs(eig).max())


def eigenvalues(h, tols: Tolerances | None = None) -> SpectrumReport:
    """Full spectrum with multiplicities, as a :class:`SpectrumReport`.

    The eigenvalue sum is checked against the trace; disagreement beyond
    1e-8*(1+|trace|) marks a failed iteration.
    """
    h = _square(h)
    n = h.shape[0]
    if n > MAX_EIG_SIZE:
        raise ValueError(f"matrix size {n} exceeds the eigenvalue cap {MAX_EIG_SIZE}")
    try:
        eig = np.linalg.eigvals(h)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"QR iteration did not converge: {exc}") from exc
    trace = float(np.trace(h))
    if abs(complex(eig.sum()) - trace) > 1e-8 * (1.0 + abs(trace)):
        raise NumericalError("eigenvalue sum disagrees with the trace")
    order = np.lexsort((-eig.real, -np.abs(eig)))
    eig = eig[order]
    return SpectrumReport(
        radius=float(abs(eig[0])),
        eigenvalues=tuple(complex(z) for z in eig),
        method="qr_iteration",
    )


def perron_pair(
    h,
    tols: Tolerances | None = None,
    max_iters: int = 50_000,
    resid_tol: float = 1e-8,
) -> tuple[float, np.ndarray]:
    """Perron root and a nonnegative eigenvector for a nonnegative matrix.

    Power iteration from the all-ones vector.  If the Rayleigh estimate
    stalls without the residual converging (two-cycles from matrices with a
    +/-rho eigenvalue pair, or tied moduli in separate blocks), the iteration
    restarts once on H + sigma*I with sigma = 1 + max|H|: the shift leaves
    eigenvectors alone, moves the Perron root to rho + sigma, and breaks the
    modulus tie.

    Returns
    -------
    (rho, x) : x >= 0, sum(x) = 1, and max|Hx - rho*x| <= 1e-8.
    """
    tols = tols or DEFAULT_TOLS
    h = _square(h)
    if not (h >= -tols.order_tol).all():
        raise ValueError("perron_pair needs an entrywise nonnegative matrix")
    rho, x, resid, status = _kernels.power_iteration(h, max_iters, resid_tol, 1e-14, 10)
    if status != _kernels.TOL_MET:
        sigma = 1.0 + float(np.abs(h).max())
        shifted = h + sigma * np.eye(h.shape[0])
        rho_s, x, _, status = _kernels.power_iteration(shifted, max_iters, resid_tol, 1e-14, 10)
        rho = rho_s - sigma
        resid = float(np.abs(h @ x - rho * x).max())
    if status != _kernels.TOL_MET or resid > resid_tol:
        raise NumericalError("power iteration stagnated; no Perron pair to tolerance")
    rho = max(rho, 0.0)
    x = np.ascontiguousarray(x)
    x.flags.writeable = False
    return float(rho), x


def subinvariance_bound(b, x, alpha: float, tols: Tolerances | None = None) -> bool:
    """Check the subinvariance inequality Bx <= alpha*x entrywise.

    For nonnegative B and strictly positive x, a true result certifies
    rho(B) <= alpha.
    """
    tols = tols or DEFAULT_TOLS
    b = _square(b, "B")
    if not (b >= -tols.order_tol).all():
        raise ValueError("B must be entrywise nonnegative")
    x = as_vector(x, length=b.shape[0], name="x")
    if not (x > tols.order_tol).all():
        raise ValueError("x must be entrywise positive")
    if not alpha >= 0.0:
        raise ValueError("alpha must be nonnegative")
    return bool((b @ x <= alpha * x + tols.order_tol).all())


def neumann_sum(h, terms: int) -> np.ndarray:
    """Partial Neumann sum I + H + ... + H^terms (Horner evaluation)."""
    h = _square(h)
    if terms < 0:
        raise ValueError("terms must be >= 0")
    s = _kernels.neumann_sum(np.ascontiguousarray(h), terms)
    s.flags.writeable = False
    return s


def gelfand_radius(h, squarings: int = 52) -> float:
    """Spectral-radius estimate by normalized repeated squaring.

    Method-independent of the QR path; after k squarings the estimate is
    ||H^(2^k)||^(1/2^k) in the max-entry norm, accurate to ~1e-9 relative
    for moderate k because norm constants and Jordan factors wash out as
    2^-k.
    """
    h = _square(h)
    if squarings < 1:
        raise ValueError("squarings must be >= 1")
    return float(_kernels.gelfand_radius(np.ascontiguousarray(h), squarings))
