"""Hot iteration loops.

Each kernel is written once in numba-compatible numpy and compiled with
@njit when numba is importable.  Setting PROPERSPLIT_NO_NUMBA=1 forces the
plain-Python path; the ``_py``-suffixed names always point at the uncompiled
implementations so the two paths can be compared directly (see
benchmarks/bench_kernels.py).
"""

import os

import numpy as np

_flag = os.environ.get("PROPERSPLIT_NO_NUMBA", "").strip().lower()
NUMBA_REQUESTED = _flag not in ("1", "true", "yes", "on")

if NUMBA_REQUESTED:
    try:
        from numba import njit

        NUMBA_ENABLED = True
    except ImportError:
        NUMBA_ENABLED = False
else:
    NUMBA_ENABLED = False

# stop statuses shared with the solver layer
TOL_MET = 0
MAX_ITERS = 1
DIVERGED = 2
STALLED = 3


def fixed_point_vector_py(h, c, x0, max_iters, rel_tol, guard_limit):
    # x <- H x + c until the successive change is small, the budget runs out,
    # or the iterate norm crosses guard_limit.
    x = x0.copy()
    changes = np.empty(max_iters)
    status = MAX_ITERS
    done = 0
    for k in range(max_iters):
        x_new = h @ x + c
        d = x_new - x
        change = np.sqrt(np.sum(d * d))
        changes[k] = change
        done = k + 1
        x = x_new
        norm_x = np.sqrt(np.sum(x * x))
        if change <= rel_tol * (1.0 + norm_x):
            status = TOL_MET
            break
        if norm_x > guard_limit:
            status = DIVERGED
            break
    return x, done, status, changes[:done]


def fixed_point_matrix_py(h, c, x0, max_iters, rel_tol, guard_limit):
    # matrix flavour of the same loop; norms are Frobenius
    x = x0.copy()
    changes = np.empty(max_iters)
    status = MAX_ITERS
    done = 0
    for k in range(max_iters):
        x_new = h @ x + c
        d = x_new - x
        change = np.sqrt(np.sum(d * d))
        changes[k] = change
        done = k + 1
        x = x_new
        norm_x = np.sqrt(np.sum(x * x))
        if change <= rel_tol * (1.0 + norm_x):
            status = TOL_MET
            break
        if norm_x > guard_limit:
            status = DIVERGED
            break
    return x, done, status, changes[:done]


def power_iteration_py(h, max_iters, resid_tol, stall_rtol, stall_window):
    # Power iteration from the all-ones vector, L1-normalized iterates.
    # Reports STALLED when the Rayleigh estimate freezes (relative change
    # below stall_rtol for stall_window consecutive steps) without the
    # residual converging.
    n = h.shape[0]
    x = np.ones(n) / n
    y = h @ x
    rho = 0.0
    resid = np.inf
    stall = 0
    status = MAX_ITERS
    for _ in range(max_iters):
        rho_new = np.dot(x, y) / np.dot(x, x)
        resid = np.abs(y - rho_new * x).max()
        if resid <= resid_tol:
            rho = rho_new
            status = TOL_MET
            break
        if np.abs(rho_new - rho) <= stall_rtol * max(1.0, np.abs(rho_new)):
            stall += 1
            if stall >= stall_window:
                rho = rho_new
                status = STALLED
                break
        else:
            stall = 0
        rho = rho_new
        s = np.sum(np.abs(y))
        if s == 0.0:
            # exact zero image: x is a null vector, so (0, x) is a Perron pair
            rho = 0.0
            resid = 0.0
            status = TOL_MET
            break
        x = y / s
        y = h @ x
    s = np.sum(np.abs(x))
    if s > 0.0:
        x = x / s
    return rho, x, resid, status


def neumann_sum_py(h, terms):
    # Horner form of I + H + ... + H^terms
    n = h.shape[0]
    eye = np.eye(n)
    s = np.eye(n)
    for _ in range(terms):
        s = eye + h @ s
    return s


def gelfand_radius_py(h, squarings):
    # Repeated squaring with max-entry normalization; the accumulated log
    # scale recovers rho = lim ||H^(2^k)||^(1/2^k).
    b = h.copy()
    log_scale = 0.0
    steps = 0
    for _ in range(squarings):
        m = np.abs(b).max()
        if m == 0.0:
            return 0.0
        log_scale = 2.0 * (log_scale + np.log(m))
        b = (b / m) @ (b / m)
        steps += 1
    m = np.abs(b).max()
    if m == 0.0:
        return 0.0
    return float(np.exp((log_scale + np.log(m)) / 2.0 ** steps))


if NUMBA_ENABLED:
    fixed_point_vector = njit(cache=True)(fixed_point_vector_py)
    fixed_point_matrix = njit(cache=True)(fixed_point_matrix_py)
    power_iteration = njit(cache=True)(power_iteration_py)
    neumann_sum = njit(cache=True)(neumann_sum_py)
    gelfand_radius = njit(cache=True)(gelfand_radius_py)
else:
    fixed_point_vector = fixed_point_vector_py
    fixed_point_matrix = fixed_point_matrix_py
    power_iteration = power_iteration_py
    neumann_sum = neumann_sum_py
    gelfand_radius = gelfand_radius_py
