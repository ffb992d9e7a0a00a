"""Compiled and plain kernel paths must agree in value and status."""

import os
import subprocess
import sys

import numpy as np
import pytest

from propersplit import _kernels as K


def _contraction(seed=0, n=4):
    rng = np.random.default_rng(seed)
    h = rng.uniform(0.0, 1.0, (n, n))
    h *= 0.5 / np.abs(np.linalg.eigvals(h)).max()
    c = rng.standard_normal(n)
    x0 = rng.standard_normal(n)
    return h, c, x0


def test_fixed_point_vector_paths_agree():
    h, c, x0 = _contraction()
    jit = K.fixed_point_vector(h, c, x0, 500, 1e-12, 1e12)
    py = K.fixed_point_vector_py(h, c, x0, 500, 1e-12, 1e12)
    assert jit[1] == py[1] and jit[2] == py[2]
    assert np.abs(jit[0] - py[0]).max() <= 1e-12
    assert np.abs(jit[3] - py[3]).max() <= 1e-12


def test_fixed_point_matrix_paths_agree():
    h, _, _ = _contraction(1)
    c = np.random.default_rng(2).standard_normal((4, 3))
    x0 = np.zeros((4, 3))
    jit = K.fixed_point_matrix(h, c, x0, 500, 1e-12, 1e12)
    py = K.fixed_point_matrix_py(h, c, x0, 500, 1e-12, 1e12)
    assert jit[1] == py[1] and jit[2] == py[2]
    assert np.abs(jit[0] - py[0]).max() <= 1e-12


def test_power_iteration_paths_agree():
    h = np.random.default_rng(3).uniform(0.0, 1.0, (5, 5))
    jit = K.power_iteration(h, 10_000, 1e-10, 1e-14, 10)
    py = K.power_iteration_py(h, 10_000, 1e-10, 1e-14, 10)
    assert jit[3] == py[3] == K.TOL_MET
    assert abs(jit[0] - py[0]) <= 1e-12
    assert np.abs(jit[1] - py[1]).max() <= 1e-12


def test_neumann_and_gelfand_paths_agree():
    h, _, _ = _contraction(4)
    assert np.abs(K.neumann_sum(h, 60) - K.neumann_sum_py(h, 60)).max() <= 1e-12
    assert abs(K.gelfand_radius(h, 40) - K.gelfand_radius_py(h, 40)) <= 1e-12


def test_vector_kernel_statuses():
    h, c, x0 = _contraction()
    assert K.fixed_point_vector(h, c, x0, 500, 1e-12, 1e12)[2] == K.TOL_MET
    assert K.fixed_point_vector(h, c, x0, 2, 1e-15, 1e12)[2] == K.MAX_ITERS
    grow = np.eye(2) * 2.0
    out = K.fixed_point_vector(grow, np.zeros(2), np.ones(2), 500, 1e-15, 1e3)
    assert out[2] == K.DIVERGED
    assert out[1] < 500


def test_power_iteration_stalls_on_symmetric_pair():
    # eigenvalues are {5, -5, 0} and the -5 eigenvector is not orthogonal to
    # the all-ones start: iterates two-cycle while the Rayleigh estimate is
    # exactly constant, so the kernel reports the stall early
    h = np.array([[0.0, 3.0, 4.0], [3.0, 0.0, 0.0], [4.0, 0.0, 0.0]])
    rho, x, resid, status = K.power_iteration_py(h, 10_000, 1e-10, 1e-14, 10)
    assert status == K.STALLED
    assert resid > 1e-10


def test_power_iteration_two_cycle_exhausts_budget():
    # nonsymmetric +/-rho pair: the Rayleigh estimate itself two-cycles, so
    # neither the residual check nor the stall detector fires
    from conftest import H1

    out = K.power_iteration_py(np.ascontiguousarray(H1), 300, 1e-10, 1e-14, 10)
    assert out[3] == K.MAX_ITERS


def test_power_iteration_zero_image_shortcut():
    h = np.array([[0.0, 1.0], [0.0, 0.0]])
    rho, x, resid, status = K.power_iteration(h, 100, 1e-10, 1e-14, 10)
    assert status == K.TOL_MET
    assert rho == 0.0
    assert (x >= 0).all() and abs(x.sum() - 1.0) <= 1e-12


def test_status_codes_are_distinct():
    assert len({K.TOL_MET, K.MAX_ITERS, K.DIVERGED, K.STALLED}) == 4


def test_numba_enabled_in_default_environment():
    numba = pytest.importorskip("numba")
    assert numba is not None
    if os.environ.get("PROPERSPLIT_NO_NUMBA", "").strip().lower() in ("1", "true", "yes", "on"):
        assert not K.NUMBA_ENABLED
    else:
        assert K.NUMBA_ENABLED
        assert K.fixed_point_vector is not K.fixed_point_vector_py


def test_env_flag_forces_python_path():
    code = (
        "from propersplit import _kernels as K;"
        "assert not K.NUMBA_ENABLED;"
        "assert K.fixed_point_vector is K.fixed_point_vector_py;"
        "import numpy as np;"
        "h = np.array([[0.5]]); out = K.fixed_point_vector(h, np.ones(1), np.zeros(1), 200, 1e-12, 1e12);"
        "assert out[2] == K.TOL_MET and abs(out[0][0] - 2.0) < 1e-9"
    )
    env = dict(os.environ, PROPERSPLIT_NO_NUMBA="1")
    subprocess.run([sys.executable, "-c", code], check=True, env=env)
