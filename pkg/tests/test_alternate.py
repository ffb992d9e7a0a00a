"""Two-splitting alternation: composite operators, induced splitting, limits."""

import numpy as np
import pytest

from propersplit.alternate import (
    ALT_COMPARE_MODES,
    alternating_solve,
    build_alternating,
    compare_alternating,
    convergence_check,
    induced_splitting,
    mp_iterate,
)
from propersplit.matcore import pinv
from propersplit.solver import verify_solution
from propersplit.splitting import SplitClass, build_splitting

from conftest import (
    ALT_TRIPLES,
    BS_A,
    BS_M,
    BS_U,
    PL_A,
    PL_A_PINV,
    PL_B,
    PL_B_PINV,
    PL_H,
    PL_M,
    PL_U,
    arr,
)

ONES2 = arr([[1, 1], [1, 1]])


def scheme(name):
    return build_alternating(*ALT_TRIPLES[name])


def test_build_composite_operators():
    sch = scheme("padded_laplacian")
    assert np.abs(sch.h - PL_H).max() <= 1e-12
    assert sch.c.shape == (3, 2)
    # the collapsed constant term equals U+(V M+ + I)
    c = sch.second.u_pinv @ (sch.second.v @ sch.first.u_pinv + np.eye(2))
    assert np.abs(sch.c - c).max() <= 1e-12
    assert not sch.h.flags.writeable and not sch.c.flags.writeable


def test_build_names_offending_factor():
    with pytest.raises(ValueError, match=r"not a proper splitting of A: M$"):
        build_alternating(np.eye(2), np.diag([1.0, 0.0]), np.eye(2))
    with pytest.raises(ValueError, match=r"not a proper splitting of A: M, U$"):
        build_alternating(np.eye(2), np.diag([1.0, 0.0]), np.diag([1.0, 0.0]))


def test_one_composite_step_equals_two_half_steps():
    sch = scheme("padded_laplacian")
    rng = np.random.default_rng(21)
    x = rng.standard_normal(3)
    b = rng.standard_normal(2)
    y = sch.first.u_pinv @ (sch.first.v @ x + b)
    two_step = sch.second.u_pinv @ (sch.second.v @ y + b)
    one_step = sch.h @ x + sch.c @ b
    assert np.abs(one_step - two_step).max() <= 1e-12


def test_alternating_solve_padded_laplacian():
    rep = alternating_solve(scheme("padded_laplacian"), [1, 1])
    assert rep.converged
    assert np.abs(rep.final - np.array([1.0, 1.0, 0.0])).max() <= 1e-8
    assert verify_solution(PL_A, [1, 1], rep.final).matches_pinv_solution


def test_alternating_solve_start_independent_when_contractive():
    sch = scheme("padded_laplacian")
    rng = np.random.default_rng(3)
    finals = [alternating_solve(sch, [1, 1], x0=rng.standard_normal(3)).final for _ in range(6)]
    for f in finals[1:]:
        assert np.abs(f - finals[0]).max() <= 1e-8


def test_alternating_radius_one_freezes_start_component():
    # H is idempotent here: the iteration reaches an exact fixed point that
    # keeps the second coordinate of the start, so it never finds pinv(A) b
    sch = scheme("benzi_szyld")
    assert np.abs(sch.h - np.diag([0.0, 1.0])).max() <= 1e-12
    assert np.abs(sch.c - arr([[2 / 3, 1 / 3], [0, 0]])).max() <= 1e-12
    rep0 = alternating_solve(sch, [1, 1], x0=[0.0, 0.0])
    rep5 = alternating_solve(sch, [1, 1], x0=[0.0, 5.0])
    for rep, second in ((rep0, 0.0), (rep5, 5.0)):
        assert np.abs(rep.final - np.array([1.0, second])).max() <= 1e-10
        assert not verify_solution(BS_A, [1, 1], rep.final).matches_pinv_solution
    assert np.abs(rep0.final - rep5.final).max() > 1e-6


def test_convergence_check_theorem_case():
    rep = convergence_check(scheme("padded_laplacian"))
    assert rep.both_weak_regular
    assert rep.semimonotone
    assert rep.theorem_applies
    assert abs(rep.rho_h - 7 / 40) <= 1e-9


@pytest.mark.parametrize(
    "name,rho",
    [("benzi_szyld", 1.0), ("converse_gap", 3 / 8), ("mixed_sign_factors", 9 / 10), ("negated_factor", 1.0)],
)
def test_convergence_check_hypotheses_fail(name, rho):
    # the sufficient condition is not necessary: converse_gap and
    # mixed_sign_factors converge anyway, the other two do not
    rep = convergence_check(scheme(name))
    assert not rep.both_weak_regular
    assert not rep.theorem_applies
    assert abs(rep.rho_h - rho) <= 1e-9


def test_compare_alternating_conclusion_without_hypotheses():
    rep = compare_alternating(scheme("padded_laplacian"), mode="main33")
    assert not rep.hypotheses_ok  # A has a negative entry
    assert abs(rep.rho_h - 7 / 40) <= 1e-9
    assert abs(rep.rho_first - 2 / 5) <= 1e-9
    assert abs(rep.rho_second - 1 / 2) <= 1e-9
    assert rep.conclusion_ok
    rep2 = compare_alternating(scheme("padded_laplacian"), mode="main333")
    assert not rep2.hypotheses_ok  # third row sums of the factors vanish
    assert rep2.conclusion_ok


def test_compare_alternating_hypotheses_hold_on_scalings():
    sch = build_alternating(ONES2, 2 * ONES2, ONES2 / 0.8)
    for mode in ALT_COMPARE_MODES:
        rep = compare_alternating(sch, mode=mode)
        assert rep.hypotheses_ok
        assert rep.conclusion_ok
        assert abs(rep.rho_h - 0.1) <= 1e-9
        assert abs(min(rep.rho_first, rep.rho_second) - 0.2) <= 1e-9


def test_compare_alternating_never_raises_on_failed_hypotheses():
    for name in ALT_TRIPLES:
        for mode in ALT_COMPARE_MODES:
            compare_alternating(scheme(name), mode=mode)
    with pytest.raises(ValueError):
        compare_alternating(scheme("padded_laplacian"), mode="main3333")


def test_induced_splitting_both_routes_agree():
    ind = induced_splitting(scheme("padded_laplacian"))
    assert np.abs(ind.b - PL_B).max() <= 1e-10
    resolvent_route = PL_A @ np.linalg.inv(np.eye(3) - PL_H)
    assert np.abs(ind.b - resolvent_route).max() <= 1e-10
    assert ind.hypotheses_ok


def test_induced_splitting_pinv_identities():
    sch = scheme("padded_laplacian")
    ind = induced_splitting(sch)
    b_pinv = pinv(ind.b)
    assert np.abs(b_pinv - PL_B_PINV).max() <= 1e-10
    assert np.abs(b_pinv - (np.eye(3) - PL_H) @ PL_A_PINV).max() <= 1e-10
    # the collapsed constant operator is exactly pinv(B)
    assert np.abs(b_pinv - sch.c).max() <= 1e-10
    assert np.abs(b_pinv @ ind.c - PL_H).max() <= 1e-10


def test_induced_splitting_classification():
    ind = induced_splitting(scheme("padded_laplacian"))
    assert ind.split_class >= SplitClass.PROPER_WEAK_REGULAR
    assert ind.split_class is SplitClass.PROPER_REGULAR
    assert (ind.c >= -1e-12).all()
    assert ind.splitting.proper


def test_induced_pinv_dominates_factors():
    sch = scheme("padded_laplacian")
    b_pinv = pinv(induced_splitting(sch).b)
    assert (b_pinv - sch.second.u_pinv).min() >= -1e-10
    assert (b_pinv - sch.first.u_pinv).min() >= -1e-10


def test_induced_splitting_is_unique():
    # any perturbation of B that moves B(I-H) breaks A = B(I-H)
    ind = induced_splitting(scheme("padded_laplacian"))
    delta = np.zeros((2, 3))
    delta[0, 0] = 1e-3
    assert np.abs((ind.b + delta) @ (np.eye(3) - PL_H) - PL_A).max() > 1e-6


@pytest.mark.parametrize("name", ["benzi_szyld", "negated_factor"])
def test_induced_splitting_needs_contraction(name):
    with pytest.raises(ValueError):
        induced_splitting(scheme(name))


def test_mp_iterate_reaches_pinv():
    rep = mp_iterate(scheme("padded_laplacian"))
    assert rep.converged
    assert rep.final.shape == (3, 2)
    assert np.linalg.norm(rep.final - PL_A_PINV) <= 1e-8


def test_mp_iterate_trivial_scheme_is_immediate():
    rep = mp_iterate(build_alternating(PL_A, PL_A, PL_A))
    assert rep.converged
    assert rep.iterations <= 2
    assert np.abs(rep.final - PL_A_PINV).max() <= 1e-10


def test_mp_iterate_idempotent_composite_misses_pinv():
    sch = scheme("benzi_szyld")
    rep = mp_iterate(sch)
    # the matrix recursion freezes at c itself, far from inv(A)
    assert np.abs(rep.final - sch.c).max() <= 1e-10
    assert np.linalg.norm(rep.final - np.linalg.inv(BS_A)) > 0.1


def test_alternating_solve_validates_inputs():
    sch = scheme("padded_laplacian")
    with pytest.raises(ValueError):
        alternating_solve(sch, [1, 1, 1])
    with pytest.raises(ValueError):
        alternating_solve(sch, [1, 1], x0=[1, 1])


def test_factor_splittings_classified_on_build():
    # each benzi_szyld factor alone has a nonnegative iteration matrix with
    # radius zero; neither pseudoinverse is nonnegative, so weak regularity
    # fails and the alternation loses the convergence guarantee
    sch = scheme("benzi_szyld")
    for s in (sch.first, sch.second):
        assert s.split_class is SplitClass.PROPER_NONNEGATIVE
        assert abs(np.linalg.eigvals(s.h)).max() <= 1e-12
    assert build_splitting(BS_A, BS_M).split_class is SplitClass.PROPER_NONNEGATIVE
