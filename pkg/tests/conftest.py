"""Shared pinned matrices for the test suite.

All expected numbers here were frozen from independent hand or oracle
computations (rank-1 formulas, 2x2 inverses, characteristic polynomials)
before the implementation existed.
"""

from pathlib import Path

import numpy as np
import pytest

REPO = Path(__file__).resolve().parent.parent

SQ2 = 2.0**0.5


def arr(rows):
    return np.array(rows, dtype=float)


# 2x3 weak-regular-but-not-regular pair
A1 = arr([[9, -8, 15], [-6, 6, -10]])
U1 = arr([[6, -4, 10], [-3, 4, -5]])
U1_PINV = arr([[3 / 34, 3 / 34], [1 / 4, 1 / 2], [5 / 34, 5 / 34]])
H1 = arr([[0, 3 / 17, 0], [3 / 4, 0, 5 / 4], [0, 5 / 17, 0]])
RHO1 = SQ2 / 2

# rank-1 pair with a zero column, U = 2A
A2 = arr([[0, 2, 1], [0, 4, 2]])
U2 = 2 * A2
A2_PINV = arr([[0, 0], [2 / 25, 4 / 25], [1 / 25, 2 / 25]])

# invertible 2x2 whose alternation has radius 1
BS_A = arr([[2, -1], [-1, 2]])
BS_M = arr([[2, 1], [-1, 1]])
BS_U = arr([[1, -1], [1, 2]])

# alternation converges, factors not weak regular
CG_A = arr([[1, 0, 1], [0, 1, 1]])
CG_M = arr([[4, 0, 4], [2, 2, 4]])
CG_U = arr([[2, 0, 2], [1, 2, 3]])

# proper but non-regular factors, composite radius 9/10
MS_A = arr([[1, -2, 3], [2, 3, 4]])
MS_M = arr([[1, -2, 3], [-4, -6, -8]])
MS_U = arr([[3, -6, 9], [5, 7.5, 10]])

# U = -A: nonnegative iteration matrix, radius 2
NF_A = arr([[1, 0, 0], [0, 0, 0]])
NF_M = 2 * NF_A
NF_U = -NF_A

# padded 2x2 stiffness block, the worked induced-splitting case
PL_A = arr([[2, -1, 0], [-1, 2, 0]])
PL_M = arr([[2, -1, 0], [-1, 3, 0]])
PL_U = arr([[3, -1, 0], [-1, 3, 0]])
PL_H = arr([[0, 1 / 8, 0], [0, 7 / 40, 0], [0, 0, 0]])
PL_A_PINV = arr([[2 / 3, 1 / 3], [1 / 3, 2 / 3], [0, 0]])
PL_B = arr([[2, -10 / 11, 0], [-1, 25 / 11, 0]])
PL_B_PINV = arr([[5 / 8, 1 / 4], [11 / 40, 11 / 20], [0, 0]])

# (A, M, U) triples for the alternating scheme, keyed by case name
ALT_TRIPLES = {
    "benzi_szyld": (BS_A, BS_M, BS_U),
    "converse_gap": (CG_A, CG_M, CG_U),
    "mixed_sign_factors": (MS_A, MS_M, MS_U),
    "negated_factor": (NF_A, NF_M, NF_U),
    "padded_laplacian": (PL_A, PL_M, PL_U),
}

# every pinned (A, U) proper splitting, for identity sweeps
PROPER_PAIRS = [
    ("rect_weak_regular", A1, U1),
    ("rank1_rescaled", A2, U2),
    ("benzi_szyld_m", BS_A, BS_M),
    ("benzi_szyld_u", BS_A, BS_U),
    ("converse_gap_m", CG_A, CG_M),
    ("converse_gap_u", CG_A, CG_U),
    ("mixed_sign_m", MS_A, MS_M),
    ("mixed_sign_u", MS_A, MS_U),
    ("negated_m", NF_A, NF_M),
    ("negated_u", NF_A, NF_U),
    ("padded_m", PL_A, PL_M),
    ("padded_u", PL_A, PL_U),
]


@pytest.fixture(scope="session")
def shipped_manifest():
    path = REPO / "cases" / "manifest.json"
    if not path.exists():
        pytest.skip("cases/manifest.json not generated")
    return path
