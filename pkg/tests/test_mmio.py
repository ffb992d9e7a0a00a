"""Plain-text matrix exchange format reader/writer."""

import numpy as np
import pytest

from propersplit.mmio import ParseError, dumps, loads, read_matrix, write_matrix


def test_loads_array_is_column_major():
    text = "%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n4\n"
    a = loads(text)
    assert np.array_equal(a, np.array([[1.0, 3.0], [2.0, 4.0]]))
    assert not a.flags.writeable


def test_loads_skips_comments_and_blanks():
    text = (
        "%%MatrixMarket matrix array real general\n"
        "% a comment\n"
        "\n"
        "1 2\n"
        "% another\n"
        "5.5  -3\n"
    )
    assert np.array_equal(loads(text), np.array([[5.5, -3.0]]))


def test_loads_coordinate_with_explicit_zero_pattern():
    text = (
        "%%MatrixMarket matrix coordinate real general\n"
        "3 2 2\n"
        "3 1 7.0\n"
        "1 2 -1.5\n"
    )
    a = loads(text)
    want = np.zeros((3, 2))
    want[2, 0] = 7.0
    want[0, 1] = -1.5
    assert np.array_equal(a, want)


@pytest.mark.parametrize(
    "text",
    [
        "%%NotTheBanner matrix array real general\n1 1\n0\n",
        "%%MatrixMarket tensor array real general\n1 1\n0\n",
        "%%MatrixMarket matrix array complex general\n1 1\n0\n",
        "%%MatrixMarket matrix array real symmetric\n1 1\n0\n",
        "%%MatrixMarket matrix array real\n1 1\n0\n",  # five tokens required
        "%%MatrixMarket matrix array real general\n1 2\n0\n",  # too few values
        "%%MatrixMarket matrix array real general\n1 1\n0\n1\n",  # too many
        "%%MatrixMarket matrix array real general\n1 1\nnan\n",
        "%%MatrixMarket matrix array real general\n0 1\n",
        "%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 5\n",  # row 3
        "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 5\n1 1 6\n",
        "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 5\n",
        "%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1\n",  # 2 fields
    ],
)
def test_loads_rejects_malformed_input(text):
    with pytest.raises(ParseError):
        loads(text)


def test_parse_error_is_value_error():
    assert issubclass(ParseError, ValueError)


def test_header_is_case_insensitive():
    text = "%%MatrixMarket MATRIX Array Real GENERAL\n1 1\n2\n"
    assert loads(text)[0, 0] == 2.0


@pytest.mark.parametrize("fmt", ["array", "coordinate"])
def test_roundtrip_preserves_values_exactly(fmt):
    rng = np.random.default_rng(5)
    a = rng.standard_normal((4, 3))
    a[1, 2] = 0.0
    out = loads(dumps(a, fmt=fmt))
    assert np.array_equal(out, a)  # %.17g is lossless for float64


def test_dumps_vector_becomes_column():
    out = loads(dumps(np.array([1.0, 2.0])))
    assert out.shape == (2, 1)


def test_dumps_comment_and_validation():
    text = dumps(np.eye(2), comment="unit matrix")
    assert "% unit matrix" in text
    assert loads(text).tolist() == [[1.0, 0.0], [0.0, 1.0]]
    with pytest.raises(ValueError):
        dumps(np.array([[np.inf]]))
    with pytest.raises(ValueError):
        dumps(np.eye(2), fmt="harwell")


def test_file_roundtrip(tmp_path):
    path = tmp_path / "a.mtx"
    a = np.array([[0.25, -7.0], [0.0, 1e-30]])
    write_matrix(path, a, fmt="coordinate")
    assert np.array_equal(read_matrix(path), a)
    with pytest.raises(OSError):
        read_matrix(tmp_path / "missing.mtx")
