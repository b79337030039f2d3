"""QMAT and singular-value file round trips and format validation."""

import numpy as np
import pytest

from quatsvd.core import QMatrix
from quatsvd.fileio import (
    read_qmat,
    read_singular_values,
    write_qmat,
    write_singular_values,
)


def test_qmat_round_trip_bit_exact(tmp_path):
    rng = np.random.default_rng(0)
    a = QMatrix(rng.standard_normal((4, 5, 3)) * 1e3)
    path = tmp_path / "a.qmat"
    write_qmat(a, path)
    back = read_qmat(path)
    assert np.array_equal(back.data, a.data)


def test_qmat_comments_and_blank_lines(tmp_path):
    a = QMatrix.from_parts([[1.0]], [[2.0]], [[3.0]], [[4.0]])
    path = tmp_path / "a.qmat"
    write_qmat(a, path, comment="made by a test\nsecond line")
    text = path.read_text()
    assert "# made by a test" in text
    assert "# second line" in text
    # extra blanks and trailing comments must be tolerated
    path.write_text(text + "\n\n# trailing comment\n")
    back = read_qmat(path)
    assert back.entry(0, 0).to_array().tolist() == [1.0, 2.0, 3.0, 4.0]


def test_qmat_header_layout(tmp_path):
    a = QMatrix(np.arange(24.0).reshape(4, 3, 2))
    path = tmp_path / "a.qmat"
    write_qmat(a, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "QMAT 3 2"
    assert len(lines) == 1 + 6
    # entries are row-major: second line is entry (0, 1)
    w, x, y, z = (float(v) for v in lines[2].split())
    assert (w, x, y, z) == (1.0, 7.0, 13.0, 19.0)


@pytest.mark.parametrize("text", [
    "",
    "QMAT 2\n",
    "NOTQMAT 1 1\n0 0 0 0\n",
    "QMAT 0 2\n",
    "QMAT 1 1\n1 2 3\n",
    "QMAT 1 1\n1 2 3 4\n5 6 7 8\n",
    "QMAT 2 1\n1 2 3 4\n",
])
def test_qmat_rejects_malformed(tmp_path, text):
    path = tmp_path / "bad.qmat"
    path.write_text(text)
    with pytest.raises(ValueError):
        read_qmat(path)


def test_qmat_17_digit_precision(tmp_path):
    # a value needing all 17 significant digits survives the round trip
    val = 0.1 + 2 ** -52
    a = QMatrix.from_parts([[val]], [[-val]], [[1e-300]], [[1e300]])
    path = tmp_path / "p.qmat"
    write_qmat(a, path)
    assert np.array_equal(read_qmat(path).data, a.data)


def test_singular_values_round_trip(tmp_path):
    s = 0.9 ** np.arange(40)
    path = tmp_path / "s.txt"
    write_singular_values(s, path)
    assert path.read_text().splitlines()[0] == "QSVD 40"
    np.testing.assert_array_equal(read_singular_values(path), s)


def test_singular_values_headerless(tmp_path):
    path = tmp_path / "s.txt"
    path.write_text("1.0\n0.5\n0.25\n")
    np.testing.assert_array_equal(read_singular_values(path), [1.0, 0.5, 0.25])


def test_singular_values_count_mismatch(tmp_path):
    path = tmp_path / "s.txt"
    path.write_text("QSVD 3\n1.0\n0.5\n")
    with pytest.raises(ValueError):
        read_singular_values(path)


def test_singular_values_empty(tmp_path):
    path = tmp_path / "s.txt"
    path.write_text("# nothing\n")
    with pytest.raises(ValueError):
        read_singular_values(path)
