"""Text formats for quaternion matrices and singular value lists.

QMAT format::

    QMAT <m> <n>
    w x y z          (m*n entry lines, row-major, 17 significant digits)

Lines starting with ``#`` are comments and may appear anywhere.  The
singular-value sidecar starts with ``QSVD <r>`` followed by one value per
line.
"""

from __future__ import annotations

import numpy as np

from .core import QMatrix

FLOAT_FMT = "%.17g"


def write_qmat(a: QMatrix, path, comment: str | None = None) -> None:
    m, n = a.shape
    with open(path, "w") as fh:
        fh.write(f"QMAT {m} {n}\n")
        if comment:
            for line in comment.splitlines():
                fh.write(f"# {line}\n")
        flat = a.data.reshape(4, m * n).T  # row-major entries, (w x y z)
        for row in flat:
            fh.write(" ".join(FLOAT_FMT % v for v in row) + "\n")


def _content_lines(path):
    with open(path) as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            yield line


def read_qmat(path) -> QMatrix:
    lines = _content_lines(path)
    try:
        header = next(lines)
    except StopIteration:
        raise ValueError(f"{path}: empty QMAT file") from None
    fields = header.split()
    if len(fields) != 3 or fields[0] != "QMAT":
        raise ValueError(f"{path}: expected 'QMAT <m> <n>' header")
    m, n = int(fields[1]), int(fields[2])
    if m < 1 or n < 1:
        raise ValueError(f"{path}: invalid dimensions {m}x{n}")
    entries = np.empty((m * n, 4))
    count = 0
    for line in lines:
        vals = line.split()
        if len(vals) != 4:
            raise ValueError(f"{path}: entry line needs 4 fields, got {line!r}")
        if count >= m * n:
            raise ValueError(f"{path}: too many entry lines")
        entries[count] = [float(v) for v in vals]
        count += 1
    if count != m * n:
        raise ValueError(f"{path}: expected {m * n} entries, found {count}")
    return QMatrix(entries.T.reshape(4, m, n))


def write_singular_values(s, path) -> None:
    s = np.asarray(s, dtype=np.float64).ravel()
    with open(path, "w") as fh:
        fh.write(f"QSVD {s.size}\n")
        for v in s:
            fh.write(FLOAT_FMT % v + "\n")


def read_singular_values(path) -> np.ndarray:
    values = []
    lines = list(_content_lines(path))
    if not lines:
        raise ValueError(f"{path}: empty singular value file")
    declared = None
    start = 0
    if lines[0].split()[0] == "QSVD":
        fields = lines[0].split()
        if len(fields) != 2:
            raise ValueError(f"{path}: expected 'QSVD <count>' header")
        declared = int(fields[1])
        start = 1
    for line in lines[start:]:
        values.append(float(line.split()[0]))
    if declared is not None and declared != len(values):
        raise ValueError(
            f"{path}: header declares {declared} values, found {len(values)}")
    return np.array(values)
