"""Quaternion scalars and dense quaternion matrices.

A quaternion is q = w + x i + y j + z k with i^2 = j^2 = k^2 = ijk = -1.
Matrices over the quaternions are stored as four real float64 parts in a
single (4, m, n) array, so the column representation [Q0; Q1; Q2; Q3]
(shape (4m, n)) is a zero-copy reshape and every product reduces to real
BLAS-3 calls.

All QMatrix instances are immutable (the backing array is marked
read-only), which makes them safe to share across threads; every
operation here is a pure function of its inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

DEFAULT_RTOL = 1e-12

# sign pattern of the 4x4 real block matrix that represents left
# multiplication by a quaternion: row r, column c of PART_SIGNS tells how
# part c of the right factor feeds part r of the product
_RC_SIGNS = np.array(
    [
        [1, -1, -1, -1],
        [1, 1, -1, 1],
        [1, 1, 1, -1],
        [1, -1, 1, 1],
    ],
    dtype=np.float64,
)
# block layout of the real counterpart: entry (r, c) holds part _RC_PART[r][c]
# of the matrix, scaled by _RC_SIGN[r][c]
_RC_PART = [
    [0, 1, 2, 3],
    [1, 0, 3, 2],
    [2, 3, 0, 1],
    [3, 2, 1, 0],
]
_RC_SIGN = [
    [1, -1, -1, -1],
    [1, 1, -1, 1],
    [1, 1, 1, -1],
    [1, -1, 1, 1],
]


class NonConvergenceError(RuntimeError):
    """An iterative kernel exceeded its iteration cap."""


class RankDeficiencyError(RuntimeError):
    """Orthogonalization ran into a numerically dependent column."""


class IllConditionedError(RuntimeError):
    """A linear solve was rejected because the system is near-singular."""


@dataclass(frozen=True)
class Quaternion:
    """Scalar quaternion w + x i + y j + z k."""

    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def modulus(self) -> float:
        return math.sqrt(self.w ** 2 + self.x ** 2 + self.y ** 2 + self.z ** 2)

    __abs__ = modulus

    def __add__(self, other):
        other = _as_quaternion(other)
        return Quaternion(self.w + other.w, self.x + other.x,
                          self.y + other.y, self.z + other.z)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_quaternion(other)
        return Quaternion(self.w - other.w, self.x - other.x,
                          self.y - other.y, self.z - other.z)

    def __rsub__(self, other):
        return _as_quaternion(other) - self

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        other = _as_quaternion(other)
        a, b = self, other
        return Quaternion(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )

    def __rmul__(self, other):
        return _as_quaternion(other) * self

    def inverse(self) -> "Quaternion":
        m2 = self.w ** 2 + self.x ** 2 + self.y ** 2 + self.z ** 2
        if m2 == 0.0:
            raise ZeroDivisionError("inverse of zero quaternion")
        return Quaternion(self.w / m2, -self.x / m2, -self.y / m2, -self.z / m2)

    def to_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    @classmethod
    def from_array(cls, arr) -> "Quaternion":
        w, x, y, z = np.asarray(arr, dtype=np.float64).ravel()
        return cls(float(w), float(x), float(y), float(z))


def _as_quaternion(value) -> Quaternion:
    if isinstance(value, Quaternion):
        return value
    if isinstance(value, (int, float, np.floating, np.integer)):
        return Quaternion(float(value))
    raise TypeError(f"cannot interpret {type(value)!r} as a quaternion")


def qmul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Hamilton product of two scalar quaternions."""
    return _as_quaternion(a) * _as_quaternion(b)


# ---------------------------------------------------------------------------
# part-array kernels (shared by the matrix type and the decompositions)
# ---------------------------------------------------------------------------

def _qmul_arrays(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Elementwise (broadcast) Hamilton product of two (4, ...) part arrays."""
    a0, a1, a2, a3 = a
    b0, b1, b2, b3 = b
    return np.stack([
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    ])


def _qconj(a: np.ndarray) -> np.ndarray:
    out = a.copy()
    out[1:] *= -1.0
    return out


def _qmatmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product of two part arrays, a: (4, m, n), b: (4, n, l) -> (4, m, l).

    All sixteen real block products A_a @ B_b are computed in a single real
    GEMM on the stacked column representations and then combined with the
    quaternion multiplication signs, so the whole product is one BLAS-3 call.
    """
    t = np.tensordot(a, b, axes=([2], [1]))  # (4, m, 4, l)
    return np.stack([
        t[0, :, 0] - t[1, :, 1] - t[2, :, 2] - t[3, :, 3],
        t[0, :, 1] + t[1, :, 0] + t[2, :, 3] - t[3, :, 2],
        t[0, :, 2] - t[1, :, 3] + t[2, :, 0] + t[3, :, 1],
        t[0, :, 3] + t[1, :, 2] - t[2, :, 1] + t[3, :, 0],
    ])


def _qmatmul_real(a: np.ndarray, r: np.ndarray) -> np.ndarray:
    """Right-multiply a (4, m, n) part array by a real (n, l) matrix."""
    return a @ r


def _real_qmatmul(r: np.ndarray, a: np.ndarray) -> np.ndarray:
    """Left-multiply a (4, m, n) part array by a real (l, m) matrix."""
    return np.einsum("lm,pmn->pln", r, a, optimize=True)


# ---------------------------------------------------------------------------
# QMatrix
# ---------------------------------------------------------------------------

class QMatrix:
    """Dense m-by-n quaternion matrix stored as a (4, m, n) float64 array.

    ``data[0]`` is the real part, ``data[1:4]`` the i/j/k parts.  Instances
    are immutable; all arithmetic returns new matrices.
    """

    __slots__ = ("data",)

    def __init__(self, data, copy: bool = True):
        arr = np.array(data, dtype=np.float64, copy=copy, order="C")
        if arr.ndim != 3 or arr.shape[0] != 4:
            raise ValueError("QMatrix data must have shape (4, m, n)")
        if arr.shape[1] < 1 or arr.shape[2] < 1:
            raise ValueError("matrix dimensions must be positive")
        arr.setflags(write=False)
        self.data = arr

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_parts(cls, p0, p1, p2, p3) -> "QMatrix":
        parts = [np.atleast_2d(np.asarray(p, dtype=np.float64)) for p in (p0, p1, p2, p3)]
        if len({p.shape for p in parts}) != 1:
            raise ValueError("all four parts must share one shape")
        return cls(np.stack(parts), copy=False)

    @classmethod
    def from_real(cls, a) -> "QMatrix":
        a = np.atleast_2d(np.asarray(a, dtype=np.float64))
        data = np.zeros((4,) + a.shape)
        data[0] = a
        return cls(data, copy=False)

    @classmethod
    def zeros(cls, m: int, n: int) -> "QMatrix":
        return cls(np.zeros((4, m, n)), copy=False)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        data = np.zeros((4, n, n))
        data[0] = np.eye(n)
        return cls(data, copy=False)

    # -- basic queries ------------------------------------------------------

    @property
    def shape(self) -> tuple:
        return self.data.shape[1:]

    @property
    def nrows(self) -> int:
        return self.data.shape[1]

    @property
    def ncols(self) -> int:
        return self.data.shape[2]

    def part(self, idx: int) -> np.ndarray:
        return self.data[idx]

    def entry(self, i: int, j: int) -> Quaternion:
        return Quaternion(*(float(self.data[p, i, j]) for p in range(4)))

    def __repr__(self):
        m, n = self.shape
        return f"QMatrix({m}x{n})"

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        self._check_same_shape(other)
        return QMatrix(self.data + other.data, copy=False)

    def __sub__(self, other):
        self._check_same_shape(other)
        return QMatrix(self.data - other.data, copy=False)

    def __neg__(self):
        return QMatrix(-self.data, copy=False)

    def __mul__(self, scalar):
        return QMatrix(self.data * float(scalar), copy=False)

    __rmul__ = __mul__

    def matmul(self, other: "QMatrix") -> "QMatrix":
        """Quaternion matrix product computed through real block GEMMs."""
        if self.ncols != other.nrows:
            raise ValueError(
                f"shape mismatch for product: {self.shape} @ {other.shape}")
        return QMatrix(_qmatmul(self.data, other.data), copy=False)

    def __matmul__(self, other):
        return self.matmul(other)

    def adjoint(self) -> "QMatrix":
        """Conjugate transpose."""
        out = self.data.transpose(0, 2, 1).copy()
        out[1:] *= -1.0
        return QMatrix(out, copy=False)

    def norm(self) -> float:
        """Frobenius norm, sqrt of the sum of squares of all four parts."""
        return float(np.sqrt(np.sum(self.data * self.data)))

    def cols(self, sel) -> "QMatrix":
        """New matrix from a column slice/index list."""
        return QMatrix(np.ascontiguousarray(self.data[:, :, sel]), copy=False)

    def is_hermitian(self, rtol: float = 1e-10) -> bool:
        if self.nrows != self.ncols:
            return False
        diff = (self - self.adjoint()).norm()
        return diff <= rtol * max(self.norm(), 1e-300)

    def _check_same_shape(self, other):
        if not isinstance(other, QMatrix):
            raise TypeError("expected a QMatrix operand")
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")


# ---------------------------------------------------------------------------
# free functions mirroring the matrix methods
# ---------------------------------------------------------------------------

def mat_mul(a: QMatrix, b: QMatrix) -> QMatrix:
    """Product of two quaternion matrices (dispatches to ``a.matmul``)."""
    return a.matmul(b)


def adjoint(a: QMatrix) -> QMatrix:
    return a.adjoint()


def frobenius_norm(a: QMatrix) -> float:
    return a.norm()


def column_rep(a: QMatrix) -> np.ndarray:
    """Column representation [Q0; Q1; Q2; Q3], a zero-copy (4m, n) view."""
    m, n = a.shape
    return a.data.reshape(4 * m, n)


def from_column_rep(c: np.ndarray) -> QMatrix:
    c = np.asarray(c, dtype=np.float64)
    if c.ndim != 2 or c.shape[0] % 4 != 0:
        raise ValueError("column representation must be 2-d with 4m rows")
    m = c.shape[0] // 4
    return QMatrix(c.reshape(4, m, c.shape[1]))


def real_counterpart(a: QMatrix) -> np.ndarray:
    """Real 4m-by-4n matrix representing left multiplication by ``a``.

    The map is an algebra homomorphism: the counterpart of a product is the
    product of counterparts, the counterpart of the adjoint is the
    transpose, and singular values of the counterpart are those of ``a``
    with multiplicity four.
    """
    blocks = [[_RC_SIGN[r][c] * a.data[_RC_PART[r][c]] for c in range(4)]
              for r in range(4)]
    return np.block(blocks)


def from_real_counterpart(r: np.ndarray) -> QMatrix:
    """Inverse of :func:`real_counterpart`; validates the block structure."""
    r = np.asarray(r, dtype=np.float64)
    if r.ndim != 2 or r.shape[0] % 4 or r.shape[1] % 4:
        raise ValueError("real counterpart must be 4m-by-4n")
    m, n = r.shape[0] // 4, r.shape[1] // 4
    cand = QMatrix(np.stack([r[i * m:(i + 1) * m, :n] for i in range(4)]))
    if not np.array_equal(real_counterpart(cand), r):
        raise ValueError("matrix does not have real-counterpart structure")
    return cand


def hermitian_det(a: QMatrix, eigenvalues, rtol: float = 1e-10) -> float:
    """Determinant of a Hermitian quaternion matrix, the product of its
    (real) eigenvalues.  The caller supplies the eigenvalues; this routine
    only checks Hermitian structure and multiplies."""
    if a.nrows != a.ncols:
        raise ValueError("determinant requires a square matrix")
    if not a.is_hermitian(rtol=rtol):
        raise ValueError("matrix is not Hermitian within tolerance")
    eigenvalues = np.asarray(eigenvalues, dtype=np.float64)
    if eigenvalues.shape != (a.nrows,):
        raise ValueError("need exactly n eigenvalues")
    return float(np.prod(eigenvalues))
