"""Structure-preserving decompositions of quaternion matrices.

Everything here works directly on the four real parts; unitary reductions
use generalized Householder reflections.  For a quaternion vector u the
reflection H = I - 2 v v* with

    v = (u - a e1) / ||u - a e1||,   a = -(u1/|u1|) ||u||   (a = -||u|| if u1 = 0)

maps u to a e1, and the phase-corrected transform

    H0 = diag(a*/|a|, I) H

maps u to the real nonnegative multiple ||u|| e1.  Chaining H0 steps keeps
R factors, bidiagonal cores and tridiagonal cores real, so the remaining
work is ordinary real dense linear algebra.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .core import (
    NonConvergenceError,
    QMatrix,
    Quaternion,
    RankDeficiencyError,
    _qmatmul,
    _qmatmul_real,
    _qmul_arrays,
)

_EPS = float(np.finfo(np.float64).eps)
_IDENT = np.array([1.0, 0.0, 0.0, 0.0])


@dataclass(frozen=True)
class QrResult:
    q: QMatrix
    r: QMatrix


def rank_k_product(u: QMatrix, s: np.ndarray, v: QMatrix) -> QMatrix:
    """U diag(s) V* for real s, without forming the diagonal middle factor."""
    if u.ncols != len(s) or v.ncols != len(s):
        raise ValueError("factor widths do not match the number of singular values")
    scaled = QMatrix(v.data * np.asarray(s, dtype=np.float64), copy=False)
    return u.matmul(scaled.adjoint())


@dataclass(frozen=True)
class QsvdResult:
    u: QMatrix
    s: np.ndarray
    v: QMatrix

    def reconstruct(self) -> QMatrix:
        return rank_k_product(self.u, self.s, self.v)


@dataclass(frozen=True)
class EigResult:
    v: QMatrix
    lam: np.ndarray


@dataclass(frozen=True)
class BidiagResult:
    p: QMatrix
    d: np.ndarray
    w: QMatrix


# ---------------------------------------------------------------------------
# Householder kernels on raw part arrays
# ---------------------------------------------------------------------------

def _vec_adj(v: np.ndarray) -> np.ndarray:
    """(4, s) column -> (4, 1, s) conjugated row."""
    out = v[:, None, :].copy()
    out[1:] *= -1.0
    return out


def _conj_scalar(a: np.ndarray) -> np.ndarray:
    return np.array([a[0], -a[1], -a[2], -a[3]])


def _house_vector(u: np.ndarray):
    """Reflector data for a quaternion column u of shape (4, s).

    Returns (v, phase, norm, a) with v the unit reflector, phase = a*/|a|
    (identity quaternion when u = 0) and norm = ||u||.
    """
    normu = float(np.sqrt(np.sum(u * u)))
    if normu == 0.0:
        return np.zeros_like(u), _IDENT.copy(), 0.0, np.zeros(4)
    u1 = u[:, 0]
    mod1 = float(np.sqrt(np.sum(u1 * u1)))
    if mod1 > 0.0:
        a = -(u1 / mod1) * normu
    else:
        a = np.array([-normu, 0.0, 0.0, 0.0])
    w = u.copy()
    w[:, 0] -= a
    nw = float(np.sqrt(np.sum(w * w)))
    v = w / nw
    phase = _conj_scalar(a) / normu
    return v, phase, normu, a


def _apply_h0_left(block: np.ndarray, v: np.ndarray, phase: np.ndarray) -> np.ndarray:
    """H0 @ block for block of shape (4, s, t)."""
    vb = _qmatmul(_vec_adj(v), block)
    out = block - 2.0 * _qmatmul(v[:, :, None], vb)
    out[:, 0, :] = _qmul_arrays(phase[:, None], out[:, 0, :])
    return out


def _apply_h0_adjoint_left(block: np.ndarray, v: np.ndarray, phase: np.ndarray) -> np.ndarray:
    """H0* @ block; the phase row-scaling happens before the reflection."""
    out = block.copy()
    out[:, 0, :] = _qmul_arrays(_conj_scalar(phase)[:, None], out[:, 0, :])
    vb = _qmatmul(_vec_adj(v), out)
    out -= 2.0 * _qmatmul(v[:, :, None], vb)
    return out


def _apply_h0_adjoint_right(block: np.ndarray, v: np.ndarray, phase: np.ndarray) -> np.ndarray:
    """block @ H0* for block of shape (4, s, t) with v of length t."""
    bv = _qmatmul(block, v[:, :, None])
    out = block - 2.0 * _qmatmul(bv, _vec_adj(v))
    out[:, :, 0] = _qmul_arrays(out[:, :, 0], _conj_scalar(phase)[:, None])
    return out


@dataclass(frozen=True)
class HouseholderH0:
    """Phase-corrected Householder transform H0 = diag(a*/|a|, I)(I - 2vv*)."""

    v: np.ndarray
    phase: np.ndarray
    norm: float

    @property
    def size(self) -> int:
        return self.v.shape[1]

    def apply(self, m: QMatrix) -> QMatrix:
        """H0 @ m."""
        if m.nrows != self.size:
            raise ValueError("row count does not match transform size")
        return QMatrix(_apply_h0_left(m.data.copy(), self.v, self.phase), copy=False)

    def apply_adjoint(self, m: QMatrix) -> QMatrix:
        """H0* @ m."""
        if m.nrows != self.size:
            raise ValueError("row count does not match transform size")
        return QMatrix(_apply_h0_adjoint_left(m.data, self.v, self.phase), copy=False)


def householder_reflector(u: QMatrix):
    """Reflector (v, a) for a quaternion column vector u (s-by-1).

    (I - 2 v v*) u = a e1 with |a| = ||u||; the sign convention
    a = -(u1/|u1|) ||u|| avoids cancellation for every input.
    """
    if u.ncols != 1:
        raise ValueError("reflector input must be a column vector")
    v, _, _, a = _house_vector(u.data[:, :, 0])
    return QMatrix(v[:, :, None]), Quaternion(*a)


def householder_h0(u: QMatrix) -> HouseholderH0:
    """Transform with H0 @ u = ||u|| e1 (leading entry real nonnegative)."""
    if u.ncols != 1:
        raise ValueError("transform input must be a column vector")
    v, phase, normu, _ = _house_vector(u.data[:, :, 0])
    return HouseholderH0(v, phase, normu)


# ---------------------------------------------------------------------------
# QR factorizations
# ---------------------------------------------------------------------------

def householder_qr(a: QMatrix, thin: bool = True) -> QrResult:
    """Householder QR with real nonnegative diagonal of R.

    thin=True returns Q (m, n) and R (n, n) and requires m >= n; thin=False
    returns the full Q (m, m) and R (m, n).
    """
    m, n = a.shape
    if thin and m < n:
        raise ValueError("thin QR requires m >= n")
    r = a.data.copy()
    reflectors = []
    for k in range(min(m, n)):
        v, phase, normu, _ = _house_vector(r[:, k:, k])
        r[:, k:, k:] = _apply_h0_left(r[:, k:, k:], v, phase)
        r[:, k, k] = (normu, 0.0, 0.0, 0.0)
        r[:, k + 1:, k] = 0.0
        reflectors.append((k, v, phase))
    ncols_q = n if thin else m
    q = np.zeros((4, m, ncols_q))
    q[0] = np.eye(m, ncols_q)
    for k, v, phase in reversed(reflectors):
        q[:, k:, :] = _apply_h0_adjoint_left(q[:, k:, :], v, phase)
    rmat = r[:, :n, :] if thin else r
    return QrResult(QMatrix(q, copy=False), QMatrix(np.ascontiguousarray(rmat), copy=False))


def qmgs(a: QMatrix, reorthogonalize: bool = False) -> QrResult:
    """Modified Gram-Schmidt QR of a tall quaternion matrix.

    Raises RankDeficiencyError when a column collapses below
    n * eps * 100 * ||A||_F after orthogonalization.  With
    reorthogonalize=True every column gets a second orthogonalization
    pass before the rank check.
    """
    m, n = a.shape
    if m < n:
        raise ValueError("qmgs requires m >= n")
    tol = n * _EPS * 100.0 * a.norm()
    x = a.data.copy()
    q = np.zeros((4, m, n))
    r = np.zeros((4, n, n))
    passes = 2 if reorthogonalize else 1
    for k in range(n):
        col = x[:, :, k].copy()
        for _ in range(passes):
            for j in range(k):
                qj = q[:, :, j]
                rjk = _qmatmul(_vec_adj(qj), col[:, :, None])[:, 0, 0]
                r[:, j, k] += rjk
                col -= _qmul_arrays(qj, rjk[:, None])
        nc = float(np.sqrt(np.sum(col * col)))
        if nc <= tol:
            raise RankDeficiencyError(
                f"column {k} is numerically dependent (norm {nc:.3e}, tol {tol:.3e})")
        r[0, k, k] = nc
        q[:, :, k] = col / nc
    return QrResult(QMatrix(q, copy=False), QMatrix(r, copy=False))


# ---------------------------------------------------------------------------
# bidiagonalization and the real bidiagonal SVD kernel
# ---------------------------------------------------------------------------

def bidiagonalize(b: QMatrix) -> BidiagResult:
    """Reduce B (l-by-n, l <= n) to a real upper bidiagonal D = P* B W.

    Left H0 steps clear each column below the diagonal, right H0 steps
    clear each row beyond the superdiagonal; both leave real nonnegative
    band entries.  Returns unitary P (l, l), real D (l, n) and unitary
    W (n, n).
    """
    l, n = b.shape
    if l > n:
        raise ValueError("bidiagonalize expects row count <= column count")
    t = b.data.copy()
    left = []
    right = []
    for k in range(l):
        v, phase, normu, _ = _house_vector(t[:, k:, k])
        t[:, k:, k:] = _apply_h0_left(t[:, k:, k:], v, phase)
        t[:, k, k] = (normu, 0.0, 0.0, 0.0)
        t[:, k + 1:, k] = 0.0
        left.append((k, v, phase))
        if k + 1 < n:
            row_adj = t[:, k, k + 1:].copy()
            row_adj[1:] *= -1.0
            v2, phase2, normu2, _ = _house_vector(row_adj)
            t[:, k:, k + 1:] = _apply_h0_adjoint_right(t[:, k:, k + 1:], v2, phase2)
            t[:, k, k + 1] = (normu2, 0.0, 0.0, 0.0)
            t[:, k, k + 2:] = 0.0
            right.append((k, v2, phase2))
    d = np.zeros((l, n))
    idx = np.arange(l)
    d[idx, idx] = t[0, idx, idx]
    if n > 1:
        j = np.arange(min(l, n - 1))
        d[j, j + 1] = t[0, j, j + 1]
    p = np.zeros((4, l, l))
    p[0] = np.eye(l)
    for k, v, phase in reversed(left):
        p[:, k:, :] = _apply_h0_adjoint_left(p[:, k:, :], v, phase)
    w = np.zeros((4, n, n))
    w[0] = np.eye(n)
    for k, v2, phase2 in reversed(right):
        w[:, k + 1:, :] = _apply_h0_adjoint_left(w[:, k + 1:, :], v2, phase2)
    return BidiagResult(QMatrix(p, copy=False), d, QMatrix(w, copy=False))


def _rot(a: float, b: float):
    """Givens rotation: c*a + s*b = r, -s*a + c*b = 0."""
    if b == 0.0:
        return 1.0, 0.0, a
    r = math.hypot(a, b)
    return a / r, b / r, r


def _rot_cols(b, v, i, j, c, s):
    """Right rotation mixing columns i, j of the working matrix and of V."""
    gi = c * b[:, i] + s * b[:, j]
    gj = -s * b[:, i] + c * b[:, j]
    b[:, i] = gi
    b[:, j] = gj
    gi = c * v[:, i] + s * v[:, j]
    gj = -s * v[:, i] + c * v[:, j]
    v[:, i] = gi
    v[:, j] = gj


def _rot_rows(b, u, i, j, c, s):
    """Left rotation: row_i <- c row_i + s row_j, row_j <- -s row_i + c row_j."""
    gi = c * b[i, :] + s * b[j, :]
    gj = -s * b[i, :] + c * b[j, :]
    b[i, :] = gi
    b[j, :] = gj
    gi = c * u[:, i] + s * u[:, j]
    gj = -s * u[:, i] + c * u[:, j]
    u[:, i] = gi
    u[:, j] = gj


def _qr_step(b, u, v, lo, hi):
    """One implicit-shift QR sweep on the active block [lo, hi]."""
    dm = b[hi - 1, hi - 1]
    dn = b[hi, hi]
    em = b[hi - 1, hi]
    emm = b[hi - 2, hi - 1] if hi - 1 > lo else 0.0
    t11 = dm * dm + emm * emm
    t12 = dm * em
    t22 = dn * dn + em * em
    # Wilkinson shift: eigenvalue of the trailing 2x2 of B^T B closest to t22
    half = 0.5 * (t11 - t22)
    if half == 0.0 and t12 == 0.0:
        mu = t22
    else:
        denom = half + math.copysign(math.hypot(half, t12), half if half != 0.0 else 1.0)
        mu = t22 - t12 * t12 / denom
    y = b[lo, lo] * b[lo, lo] - mu
    z = b[lo, lo] * b[lo, lo + 1]
    for i in range(lo, hi):
        c, s, _ = _rot(y, z)
        _rot_cols(b, v, i, i + 1, c, s)
        c, s, _ = _rot(b[i, i], b[i + 1, i])
        _rot_rows(b, u, i, i + 1, c, s)
        b[i + 1, i] = 0.0
        if i < hi - 1:
            y = b[i, i + 1]
            z = b[i, i + 2]


def _chase_zero_row(b, u, i, hi):
    """Diagonal (i, i) is zero: rotate the rest of row i away to split."""
    for j in range(i + 1, hi + 1):
        c, s, _ = _rot(b[j, j], b[i, j])
        _rot_rows(b, u, j, i, c, s)
        b[i, j] = 0.0


def _chase_zero_col(b, v, lo, hi):
    """Trailing diagonal (hi, hi) is zero: rotate column hi away."""
    for j in range(hi - 1, lo - 1, -1):
        c, s, _ = _rot(b[j, j], b[j, hi])
        _rot_cols(b, v, j, hi, c, s)
        b[j, hi] = 0.0


def real_bidiag_svd(d):
    """SVD of a real upper bidiagonal l-by-n matrix, l <= n.

    Implicit-shift QR with Wilkinson shifts and deflation; the extra corner
    entry of a rectangular band (position (l-1, l)) is first eliminated by
    a chain of right Givens rotations.  Returns (U, s, V) with U (l, l),
    s descending, V (n, l); iteration is capped at 30 l steps and
    NonConvergenceError is raised beyond that.
    """
    d = np.atleast_2d(np.asarray(d, dtype=np.float64))
    l, n = d.shape
    if l > n:
        raise ValueError("real_bidiag_svd expects row count <= column count")
    band = np.zeros_like(d)
    idx = np.arange(l)
    band[idx, idx] = d[idx, idx]
    if n > 1:
        j = np.arange(min(l, n - 1))
        band[j, j + 1] = d[j, j + 1]
    scale = float(np.max(np.abs(band))) if band.size else 0.0
    if float(np.max(np.abs(d - band))) > 1e-12 * max(scale, 1.0):
        raise ValueError("input matrix is not bidiagonal")

    m2 = min(n, l + 1)
    b = band[:, :m2].copy()
    u = np.eye(l)
    v = np.eye(m2)
    if m2 > l and b[l - 1, l] != 0.0:
        # push the corner entry up and out of column l
        for j in range(l - 1, -1, -1):
            c, s, _ = _rot(b[j, j], b[j, l])
            _rot_cols(b, v, j, l, c, s)
            b[j, l] = 0.0

    if scale > 0.0 and l > 1:
        max_steps = 30 * l
        steps = 0
        while True:
            for i in range(l - 1):
                if b[i, i + 1] != 0.0 and abs(b[i, i + 1]) <= _EPS * (
                        abs(b[i, i]) + abs(b[i + 1, i + 1])):
                    b[i, i + 1] = 0.0
            hi = l - 1
            while hi > 0 and b[hi - 1, hi] == 0.0:
                hi -= 1
            if hi == 0:
                break
            lo = hi
            while lo > 0 and b[lo - 1, lo] != 0.0:
                lo -= 1
            if steps >= max_steps:
                raise NonConvergenceError(
                    f"bidiagonal SVD did not converge in {max_steps} steps")
            steps += 1
            zero_i = None
            for i in range(lo, hi + 1):
                if abs(b[i, i]) <= _EPS * scale:
                    zero_i = i
                    break
            if zero_i is not None:
                b[zero_i, zero_i] = 0.0
                if zero_i < hi:
                    _chase_zero_row(b, u, zero_i, hi)
                else:
                    _chase_zero_col(b, v, lo, hi)
                continue
            _qr_step(b, u, v, lo, hi)

    s = np.diagonal(b)[:l].copy()
    neg = s < 0.0
    s[neg] = -s[neg]
    u[:, neg] = -u[:, neg]
    order = np.argsort(-s, kind="stable")
    s = s[order]
    u = np.ascontiguousarray(u[:, order])
    vsel = v[:, :l][:, order]
    vn = np.zeros((n, l))
    vn[:m2] = vsel
    return u, s, vn


# ---------------------------------------------------------------------------
# QSVD and Hermitian eigendecomposition
# ---------------------------------------------------------------------------

def qsvd(a: QMatrix) -> QsvdResult:
    """Full (thin) quaternion SVD, A = U diag(s) V* with s real descending.

    Wide inputs go through the adjoint; tall inputs are first reduced by
    Householder QR, the square core is bidiagonalized and the real
    bidiagonal SVD finishes the job.
    """
    m, n = a.shape
    if m < n:
        res = qsvd(a.adjoint())
        return QsvdResult(res.v, res.s, res.u)
    if m > n:
        pre = householder_qr(a, thin=True)
        core = pre.r
    else:
        pre = None
        core = a
    bd = bidiagonalize(core)
    ur, s, vr = real_bidiag_svd(bd.d)
    u_small = QMatrix(_qmatmul_real(bd.p.data, ur), copy=False)
    u = pre.q.matmul(u_small) if pre is not None else u_small
    v = QMatrix(_qmatmul_real(bd.w.data, vr), copy=False)
    return QsvdResult(u, s, v)


def qsvd_truncate(a: QMatrix, k: int) -> QsvdResult:
    """Leading k singular triplets of A (best rank-k approximation)."""
    m, n = a.shape
    if not 1 <= k <= min(m, n):
        raise ValueError(f"k must be in [1, {min(m, n)}], got {k}")
    res = qsvd(a)
    return QsvdResult(res.u.cols(slice(0, k)), res.s[:k].copy(),
                      res.v.cols(slice(0, k)))


def eig_hermitian(a: QMatrix, rtol: float = 1e-10) -> EigResult:
    """Eigendecomposition A = V diag(lam) V* of a Hermitian quaternion matrix.

    H0 similarity steps reduce A to a real symmetric tridiagonal matrix
    whose (real) eigenvalues are returned in descending order.
    """
    n, n2 = a.shape
    if n != n2:
        raise ValueError("eig_hermitian requires a square matrix")
    if not a.is_hermitian(rtol=rtol):
        raise ValueError("matrix is not Hermitian within tolerance")
    t = 0.5 * (a.data + a.adjoint().data)
    reflectors = []
    for k in range(n - 1):
        v, phase, normu, _ = _house_vector(t[:, k + 1:, k])
        t[:, k + 1:, k:] = _apply_h0_left(t[:, k + 1:, k:], v, phase)
        t[:, k:, k + 1:] = _apply_h0_adjoint_right(t[:, k:, k + 1:], v, phase)
        t[:, k + 1, k] = (normu, 0.0, 0.0, 0.0)
        t[:, k + 2:, k] = 0.0
        t[:, k, k + 1] = (normu, 0.0, 0.0, 0.0)
        t[:, k, k + 2:] = 0.0
        reflectors.append((k, v, phase))
    diag = t[0].diagonal().copy()
    if n == 1:
        return EigResult(QMatrix.identity(1), diag)
    off = t[0].diagonal(1).copy()
    lam_asc, z = eigh_tridiagonal(diag, off)
    lam = lam_asc[::-1].copy()
    z = np.ascontiguousarray(z[:, ::-1])
    vq = np.zeros((4, n, n))
    vq[0] = z
    for k, v, phase in reversed(reflectors):
        vq[:, k + 1:, :] = _apply_h0_adjoint_left(vq[:, k + 1:, :], v, phase)
    return EigResult(QMatrix(vq, copy=False), lam)


def spectral_norm(a: QMatrix, rtol: float = 1e-10, maxiter: int = 500) -> float:
    """Largest singular value.

    Small matrices (min dimension <= 64) go through the full QSVD; larger
    ones use power iteration on A*A with a deterministic seeded start.  If
    the iteration cap is hit a warning is emitted and the best estimate is
    returned.
    """
    m, n = a.shape
    if min(m, n) <= 64:
        return float(qsvd(a).s[0])
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(0x5BEC7BA1)))
    v = rng.standard_normal((4, n, 1))
    v /= np.sqrt(np.sum(v * v))
    adj = a.adjoint().data
    est = 0.0
    for _ in range(maxiter):
        w = _qmatmul(a.data, v)
        nw = float(np.sqrt(np.sum(w * w)))
        if nw == 0.0:
            return 0.0
        w /= nw
        v = _qmatmul(adj, w)
        nv = float(np.sqrt(np.sum(v * v)))
        if nv == 0.0:
            return 0.0
        v /= nv
        prev, est = est, nv
        if abs(est - prev) <= rtol * est:
            return est
    warnings.warn("spectral norm power iteration hit its cap; returning best estimate",
                  RuntimeWarning)
    return est
