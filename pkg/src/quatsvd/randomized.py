"""Randomized low-rank approximation of quaternion matrices.

The common scheme: draw a quaternion Gaussian test matrix, optionally run
a few power rounds to sharpen the spectrum, orthonormalize the sketch to
get a range basis Q, and finish with a small dense decomposition of the
projected matrix.  Sampling uses the counter-based Philox generator, so a
fixed (seed, trial) pair reproduces the same matrix bit for bit on any
worker.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import IllConditionedError, QMatrix, _qmatmul, mat_mul
from .decomp import (
    EigResult,
    eig_hermitian,
    householder_qr,
    qmgs,
    qsvd,
    rank_k_product,
)

ORTHO_METHODS = ("householder", "qmgs")


@dataclass(frozen=True)
class RandConfig:
    """Parameters of a randomized sketch.

    k: target rank, p: oversampling (l = k + p columns are drawn),
    q: power rounds, seed: base RNG seed, ortho: range orthonormalization
    ("householder" or "qmgs"), stabilize: re-orthonormalize between power
    half-steps.
    """

    k: int
    p: int = 4
    q: int = 0
    seed: int = 0
    ortho: str = "householder"
    stabilize: bool = False

    @property
    def l(self) -> int:
        return self.k + self.p

    def validate(self, m: int, n: int) -> None:
        if self.k < 1:
            raise ValueError("target rank k must be >= 1")
        if self.p < 1:
            raise ValueError("oversampling p must be >= 1")
        if self.q < 0:
            raise ValueError("power rounds q must be >= 0")
        if self.k + self.p > min(m, n):
            raise ValueError(
                f"k + p = {self.k + self.p} exceeds min(m, n) = {min(m, n)}")
        if self.ortho not in ORTHO_METHODS:
            raise ValueError(f"ortho must be one of {ORTHO_METHODS}")


@dataclass(frozen=True)
class LowRankApprox:
    """Rank-k factors U (m, k), s (k,), V (n, k) with A ~ U diag(s) V*."""

    u: QMatrix
    s: np.ndarray
    v: QMatrix
    residual_fro: float | None = None

    def reconstruct(self) -> QMatrix:
        return rank_k_product(self.u, self.s, self.v)


def _generator(seed: int, trial: int | None = None) -> np.random.Generator:
    if trial is None:
        ss = np.random.SeedSequence(int(seed))
    else:
        ss = np.random.SeedSequence(int(seed), spawn_key=(int(trial),))
    return np.random.Generator(np.random.Philox(ss))


def sample_gaussian(n: int, l: int, seed: int, trial: int | None = None) -> QMatrix:
    """n-by-l quaternion matrix with four independent N(0, 1) real parts.

    Identical (seed, trial) always yields the identical matrix; distinct
    trial indices give independent streams split off the same seed.
    """
    if n < 1 or l < 1:
        raise ValueError("matrix dimensions must be positive")
    rng = _generator(seed, trial)
    return QMatrix(rng.standard_normal((4, n, l)), copy=False)


def _orthonormalize(y: QMatrix, method: str) -> QMatrix:
    if method == "householder":
        return householder_qr(y, thin=True).q
    return qmgs(y).q


def sketch_range(a: QMatrix, cfg: RandConfig, trial: int | None = None) -> QMatrix:
    """Orthonormal basis Q (m, k+p) for the sketched range of A.

    Draws Omega, forms Y = A Omega, runs cfg.q power rounds
    Y <- A (A* Y), and orthonormalizes.  With cfg.stabilize the sketch is
    re-orthonormalized after every half-step, which costs two extra QR
    factorizations per round but keeps the columns well conditioned for
    slowly decaying spectra.
    """
    m, n = a.shape
    cfg.validate(m, n)
    omega = sample_gaussian(n, cfg.l, cfg.seed, trial)
    y = mat_mul(a, omega)
    adj = a.adjoint()
    for _ in range(cfg.q):
        if cfg.stabilize:
            y = _orthonormalize(y, cfg.ortho)
        yh = mat_mul(adj, y)
        if cfg.stabilize:
            yh = _orthonormalize(yh, cfg.ortho)
        y = mat_mul(a, yh)
    return _orthonormalize(y, cfg.ortho)


def _truncate(q: QMatrix, ub: QMatrix, s: np.ndarray, vb: QMatrix,
              keep: int, total_fro2: float) -> LowRankApprox:
    u = mat_mul(q, ub.cols(slice(0, keep)))
    v = vb.cols(slice(0, keep))
    s_out = s[:keep].copy()
    residual = float(np.sqrt(max(total_fro2 - float(np.sum(s_out ** 2)), 0.0)))
    return LowRankApprox(u, s_out, v, residual_fro=residual)


def randsvd(a: QMatrix, cfg: RandConfig, trial: int | None = None,
            keep_all: bool = False) -> LowRankApprox:
    """Randomized truncated quaternion SVD.

    Builds the range basis Q, projects B = Q* A, takes the full QSVD of the
    small B and keeps the top k triplets (all k+p when keep_all is set).
    residual_fro is exact for the returned truncation thanks to the
    orthogonal split ||A - A_k||_F^2 = ||A||_F^2 - sum of kept s^2.
    """
    q = sketch_range(a, cfg, trial)
    b = mat_mul(q.adjoint(), a)
    res = qsvd(b)
    keep = cfg.l if keep_all else cfg.k
    return _truncate(q, res.u, res.s, res.v, keep, a.norm() ** 2)


def prandsvd(a: QMatrix, cfg: RandConfig, trial: int | None = None,
             keep_all: bool = False) -> LowRankApprox:
    """Randomized SVD variant that factors B* instead of B.

    After B = Q* A, a Gram-Schmidt QR of the tall B* = Q1 R1 reduces the
    dense SVD to the small (k+p) square R1: with R1 = T S Z*, the factors
    of B are U = Z, s = diag(S), V = Q1 T.  Same sketch, same singular
    values as randsvd, cheaper when n is much larger than k+p.
    """
    q = sketch_range(a, cfg, trial)
    b = mat_mul(q.adjoint(), a)
    qr1 = qmgs(b.adjoint())
    small = qsvd(qr1.r)
    ub = small.v
    vb = mat_mul(qr1.q, small.u)
    keep = cfg.l if keep_all else cfg.k
    return _truncate(q, ub, small.s, vb, keep, a.norm() ** 2)


def _dominant(lam: np.ndarray, k: int) -> np.ndarray:
    """Indices of the k largest-magnitude eigenvalues, value-descending."""
    idx = np.argsort(-np.abs(lam), kind="stable")[:k]
    return idx[np.argsort(-lam[idx], kind="stable")]


def randeig(a: QMatrix, cfg: RandConfig, herm_rtol: float = 1e-10) -> EigResult:
    """Randomized truncated eigendecomposition of a Hermitian matrix.

    A ~ Q (Q* A Q) Q*: the compressed core is symmetrized, decomposed with
    the dense Hermitian solver, and the k dominant (largest magnitude)
    eigenpairs are lifted back through Q.
    """
    n, n2 = a.shape
    if n != n2 or not a.is_hermitian(rtol=herm_rtol):
        raise ValueError("randeig requires a Hermitian matrix")
    q = sketch_range(a, cfg)
    core = mat_mul(q.adjoint(), mat_mul(a, q))
    core = 0.5 * (core + core.adjoint())
    eig = eig_hermitian(core, rtol=1e-8)
    keep = _dominant(eig.lam, cfg.k)
    vecs = mat_mul(q, eig.v.cols(keep))
    return EigResult(vecs, eig.lam[keep].copy())


def _solve_upper_triangular(r: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Solve R X = Y for quaternion upper triangular R with real positive
    diagonal (part arrays, shapes (4, l, l) and (4, l, t))."""
    l = r.shape[1]
    x = np.zeros_like(y)
    for i in range(l - 1, -1, -1):
        acc = y[:, i:i + 1, :].copy()
        if i + 1 < l:
            acc -= _qmatmul(r[:, i:i + 1, i + 1:], x[:, i + 1:, :])
        x[:, i, :] = acc[:, 0, :] / r[0, i, i]
    return x


def single_pass_eig(a: QMatrix, cfg: RandConfig, herm_rtol: float = 1e-10,
                    cond_limit: float = 1e12) -> EigResult:
    """Single-pass randomized eigendecomposition of a Hermitian matrix.

    A is multiplied exactly once (Y = A Omega).  The compressed core B is
    recovered from the consistency condition B (Q* Omega) ~ Q* Y by a
    least-squares solve, then symmetrized and decomposed.  Requires q = 0;
    raises IllConditionedError when Q* Omega has condition number above
    cond_limit.
    """
    n, n2 = a.shape
    if n != n2 or not a.is_hermitian(rtol=herm_rtol):
        raise ValueError("single_pass_eig requires a Hermitian matrix")
    if cfg.q != 0:
        raise ValueError("single_pass_eig requires q = 0")
    cfg.validate(n, n)
    omega = sample_gaussian(n, cfg.l, cfg.seed)
    y = a.matmul(omega)  # the only pass over A
    q = _orthonormalize(y, cfg.ortho)
    c = mat_mul(q.adjoint(), omega)
    d = mat_mul(q.adjoint(), y)
    sc = qsvd(c).s
    if sc[-1] <= 0.0 or sc[0] / sc[-1] > cond_limit:
        raise IllConditionedError(
            f"sketch system condition {sc[0] / max(sc[-1], 1e-300):.3e} exceeds {cond_limit:.1e}")
    # B C = D  <=>  C* B* = D*; QR-factor C* and back-substitute
    qr_c = householder_qr(c.adjoint(), thin=True)
    rhs = mat_mul(qr_c.q.adjoint(), d.adjoint())
    b_adj = _solve_upper_triangular(qr_c.r.data, rhs.data)
    b = QMatrix(b_adj, copy=False).adjoint()
    b = 0.5 * (b + b.adjoint())
    eig = eig_hermitian(b, rtol=1e-6)
    keep = _dominant(eig.lam, cfg.k)
    vecs = mat_mul(q, eig.v.cols(keep))
    return EigResult(vecs, eig.lam[keep].copy())
