"""Synthetic inputs with known structure.

synth_matrix builds a test matrix with a prescribed geometric singular
spectrum out of two quaternion Householder factors, so decomposition and
sketching errors can be measured against exact truth.
synthetic_face_dataset fabricates a small labeled face collection for the
eigenfaces pipeline when no real image directory is supplied.
"""

from __future__ import annotations

import numpy as np

from .core import QMatrix, mat_mul
from .eigenfaces import FaceDataset
from .images import from_rgb_array

# spawn keys far above any Monte Carlo trial index, so matrices built from
# seed s never share a stream with the sketches sampled from seed s
_KEY_U = 2 ** 32
_KEY_V = 2 ** 32 + 1
_KEY_FACES = 2 ** 32 + 2


def _unit_column(n: int, seed: int, key: int) -> QMatrix:
    rng = np.random.Generator(
        np.random.Philox(np.random.SeedSequence(int(seed), spawn_key=(key,))))
    parts = rng.standard_normal((4, n, 1))
    nrm = float(np.linalg.norm(parts))
    if nrm == 0.0:  # unreachable in practice, keeps the contract total
        parts[0, 0, 0] = 1.0
        nrm = 1.0
    return QMatrix(parts / nrm, copy=False)


def synth_matrix(m: int, n: int, rate: float, seed: int = 0):
    """m-by-n matrix with exact singular values rate^(i-1), i = 1..n.

    Returns (A, sigma).  A = U [diag(sigma); 0] V* where U = I - 2uu* and
    V = I - 2vv* are quaternion Householder reflections with random unit
    u, v.  The product is expanded into rank-one updates of the diagonal
    core, so the m-by-m factor is never formed:

        A = D - 2 u (u* D) - 2 (D v) v* + 4 (u* D v) u v*.
    """
    if m < n:
        raise ValueError("need m >= n")
    if not 0.0 < rate < 1.0:
        raise ValueError("decay rate must lie in (0, 1)")
    sigma = rate ** np.arange(n, dtype=np.float64)
    dparts = np.zeros((4, m, n))
    dparts[0, np.arange(n), np.arange(n)] = sigma
    d = QMatrix(dparts, copy=False)
    u = _unit_column(m, seed, _KEY_U)
    v = _unit_column(n, seed, _KEY_V)
    ud = mat_mul(u.adjoint(), d)          # 1 x n
    dv = mat_mul(d, v)                    # m x 1
    udv = mat_mul(ud, v)                  # 1 x 1
    a = d - 2.0 * mat_mul(u, ud) - 2.0 * mat_mul(dv, v.adjoint()) \
        + 4.0 * mat_mul(u, mat_mul(udv, v.adjoint()))
    return a, sigma


def synthetic_face_dataset(persons: int = 10, train_per_person: int = 4,
                           test_per_person: int = 2, size: int = 12,
                           seed: int = 0) -> FaceDataset:
    """Labeled RGB face stand-ins: one shared base image, a strong fixed
    per-person pattern, and small per-sample noise, clipped to [0, 255].

    The identity signal (pattern scale 60) dominates the noise (scale 5),
    so any reasonable face-space classifier separates the persons; the
    dataset exists to exercise the pipeline, not to challenge it.
    """
    if persons < 2:
        raise ValueError("need at least 2 persons")
    if train_per_person < 1 or test_per_person < 0:
        raise ValueError("invalid per-person sample counts")
    if size < 2:
        raise ValueError("image size must be at least 2")
    rng = np.random.Generator(
        np.random.Philox(np.random.SeedSequence(int(seed), spawn_key=(_KEY_FACES,))))
    shape = (size, size, 3)
    base = rng.uniform(80.0, 160.0, shape)
    patterns = [rng.normal(0.0, 60.0, shape) for _ in range(persons)]

    def sample(pid: int):
        img = base + patterns[pid] + rng.normal(0.0, 5.0, shape)
        return from_rgb_array(np.clip(img, 0.0, 255.0))

    train = [(f"p{pid}", sample(pid))
             for pid in range(persons) for _ in range(train_per_person)]
    test = [(f"p{pid}", sample(pid))
            for pid in range(persons) for _ in range(test_per_person)]
    return FaceDataset(train=tuple(train), test=tuple(test))
