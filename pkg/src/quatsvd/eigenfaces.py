"""Eigenfaces for color images in the quaternion model.

Each RGB training image becomes a pure quaternion column (column-major
vectorization, fixed convention); the mean-subtracted columns form the
tall data matrix X whose leading left singular vectors span the face
space.  Features are the projections U_k* (vec(F) - mean) and
classification is nearest neighbor on feature vectors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import QMatrix, mat_mul
from .decomp import qsvd_truncate
from .randomized import RandConfig, prandsvd

METHODS = ("randomized", "exact")


def vec_image(mat: QMatrix) -> QMatrix:
    """Column-major vectorization: an m-by-n image becomes mn-by-1 with
    column j of the image occupying rows j*m .. j*m + m - 1."""
    col = np.transpose(mat.data, (0, 2, 1)).reshape(4, -1, 1)
    return QMatrix(col, copy=False)


@dataclass(frozen=True)
class FaceDataset:
    """Labeled (person, image) pairs split into train and test lists.

    All images must share one shape and the training set must contain at
    least two distinct persons, otherwise there is nothing to classify.
    """

    train: tuple
    test: tuple

    def __post_init__(self):
        train = tuple(self.train)
        test = tuple(self.test)
        if not train:
            raise ValueError("training set is empty")
        persons = {pid for pid, _ in train}
        if len(persons) < 2:
            raise ValueError("need at least 2 distinct persons to train")
        shape = train[0][1].shape
        for pid, img in train + test:
            if img.shape != shape:
                raise ValueError(
                    f"image for {pid!r} has shape {img.shape}, expected {shape}")
        object.__setattr__(self, "train", train)
        object.__setattr__(self, "test", test)

    @property
    def image_shape(self) -> tuple[int, int]:
        return self.train[0][1].shape


@dataclass(frozen=True)
class EigenfacesModel:
    """mean: mn-by-1 average face; basis: mn-by-k face space;
    features: per training image (person, k-by-1 feature column)."""

    mean: QMatrix
    basis: QMatrix
    features: tuple
    image_shape: tuple
    method: str

    @property
    def k(self) -> int:
        return self.basis.ncols


def train_eigenfaces(data: FaceDataset, k: int, p: int = 4, q: int = 0,
                     seed: int = 0, ortho: str = "householder",
                     method: str = "randomized") -> EigenfacesModel:
    """Fit the face space of dimension k.

    method "randomized" sketches X with oversampling p, shrunk so the
    sketch width k + p never exceeds s - 1 (centering zeroes the column
    sum, capping the rank at s - 1); "exact" takes the deterministic
    truncated QSVD instead and ignores p, q, seed.
    """
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}")
    s = len(data.train)
    if not 1 <= k <= s:
        raise ValueError(f"need 1 <= k <= {s} training samples")
    cols = [vec_image(img).data for _, img in data.train]
    x = np.concatenate(cols, axis=2)
    mean = np.mean(x, axis=2, keepdims=True)
    centered = QMatrix(x - mean, copy=False)
    if method == "randomized":
        p_fit = min(p, s - 1 - k)
        if p_fit < 1:
            raise ValueError(
                "randomized training needs k + 2 <= number of training samples")
        cfg = RandConfig(k=k, p=p_fit, q=q, seed=seed, ortho=ortho)
        basis = prandsvd(centered, cfg).u
    else:
        basis = qsvd_truncate(centered, k).u
    feats = mat_mul(basis.adjoint(), centered)
    features = tuple(
        (pid, feats.cols(slice(i, i + 1))) for i, (pid, _) in enumerate(data.train))
    return EigenfacesModel(mean=QMatrix(mean, copy=False), basis=basis,
                           features=features, image_shape=data.image_shape,
                           method=method)


def image_features(model: EigenfacesModel, image: QMatrix) -> QMatrix:
    """Project one image onto the face space: U_k* (vec(F) - mean)."""
    if image.shape != model.image_shape:
        raise ValueError(
            f"image shape {image.shape} does not match model {model.image_shape}")
    centered = QMatrix(vec_image(image).data - model.mean.data, copy=False)
    return mat_mul(model.basis.adjoint(), centered)


def classify(model: EigenfacesModel, image: QMatrix) -> str:
    """Nearest training feature by the 2-norm of the feature difference."""
    feat = image_features(model, image)
    best_pid = None
    best = np.inf
    for pid, ref in model.features:
        d = float(np.linalg.norm(feat.data - ref.data))
        if d < best:
            best = d
            best_pid = pid
    return best_pid


def accuracy(model: EigenfacesModel, pairs) -> float:
    """Fraction of (person, image) pairs classified correctly."""
    pairs = list(pairs)
    if not pairs:
        raise ValueError("no evaluation pairs given")
    hits = sum(1 for pid, img in pairs if classify(model, img) == pid)
    return hits / len(pairs)
