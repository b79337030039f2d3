"""Face-space training and nearest-feature classification."""

import numpy as np
import pytest

from quatsvd.core import QMatrix
from quatsvd.eigenfaces import (
    FaceDataset,
    accuracy,
    classify,
    image_features,
    train_eigenfaces,
    vec_image,
)
from quatsvd.images import from_rgb_array
from quatsvd.synth import synthetic_face_dataset


def solid(r, g, b, size=4):
    arr = np.zeros((size, size, 3))
    arr[..., 0], arr[..., 1], arr[..., 2] = r, g, b
    return from_rgb_array(arr)


def two_color_dataset(noise=0.0, per_person=3, seed=0):
    """'red' versus 'blue' solid images, optionally with pixel noise."""
    rng = np.random.default_rng(seed)

    def jitter(img):
        if noise == 0.0:
            return img
        bumped = img.data.copy()
        bumped[1:] += rng.normal(0.0, noise, bumped[1:].shape)
        return QMatrix(np.clip(bumped, 0.0, 255.0), copy=False)

    train = [("red", jitter(solid(200, 10, 10))) for _ in range(per_person)]
    train += [("blue", jitter(solid(10, 10, 200))) for _ in range(per_person)]
    test = [("red", jitter(solid(190, 15, 15))),
            ("blue", jitter(solid(15, 10, 190)))]
    return FaceDataset(train=tuple(train), test=tuple(test))


class TestVecImage:
    def test_column_major_order(self):
        mat = QMatrix(np.arange(16.0).reshape(4, 2, 2), copy=False)
        vec = vec_image(mat)
        assert vec.shape == (4, 1)
        # rows: (0,0), (1,0), (0,1), (1,1)
        order = [(0, 0), (1, 0), (0, 1), (1, 1)]
        for row, (i, j) in enumerate(order):
            assert vec.entry(row, 0).to_array() == pytest.approx(
                mat.entry(i, j).to_array())


class TestFaceDatasetValidation:
    def test_requires_two_persons(self):
        with pytest.raises(ValueError):
            FaceDataset(train=(("a", solid(1, 2, 3)),), test=())

    def test_requires_consistent_shapes(self):
        with pytest.raises(ValueError):
            FaceDataset(train=(("a", solid(1, 2, 3, size=4)),
                               ("b", solid(3, 2, 1, size=5))), test=())

    def test_rejects_empty_train(self):
        with pytest.raises(ValueError):
            FaceDataset(train=(), test=())


class TestTraining:
    def test_exact_two_colors(self):
        data = two_color_dataset()
        model = train_eigenfaces(data, k=1, method="exact")
        assert model.k == 1
        assert accuracy(model, data.test) == 1.0
        assert classify(model, data.test[0][1]) == "red"

    def test_randomized_two_colors(self):
        data = two_color_dataset(noise=3.0, per_person=4)
        model = train_eigenfaces(data, k=1, p=2, seed=0)
        assert accuracy(model, data.test) == 1.0

    def test_mean_image_features_vanish(self):
        data = two_color_dataset(noise=2.0, per_person=4)
        model = train_eigenfaces(data, k=2, p=2, seed=1)
        mean_img = QMatrix(
            model.mean.data.reshape(4, data.image_shape[1],
                                    data.image_shape[0]).transpose(0, 2, 1))
        feat = image_features(model, mean_img)
        assert feat.norm() <= 1e-10 * model.mean.norm()

    def test_randomized_matches_exact_on_synthetic(self):
        data = synthetic_face_dataset(persons=4, train_per_person=4,
                                      test_per_person=2, size=8, seed=2)
        exact = train_eigenfaces(data, k=4, method="exact")
        rand = train_eigenfaces(data, k=4, p=4, seed=3)
        assert accuracy(exact, data.test) == 1.0
        assert accuracy(rand, data.test) == 1.0

    def test_feature_shapes(self):
        data = synthetic_face_dataset(persons=3, train_per_person=3,
                                      test_per_person=1, size=6, seed=4)
        model = train_eigenfaces(data, k=3, p=2, seed=5)
        assert model.basis.shape == (36, 3)
        assert len(model.features) == 9
        feat = image_features(model, data.test[0][1])
        assert feat.shape == (3, 1)

    def test_rejects_bad_method_and_k(self):
        data = two_color_dataset(noise=1.0)
        with pytest.raises(ValueError):
            train_eigenfaces(data, k=1, method="pca")
        with pytest.raises(ValueError):
            train_eigenfaces(data, k=0)
        with pytest.raises(ValueError):
            train_eigenfaces(data, k=99)

    def test_randomized_needs_room_below_sample_count(self):
        # 6 training images: centering caps the rank at 5, so k = 5 leaves
        # no space for oversampling
        data = two_color_dataset(noise=1.0, per_person=3)
        with pytest.raises(ValueError):
            train_eigenfaces(data, k=5)

    def test_image_features_rejects_wrong_shape(self):
        data = two_color_dataset(noise=1.0)
        model = train_eigenfaces(data, k=1, p=2, seed=6)
        with pytest.raises(ValueError):
            image_features(model, solid(0, 0, 0, size=9))
