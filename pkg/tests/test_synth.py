"""Synthetic test-matrix and face-dataset generators."""

import numpy as np
import pytest

from quatsvd.core import real_counterpart
from quatsvd.synth import synth_matrix, synthetic_face_dataset


class TestSynthMatrix:
    def test_exact_spectrum(self):
        a, sigma = synth_matrix(12, 8, 0.5, seed=1)
        np.testing.assert_allclose(sigma, 0.5 ** np.arange(8), rtol=1e-15)
        vals = np.linalg.svd(real_counterpart(a), compute_uv=False)
        np.testing.assert_allclose(vals.reshape(-1, 4).mean(axis=1), sigma,
                                   rtol=1e-12, atol=1e-15)

    def test_norm_identity(self):
        a, sigma = synth_matrix(20, 15, 0.8, seed=2)
        assert a.norm() == pytest.approx(np.linalg.norm(sigma), rel=1e-13)

    def test_reproducible(self):
        a, _ = synth_matrix(10, 6, 0.7, seed=3)
        b, _ = synth_matrix(10, 6, 0.7, seed=3)
        c, _ = synth_matrix(10, 6, 0.7, seed=4)
        np.testing.assert_array_equal(a.data, b.data)
        assert np.max(np.abs(a.data - c.data)) > 1e-6

    @pytest.mark.parametrize("m,n,rate", [(5, 6, 0.5), (5, 5, 0.0),
                                          (5, 5, 1.0), (5, 5, 1.5)])
    def test_rejects(self, m, n, rate):
        with pytest.raises(ValueError):
            synth_matrix(m, n, rate)


class TestFaceDataset:
    def test_shapes_and_labels(self):
        data = synthetic_face_dataset(persons=3, train_per_person=4,
                                      test_per_person=2, size=8, seed=0)
        assert len(data.train) == 12
        assert len(data.test) == 6
        assert data.image_shape == (8, 8)
        assert {pid for pid, _ in data.train} == {"p0", "p1", "p2"}
        for _, img in data.train + data.test:
            assert np.all(img.data[1:] >= 0.0) and np.all(img.data[1:] <= 255.0)
            assert np.all(img.part(0) == 0.0)

    def test_reproducible(self):
        a = synthetic_face_dataset(persons=2, size=6, seed=5)
        b = synthetic_face_dataset(persons=2, size=6, seed=5)
        np.testing.assert_array_equal(a.train[0][1].data, b.train[0][1].data)

    @pytest.mark.parametrize("kwargs", [
        dict(persons=1),
        dict(train_per_person=0),
        dict(test_per_person=-1),
        dict(size=1),
    ])
    def test_rejects(self, kwargs):
        with pytest.raises(ValueError):
            synthetic_face_dataset(**kwargs)
