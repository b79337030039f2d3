"""Experiment drivers behind the command line interface.

Each runner produces one CSV file (header row, comma separated, floats at
17 significant digits) and returns the computed numbers so callers and
tests can use them without reparsing the file.  Given identical inputs and
seeds the outputs are deterministic.
"""

from __future__ import annotations

import csv
import os
import time
from dataclasses import dataclass, replace

import numpy as np

from .bounds import bound_report, pinv_stats, validate_pinv_fro, validate_pinv_spec
from .core import QMatrix
from .decomp import rank_k_product, spectral_norm
from .eigenfaces import FaceDataset, classify, train_eigenfaces
from .fileio import read_qmat
from .images import load_image, psnr, save_image
from .randomized import RandConfig, randsvd
from .synth import synth_matrix

SOURCE_KINDS = ("decay", "image", "qmat")


@dataclass(frozen=True)
class MatrixSource:
    """Where an experiment's input matrix comes from.

    kind "decay" generates a synthetic matrix with geometric spectrum
    (m, n, rate, seed); "image" loads a PNG/PPM file; "qmat" reads the
    text matrix format.  Parameters are checked on construction so a bad
    source fails before any work starts.
    """

    kind: str
    path: str | None = None
    m: int = 0
    n: int = 0
    rate: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.kind not in SOURCE_KINDS:
            raise ValueError(f"source kind must be one of {SOURCE_KINDS}")
        if self.kind == "decay":
            if self.m < self.n or self.n < 1:
                raise ValueError("decay source needs m >= n >= 1")
            if not 0.0 < self.rate < 1.0:
                raise ValueError("decay rate must lie in (0, 1)")
        else:
            if not self.path:
                raise ValueError(f"{self.kind} source needs a path")

    @classmethod
    def decay(cls, m: int, n: int, rate: float, seed: int = 0) -> "MatrixSource":
        return cls(kind="decay", m=m, n=n, rate=rate, seed=seed)

    @classmethod
    def from_path(cls, path: str) -> "MatrixSource":
        ext = os.path.splitext(path)[1].lower()
        if ext == ".qmat":
            return cls(kind="qmat", path=path)
        if ext in (".png", ".ppm"):
            return cls(kind="image", path=path)
        raise ValueError(f"{path}: cannot infer input type from extension {ext!r}")

    def load(self):
        """Returns (matrix, sigma) where sigma is the exact spectrum for
        synthetic sources and None otherwise."""
        if self.kind == "decay":
            return synth_matrix(self.m, self.n, self.rate, self.seed)
        if self.kind == "image":
            return load_image(self.path), None
        return read_qmat(self.path), None


@dataclass(frozen=True)
class ExperimentSpec:
    source: MatrixSource
    cfg: RandConfig
    trials: int
    out: str

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")


def _fmt(value) -> str:
    if value is None or value == "":
        return ""
    if isinstance(value, (float, np.floating)):
        return "%.17g" % float(value)
    return str(value)


def _write_csv(path: str, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(cell) for cell in row])


COMPRESS_HEADER = ("k", "q", "psnr", "rel_err_2", "rel_err_F", "wall_time")
SVD_HEADER = ("k", "psnr", "rel_err_2", "rel_err_F", "wall_time")


def run_compress(spec: ExperimentSpec, ks, save_image_path: str | None = None):
    """Randomized rank-k compression sweep.

    One CSV row per k: PSNR against the input, relative spectral and
    Frobenius errors, and the wall time of the sketch-and-factor step
    alone.  With save_image_path the reconstruction for the last k is
    written out as an image.
    """
    a, _ = spec.source.load()
    ks = [int(k) for k in ks]
    if not ks:
        raise ValueError("need at least one k")
    norm_f = a.norm()
    norm_2 = spectral_norm(a)
    rows = []
    rec = None
    for k in ks:
        cfg = replace(spec.cfg, k=k)
        t0 = time.perf_counter()
        lr = randsvd(a, cfg)
        wall = time.perf_counter() - t0
        rec = lr.reconstruct()
        diff = rec - a
        rows.append({
            "k": k,
            "q": cfg.q,
            "psnr": psnr(rec, a),
            "rel_err_2": spectral_norm(diff) / norm_2,
            "rel_err_F": diff.norm() / norm_f,
            "wall_time": wall,
        })
    _write_csv(spec.out, COMPRESS_HEADER,
               [[r[c] for c in COMPRESS_HEADER] for r in rows])
    if save_image_path is not None:
        save_image(rec, save_image_path)
    return rows


def run_svd_baseline(source: MatrixSource, ks, out: str):
    """Exact truncated QSVD reference curve with the same error columns as
    run_compress.  The full decomposition is computed once and its wall
    time reported on every row."""
    from .decomp import qsvd

    a, _ = source.load()
    ks = [int(k) for k in ks]
    if not ks:
        raise ValueError("need at least one k")
    if max(ks) > min(a.shape):
        raise ValueError("k exceeds min(m, n)")
    norm_f = a.norm()
    norm_2 = spectral_norm(a)
    t0 = time.perf_counter()
    full = qsvd(a)
    wall = time.perf_counter() - t0
    rows = []
    for k in ks:
        rec = rank_k_product(full.u.cols(slice(0, k)), full.s[:k],
                             full.v.cols(slice(0, k)))
        diff = rec - a
        rows.append({
            "k": k,
            "psnr": psnr(rec, a),
            "rel_err_2": spectral_norm(diff) / norm_2,
            "rel_err_F": diff.norm() / norm_f,
            "wall_time": wall,
        })
    _write_csv(out, SVD_HEADER, [[r[c] for c in SVD_HEADER] for r in rows])
    return rows


HISTOGRAM_HEADER = ("trial", "err_2", "err_F", "bound_mean_2", "bound_mean_F",
                    "bound_dev_2", "bound_dev_F")


@dataclass(frozen=True)
class HistogramResult:
    errs_2: np.ndarray
    errs_F: np.ndarray
    report: dict


def run_histogram(spec: ExperimentSpec) -> HistogramResult:
    """Error histogram of the randomized SVD on a known-spectrum matrix.

    Requires a decay source (the bounds need the exact spectrum).  One row
    per trial with the absolute spectral / Frobenius errors, then a summary
    row carrying the mean errors and the bound values: expected-error
    bounds in the bound_mean columns and, for q = 0, deviation bounds at
    the default confidence parameters in the bound_dev columns.
    """
    if spec.source.kind != "decay":
        raise ValueError("histogram experiment needs a decay source")
    a, sigma = spec.source.load()
    cfg = spec.cfg
    cfg.validate(*a.shape)
    errs_2 = np.empty(spec.trials)
    errs_f = np.empty(spec.trials)
    for trial in range(spec.trials):
        lr = randsvd(a, cfg, trial=trial)
        diff = lr.reconstruct() - a
        errs_2[trial] = spectral_norm(diff)
        errs_f[trial] = diff.norm()
    report = bound_report(sigma, cfg.k, cfg.p, cfg.q)
    rows = [[i, errs_2[i], errs_f[i], "", "", "", ""] for i in range(spec.trials)]
    rows.append(["summary", float(np.mean(errs_2)), float(np.mean(errs_f)),
                 report["expected_spec"], report["expected_fro"],
                 report["deviation_spec"], report["deviation_fro"]])
    _write_csv(spec.out, HISTOGRAM_HEADER, rows)
    return HistogramResult(errs_2=errs_2, errs_F=errs_f, report=report)


WISHART_HEADER = ("quantity", "m", "n", "k", "p", "q", "trials", "estimate",
                  "bound", "stderr")


def run_wishart(m: int, n: int, trials: int, seed: int, out: str):
    """Monte Carlo check of the Gaussian pseudoinverse statistics.

    Two rows: the mean of ||G+||_F^2 against its exact expectation, and
    the mean of ||G+||_2 against its upper bound.
    """
    stats = pinv_stats(m, n)
    fro = validate_pinv_fro(m, n, trials=trials, seed=seed)
    spec = validate_pinv_spec(m, n, trials=trials, seed=seed)
    rows = [
        {"quantity": "pinv_fro_sq", "m": m, "n": n, "k": "", "p": "", "q": "",
         "trials": trials, "estimate": fro.mean, "bound": stats.fro_sq_mean,
         "stderr": fro.stderr},
        {"quantity": "pinv_spec", "m": m, "n": n, "k": "", "p": "", "q": "",
         "trials": trials, "estimate": spec.mean, "bound": stats.spec_mean,
         "stderr": spec.stderr},
    ]
    _write_csv(out, WISHART_HEADER, [[r[c] for c in WISHART_HEADER] for r in rows])
    return rows


BOUNDS_HEADER = ("k", "p", "q", "u", "t", "sigma_next", "tail_fro",
                 "expected_fro", "expected_spec", "deviation_fro",
                 "deviation_spec", "deviation_fail_prob", "simple_spec",
                 "simple_fail_prob")


def run_bounds(sigma: np.ndarray, k: int, p: int, q: int, out: str,
               u: float | None = None, t: float | None = None) -> dict:
    """Evaluate every error bound for one (spectrum, k, p, q) cell."""
    report = bound_report(sigma, k, p, q, u=u, t=t)
    _write_csv(out, BOUNDS_HEADER, [[report[c] for c in BOUNDS_HEADER]])
    return report


EIGENFACES_HEADER = ("item", "truth", "predicted", "correct")


def run_eigenfaces(data: FaceDataset, k: int, p: int, q: int, seed: int,
                   out: str, method: str = "randomized") -> float:
    """Train the face space, classify the test split, write per-item rows
    and a final accuracy row.  Returns the accuracy."""
    model = train_eigenfaces(data, k, p=p, q=q, seed=seed, method=method)
    rows = []
    hits = 0
    for i, (pid, img) in enumerate(data.test):
        pred = classify(model, img)
        ok = int(pred == pid)
        hits += ok
        rows.append([i, pid, pred, ok])
    if not data.test:
        raise ValueError("dataset has no test images")
    acc = hits / len(data.test)
    rows.append(["accuracy", "", "", acc])
    _write_csv(out, EIGENFACES_HEADER, rows)
    return acc


__all__ = [
    "ExperimentSpec",
    "HistogramResult",
    "MatrixSource",
    "run_bounds",
    "run_compress",
    "run_eigenfaces",
    "run_histogram",
    "run_svd_baseline",
    "run_wishart",
]
