"""Command line interface.

Subcommands map one-to-one onto the experiment runners: compress (rank-k
image/matrix compression sweep), histogram (error distribution vs bounds
on a synthetic matrix), wishart (Gaussian pseudoinverse statistics),
bounds (closed-form bound evaluation for a given spectrum), eigenfaces
(train/classify pipeline), svd (exact truncated QSVD baseline).

Exit codes: 0 on success, 2 for usage errors (bad flags, unreadable or
malformed inputs), 3 when a numerical routine fails to converge or hits a
rank/conditioning failure.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from .core import IllConditionedError, NonConvergenceError, RankDeficiencyError
from .eigenfaces import FaceDataset
from .experiments import (
    ExperimentSpec,
    MatrixSource,
    run_bounds,
    run_compress,
    run_eigenfaces,
    run_histogram,
    run_svd_baseline,
    run_wishart,
)
from .fileio import read_singular_values
from .images import load_image
from .randomized import ORTHO_METHODS, RandConfig
from .synth import synthetic_face_dataset


def _int_list(text: str):
    try:
        values = [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated int list: {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty k list")
    return values


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quatsvd",
        description="Randomized quaternion SVD experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compress", help="randomized rank-k compression sweep")
    c.add_argument("--input", required=True,
                   help="input image (.png/.ppm) or matrix (.qmat)")
    c.add_argument("--k", required=True, type=_int_list,
                   help="target rank, or comma-separated list for a sweep")
    c.add_argument("--p", type=int, default=4, help="oversampling (default 4)")
    c.add_argument("--q", type=int, default=0, help="power rounds (default 0)")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--ortho", choices=ORTHO_METHODS, default="householder")
    c.add_argument("--out", required=True, help="output CSV path")
    c.add_argument("--save-image", default=None,
                   help="write the reconstruction for the last k here")
    c.set_defaults(func=_cmd_compress)

    h = sub.add_parser("histogram", help="error histogram vs theory bounds")
    h.add_argument("--m", required=True, type=int)
    h.add_argument("--n", required=True, type=int)
    h.add_argument("--rate", required=True, type=float,
                   help="singular value decay ratio in (0, 1)")
    h.add_argument("--k", required=True, type=int)
    h.add_argument("--p", type=int, default=4)
    h.add_argument("--q", type=int, default=0)
    h.add_argument("--trials", type=int, default=1000)
    h.add_argument("--seed", type=int, default=0)
    h.add_argument("--out", required=True)
    h.set_defaults(func=_cmd_histogram)

    w = sub.add_parser("wishart", help="Gaussian pseudoinverse statistics")
    w.add_argument("--m", required=True, type=int)
    w.add_argument("--n", required=True, type=int)
    w.add_argument("--trials", type=int, default=1000)
    w.add_argument("--seed", type=int, default=0)
    w.add_argument("--out", required=True)
    w.set_defaults(func=_cmd_wishart)

    b = sub.add_parser("bounds", help="evaluate error bound formulas")
    b.add_argument("--spectrum", required=True,
                   help="singular value file, or generator 'decay:<rate>:<count>'")
    b.add_argument("--k", required=True, type=int)
    b.add_argument("--p", type=int, default=4)
    b.add_argument("--q", type=int, default=0)
    b.add_argument("--u", type=float, default=None,
                   help="deviation parameter (default 2 sqrt(2p))")
    b.add_argument("--t", type=float, default=None,
                   help="deviation parameter (default e)")
    b.add_argument("--out", required=True)
    b.set_defaults(func=_cmd_bounds)

    e = sub.add_parser("eigenfaces", help="face-space training and classification")
    e.add_argument("--train-dir", default=None,
                   help="directory of <person>_<idx>.png training images")
    e.add_argument("--test-dir", default=None,
                   help="directory of <person>_<idx>.png test images")
    e.add_argument("--k", required=True, type=int)
    e.add_argument("--p", type=int, default=4)
    e.add_argument("--q", type=int, default=0)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--out", required=True)
    e.set_defaults(func=_cmd_eigenfaces)

    s = sub.add_parser("svd", help="exact truncated QSVD baseline")
    s.add_argument("--input", required=True,
                   help="input matrix (.qmat) or image (.png/.ppm)")
    s.add_argument("--k", required=True, type=_int_list,
                   help="target rank, or comma-separated list")
    s.add_argument("--out", required=True)
    s.set_defaults(func=_cmd_svd)

    return parser


def _cmd_compress(args) -> int:
    source = MatrixSource.from_path(args.input)
    cfg = RandConfig(k=args.k[0], p=args.p, q=args.q, seed=args.seed,
                     ortho=args.ortho)
    spec = ExperimentSpec(source=source, cfg=cfg, trials=1, out=args.out)
    run_compress(spec, args.k, save_image_path=args.save_image)
    return 0


def _cmd_histogram(args) -> int:
    source = MatrixSource.decay(args.m, args.n, args.rate, args.seed)
    cfg = RandConfig(k=args.k, p=args.p, q=args.q, seed=args.seed)
    spec = ExperimentSpec(source=source, cfg=cfg, trials=args.trials, out=args.out)
    run_histogram(spec)
    return 0


def _cmd_wishart(args) -> int:
    run_wishart(args.m, args.n, args.trials, args.seed, args.out)
    return 0


def _load_spectrum(text: str) -> np.ndarray:
    if text.startswith("decay:"):
        fields = text.split(":")
        if len(fields) != 3:
            raise ValueError("generator syntax is decay:<rate>:<count>")
        rate = float(fields[1])
        count = int(fields[2])
        if not 0.0 < rate < 1.0 or count < 2:
            raise ValueError("need 0 < rate < 1 and count >= 2")
        return rate ** np.arange(count, dtype=np.float64)
    return read_singular_values(text)


def _cmd_bounds(args) -> int:
    sigma = _load_spectrum(args.spectrum)
    run_bounds(sigma, args.k, args.p, args.q, args.out, u=args.u, t=args.t)
    return 0


def _load_face_dir(directory: str):
    pairs = []
    for name in sorted(os.listdir(directory)):
        stem, ext = os.path.splitext(name)
        if ext.lower() not in (".png", ".ppm"):
            continue
        if "_" not in stem:
            raise ValueError(
                f"{name}: face images must be named <person>_<idx>{ext}")
        person = stem.rsplit("_", 1)[0]
        pairs.append((person, load_image(os.path.join(directory, name))))
    if not pairs:
        raise ValueError(f"{directory}: no .png/.ppm images found")
    return tuple(pairs)


def _cmd_eigenfaces(args) -> int:
    if (args.train_dir is None) != (args.test_dir is None):
        raise ValueError("give both --train-dir and --test-dir, or neither")
    if args.train_dir is None:
        data = synthetic_face_dataset(seed=args.seed)
    else:
        data = FaceDataset(train=_load_face_dir(args.train_dir),
                           test=_load_face_dir(args.test_dir))
    acc = run_eigenfaces(data, args.k, args.p, args.q, args.seed, args.out)
    print(f"accuracy {acc:.4f} over {len(data.test)} test images")
    return 0


def _cmd_svd(args) -> int:
    source = MatrixSource.from_path(args.input)
    run_svd_baseline(source, args.k, args.out)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (NonConvergenceError, RankDeficiencyError, IllConditionedError) as exc:
        print(f"quatsvd: numerical failure: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"quatsvd: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
