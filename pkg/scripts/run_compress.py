#!/usr/bin/env python3
"""Rank-k color image compression sweep with the randomized QSVD.

Writes one CSV row per k (PSNR, relative errors, sketch wall time) and
optionally the reconstruction for the largest k.
"""

import argparse

from quatsvd.experiments import ExperimentSpec, MatrixSource, run_compress
from quatsvd.randomized import RandConfig


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("input", help="image (.png/.ppm) or matrix (.qmat)")
    ap.add_argument("--k", type=int, nargs="+",
                    default=[10, 20, 40, 60, 80, 100])
    ap.add_argument("--p", type=int, default=4)
    ap.add_argument("--q", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="compress.csv")
    ap.add_argument("--save-image", default=None,
                    help="write the reconstruction for the last k here")
    args = ap.parse_args()

    spec = ExperimentSpec(
        source=MatrixSource.from_path(args.input),
        cfg=RandConfig(k=args.k[0], p=args.p, q=args.q, seed=args.seed),
        trials=1, out=args.out)
    rows = run_compress(spec, args.k, save_image_path=args.save_image)
    print(f"wrote {args.out}")
    for row in rows:
        print(f"k={row['k']:4d}  psnr {row['psnr']:6.2f} dB  "
              f"rel_err_F {row['rel_err_F']:.4f}  "
              f"time {row['wall_time']:.2f}s")


if __name__ == "__main__":
    main()
