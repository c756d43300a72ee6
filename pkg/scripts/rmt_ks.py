"""KS distances between matrix spectra and analytic densities over n.

    python3 scripts/rmt_ks.py --model gaussian_hermitian --sizes 100,300,1000 --seeds 10
"""

import argparse

import numpy as np

from freelevy import catalog_get, density_grid
from freelevy.rmt import ks_distance, limit_law, sample_many
from freelevy.transforms import support_bounds


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--model", default="gaussian_hermitian")
    ap.add_argument("--against", help="catalog law as name:k=v,... (default: the model's limit)")
    ap.add_argument("--sizes", default="100,300,1000")
    ap.add_argument("--seeds", type=int, default=10)
    args = ap.parse_args()

    if args.against:
        name, _, params = args.against.partition(":")
        entry = catalog_get(name, dict(kv.split("=") for kv in params.split(",") if kv))
    else:
        name, params = limit_law(args.model)
        entry = catalog_get(name, params)
    lo, hi = support_bounds(entry.spec)
    pad = 0.02 * (hi - lo) + 1e-3
    grid = density_grid(entry.spec, lo - pad, hi + pad, 801, spacing="graded")
    print(f"model {args.model} against {entry.spec.label} (grid mass {grid.mass:.6f})")
    for n in (int(s) for s in args.sizes.split(",")):
        ks = [ks_distance(s, grid, entry.atoms) for s in sample_many(args.model, n, range(args.seeds))]
        print(f"n={n:<6d} median KS {np.median(ks):.4f}  max {np.max(ks):.4f}")


if __name__ == "__main__":
    main()
