"""Parallel hypersurfaces of MT(3, 0) and a GraphSH surface.

Along the normal flow each nonzero principal curvature of MT follows the
cot law (the zero curvature belongs to the direction V and is excluded); the first focal distance is pi / (2 sqrt 2).  The GraphSH surface has no
focal point within distance 10.

Run with ``python3 demos/focal_and_riccati.py``.
"""
import math

import numpy as np

from isogeo.catalog import MT, GraphSH
from isogeo.flows import flowed_spectrum, focal_distances, riccati_check


def main():
    fam = MT(3, 0.0)
    x, y = fam.sample_level(np.random.default_rng(1))
    lam0 = sorted({round(float(v), 8) + 0.0 for v in flowed_spectrum(fam, x, y, 0.0)})
    print("MT(3, 0) principal curvatures at t = 0:", lam0)
    for t in (0.2, 0.5, 0.8):
        print(f"  t = {t}: max |measured - predicted| = {riccati_check(fam, x, y, t):.2e}")
    fd = focal_distances(fam, x, y)
    print(f"  first focal distance {fd[0]:.12f}, pi/(2 sqrt 2) = {math.pi / (2 * math.sqrt(2)):.12f}")

    g = GraphSH(3, 0.5, t=0.2)
    x, y = g.sample_level(np.random.default_rng(2))
    print(f"{g.label()}: focal distances in (0, 10] = {focal_distances(g, x, y)}")


if __name__ == "__main__":
    main()
