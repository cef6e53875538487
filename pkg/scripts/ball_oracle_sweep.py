#!/usr/bin/env python3
"""Spectral vs closed-form harmonic Bergman kernel on the unit ball, and the
expansion-vs-exact comparison along a ray into the boundary diagonal.
"""

import argparse
import math

import numpy as np

from bkasym.closed_forms import PointPair, dim_constant, eval_bergman_closed
from bkasym.domains import DomainSpec
from bkasym.oracle import SpectralBall, ball_spectral_bergman
from bkasym.transforms import bergman_kernel_expansion


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--lmax", type=int, default=60)
    ap.add_argument("--samples", type=int, default=12)
    args = ap.parse_args()

    sb = SpectralBall(args.lmax, 3)
    rng = np.random.default_rng(0)
    print("spectral sum vs closed form:")
    worst = 0.0
    for _ in range(args.samples):
        x = rng.uniform(-0.5, 0.5, 3)
        y = rng.uniform(-0.5, 0.5, 3)
        got = ball_spectral_bergman(sb, tuple(x), tuple(y))
        want = eval_bergman_closed("ball", PointPair(tuple(x), tuple(y), 3))
        rel = abs(got - want) / max(1.0, abs(want))
        worst = max(worst, rel)
    print(f"  worst relative deviation over {args.samples} pairs: {worst:.3e}")

    dom = DomainSpec.ball(3, 1)
    exp = bergman_kernel_expansion(dom, 3)
    cn = dim_constant(3)
    phi = lambda r2: 1 - math.sqrt(1 - r2)
    a, b, c = 0.3, 0.25, 1.0
    rho1 = math.hypot(c, a + b)
    tx, ty = a / rho1, b / rho1
    print("\nexpansion vs exact kernel along a boundary-diagonal ray:")
    print("  s        exact          expansion(sing. part)")
    for s in np.geomspace(0.02, 0.2, 8):
        x = (0.0, 0.0, a * s - 1.0 + 1.0)  # chart x' = 0
        y = (c * s, 0.0, b * s + phi((c * s) ** 2))
        exact = eval_bergman_closed(
            "ball",
            PointPair((x[0], x[1], x[2] - 1.0), (y[0], y[1], y[2] - 1.0), 3),
        )
        approx = exp.evaluate(dom.jet, rho1 * s, tx, ty)
        print(f"  {s:.4f}  {exact:+.6e}  {approx:+.6e}")


if __name__ == "__main__":
    main()
