#!/usr/bin/env python3
"""Finite-difference convergence study and disk Poisson-kernel recovery.

Dyadic refinement of the Shortley-Weller Dirichlet solve against a harmonic
quartic on the unit disk, then the harmonic-measure approximation of the
Poisson kernel fitted against the symbolic boundary expansion.
"""

import argparse

import numpy as np

from bkasym.domains import DomainSpec
from bkasym.oracle import fd_convergence_order, fd_poisson_kernel_fit
from bkasym.transforms import poisson_kernel_expansion


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--h0", type=float, default=1 / 16)
    ap.add_argument("--levels", type=int, default=4)
    ap.add_argument("--fit-h", type=float, default=1 / 256)
    args = ap.parse_args()

    u4 = lambda x, y: x ** 4 - 6 * x * x * y * y + y ** 4
    hs = tuple(args.h0 * 2 ** -i for i in range(args.levels))
    errs, orders = fd_convergence_order(u4, u4, hs=hs)
    print("h        max error   order")
    for i, h in enumerate(hs):
        order = f"{orders[i - 1]:.3f}" if i else "  -  "
        print(f"1/{round(1 / h):<6} {errs[i]:.3e}   {order}")

    dom = DomainSpec.ball(2, 1)
    exp = poisson_kernel_expansion(dom, 2)
    ds = np.geomspace(0.08, 0.4, 16)
    rep = fd_poisson_kernel_fit(args.fit_h, ds, exp, dom.jet)
    print(f"\nkernel fit at h = {args.fit_h} (shape-normalized, target 1.0):")
    for label, coef, rel in zip(rep.basis, rep.coefficients, rep.relative_error):
        print(f"  {label:14s} {coef:+.6f}   rel dev {rel:.2e}")


if __name__ == "__main__":
    main()
