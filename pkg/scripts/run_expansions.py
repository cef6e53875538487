#!/usr/bin/env python3
"""Print the symbolic boundary expansions for a few model domains.

Shows the first symbol grades of the harmonic-extension operator, the
boundary expansion of the Poisson kernel, the inverse-Gram symbol chain and
the boundary trace of its kernel, for the generic jet, a tangent ball, and
the half-space.
"""

import argparse

from bkasym.domains import DomainSpec
from bkasym.poisson import compute_poisson_symbols
from bkasym.bergman import invert_psdo, lambda_symbol
from bkasym.transforms import (
    lambda_inverse_boundary_expansion,
    log_coefficient,
    poisson_kernel_expansion,
)


def show(dom, label, grades):
    print(f"== {label} (n = {dom.n})")
    sym = compute_poisson_symbols(dom, grades, grades)
    for j in range(grades + 1):
        print(f"  symbol grade {j} at the center: {sym.center_grade(j)}")
    exp = poisson_kernel_expansion(dom, grades)
    print(f"  Poisson kernel expansion (units of c_n): {exp}")
    print(f"  lowest log coefficient: {log_coefficient(exp) or 0}")
    s = lambda_symbol(sym, grades)
    p = invert_psdo(s, grades)
    print("  Gram symbol center grades:",
          [str(s.grade(m).center_part()) for m in range(grades + 1)])
    print("  inverse center grades:",
          [str(p.grade(m).center_part()) for m in range(grades + 1)])
    bnd = lambda_inverse_boundary_expansion(dom, grades)
    print(f"  inverse-Gram boundary kernel: {bnd}")
    print()


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--grades", type=int, default=3)
    args = ap.parse_args()
    show(DomainSpec.generic(3), "generic jet", args.grades)
    show(DomainSpec.ball(3, 1), "unit tangent ball", args.grades)
    show(DomainSpec.halfspace(3), "half-space", args.grades)
    show(DomainSpec.generic(2), "generic jet, dimension 2", args.grades)


if __name__ == "__main__":
    main()
