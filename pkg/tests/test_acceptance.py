"""Acceptance gate: one test per criterion, each printing a PASS line.

Run with  pytest tests/test_acceptance.py -v -s  to see the per-criterion
report.  Tolerances and runtime budgets are pinned here, not configurable.
"""

import time

import numpy as np
import pytest

from bkasym.closed_forms import (
    PointPair,
    dim_constant,
    eval_bergman_closed,
    eval_weighted_halfspace,
)
from bkasym.domains import DomainSpec
from bkasym.oracle import (
    SpectralBall,
    ball_spectral_bergman,
    fd_convergence_order,
    fd_poisson_kernel_fit,
    numeric_ift,
)
from bkasym.transforms import (
    atoms_value,
    poisson_kernel_expansion,
    radial_profile,
)
from bkasym.verification import (
    check_boundary_kernel,
    check_gram_series,
    check_green_leading,
    check_inverse_series,
    check_log_vanishing,
    check_poisson_expansion,
    check_sobolev_identities,
    check_symbol_grades,
    check_weighted_principal,
)


def _report(num, label, elapsed=None, budget=None):
    extra = ""
    if elapsed is not None:
        extra = f"  [{elapsed:.2f}s" + (f" <= {budget}s]" if budget else "]")
    print(f"PASS criterion {num}: {label}{extra}")


def test_criterion_1_symbol_grades():
    t0 = time.time()
    name, ok, detail = check_symbol_grades()
    elapsed = time.time() - t0
    assert ok, detail
    assert elapsed <= 10.0
    _report(1, "n=3 symbol grades k_0..k_-3 exact", elapsed, 10)


def test_criterion_2_poisson_expansion():
    t0 = time.time()
    name, ok, detail = check_poisson_expansion()
    elapsed = time.time() - t0
    assert ok, detail
    assert elapsed <= 30.0
    _report(2, "n=3 Poisson boundary expansion exact incl. log coefficient",
            elapsed, 30)


def test_criterion_3_gram_chain():
    t0 = time.time()
    for chk in (check_gram_series, check_inverse_series, check_boundary_kernel):
        name, ok, detail = chk()
        assert ok, f"{name}: {detail}"
    elapsed = time.time() - t0
    assert elapsed <= 60.0
    _report(3, "Gram symbol, inverse symbol, boundary kernel exact", elapsed, 60)


def test_criterion_4_bergman_leading():
    name, ok, detail = check_green_leading()
    assert ok, detail
    _report(4, "Bergman leading term exact for symbolic dimension; "
               "boundary trace -2 c_n |x-y|^-n")


def test_criterion_5_log_vanishing():
    name, ok, detail = check_log_vanishing()
    assert ok, detail
    _report(5, "log coefficients vanish exactly: half-space, tangent balls, n=2")


def test_criterion_6_sobolev():
    t0 = time.time()
    name, ok, detail = check_sobolev_identities()
    elapsed = time.time() - t0
    assert ok, detail
    assert elapsed <= 5.0
    _report(6, "first-order Sobolev principal identities exact", elapsed, 5)


def test_criterion_7_ball_oracle():
    t0 = time.time()
    sb = SpectralBall(60, 3)
    rng = np.random.default_rng(42)
    worst = 0.0
    for _ in range(20):
        x = rng.uniform(-1, 1, 3)
        y = rng.uniform(-1, 1, 3)
        for v in (x, y):
            nv = np.linalg.norm(v)
            if nv > 0.7:
                v *= 0.7 * rng.uniform(0.3, 1.0) / nv
        got = ball_spectral_bergman(sb, tuple(x), tuple(y))
        want = eval_bergman_closed("ball", PointPair(tuple(x), tuple(y), 3))
        worst = max(worst, abs(got - want) / max(1.0, abs(want)))
    assert worst <= 1e-6, worst

    # closed-form kernel reproduces harmonic polynomials of degree <= 3
    from bkasym.oracle import ball_quadrature

    x0 = (0.2, -0.15, 0.1)
    polys = (
        lambda p: 1.0,
        lambda p: p[0],
        lambda p: p[0] * p[1],
        lambda p: p[0] ** 2 - p[2] ** 2,
        lambda p: p[2] ** 3 - 1.5 * p[2] * (p[0] ** 2 + p[1] ** 2),
        lambda p: p[0] ** 3 - 3 * p[0] * p[1] ** 2,
    )
    for u in polys:
        val = ball_quadrature(
            lambda y: eval_bergman_closed("ball", PointPair(x0, y, 3)) * u(y),
            nr=40, nth=40, nph=80,
        )
        assert abs(val - u(x0)) <= 1e-4 * max(1.0, abs(u(x0)))
    elapsed = time.time() - t0
    assert elapsed <= 60.0
    _report(7, "spectral vs closed-form ball kernel <= 1e-6; "
               "reproduces harmonic cubics <= 1e-4", elapsed, 60)


def test_criterion_8_transform_quadrature():
    """Every profile family feeding criteria 2-4 matches cutoff quadrature.

    Families used: (q, p) with p = q - j for the n=3 Poisson grades, the
    boundary psdo powers 1..-2, and the Green exponents; after removing a
    fitted smooth part the residual is <= 1e-8 (relative to the kernel
    scale at the sample points).
    """
    t0 = time.time()
    checked = set()
    cn = dim_constant(3)
    # convergent-zone: direct comparison
    for p in (3, 2, 1, 0, -1):
        got = atoms_value(radial_profile(p, 3), 0.8, 0.6)
        want = numeric_ift(p, 3, 0.8, 0.6, patch=False) / cn
        assert abs(got - want) <= 1e-8 * max(1.0, abs(want)), p
        checked.add(p)
    # log-zone: smooth-part removal along a dilation path
    for p in (-2,):
        T0, r0 = 0.4, 0.65
        ss = np.linspace(0.8, 1.2, 13)
        resid = []
        for s in ss:
            got = atoms_value(radial_profile(p, 3), s * T0, s * r0)
            num = numeric_ift(p, 3, s * T0, s * r0) / cn
            resid.append(num - got)
        A = np.stack([ss ** d for d in range(7)], axis=1)
        coef, *_ = np.linalg.lstsq(A, np.asarray(resid), rcond=None)
        tail = np.asarray(resid) - A @ coef
        assert np.max(np.abs(tail)) <= 1e-8
        checked.add(p)
    elapsed = time.time() - t0
    assert elapsed <= 60.0
    _report(8, f"radial transforms vs cutoff quadrature (p in {sorted(checked)})",
            elapsed, 60)


def test_criterion_9_weighted_consistency():
    # numeric half: alpha = 0 equals the unweighted leading transform
    cn = dim_constant(3)
    rng = np.random.default_rng(9)
    for _ in range(10):
        xn, yn = rng.uniform(0.05, 1.0, 2)
        r = float(rng.uniform(0.01, 2.0))
        pp = PointPair((0, 0, xn), (r, 0, yn), 3)
        got = eval_weighted_halfspace(0.0, 0.0, pp)
        T = xn + yn
        rho2 = T * T + r * r
        want = 2 * cn * (3 * T * T - rho2) / rho2 ** 2.5
        assert abs(got - want) <= 1e-10 * max(1.0, abs(want))
    # symbolic half: the weighted Gram grade 0 is the known principal
    name, ok, detail = check_weighted_principal()
    assert ok, detail
    _report(9, "weighted kernel at alpha=0 matches unweighted <= 1e-10; "
               "weighted principal symbol exact")


def test_criterion_10_fd_suite():
    t0 = time.time()
    u4 = lambda x, y: x ** 4 - 6 * x * x * y * y + y ** 4
    errs, orders = fd_convergence_order(u4, u4, hs=(1 / 16, 1 / 32, 1 / 64, 1 / 128))
    assert all(o >= 1.9 for o in orders), orders

    dom = DomainSpec.ball(2, 1)
    exp = poisson_kernel_expansion(dom, 2)
    ds = np.geomspace(0.08, 0.4, 16)
    rep = fd_poisson_kernel_fit(1 / 256, ds, exp, dom.jet)
    lead_err = rep.relative_error[rep.basis.index("rho^-1")]
    assert lead_err <= 0.01, rep.coefficients
    elapsed = time.time() - t0
    # the |x| log|x| coefficient is NOT claimed from FD data; its
    # verification is symbolic (criteria 2, 3, 5).
    _report(10, f"FD order >= 1.9 {['%.2f' % o for o in orders]}; "
                f"disk kernel leading coefficient within 1% ({lead_err:.4f})",
            elapsed)
