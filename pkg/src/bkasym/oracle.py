"""Brute-force numerical verification.

Finite-difference Dirichlet solves on smooth 2-D domains with
Shortley-Weller boundary treatment, the spectral construction of the Gram
operator and the harmonic Bergman kernel on balls, cutoff quadrature of the
radial transforms, and least-squares fitting of sampled kernels against
symbolic expansion shapes.
"""

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, sparse, special
from scipy.sparse.linalg import splu

from .closed_forms import dim_constant


# ---------------------------------------------------------------------------
# finite differences


@dataclass
class FdGrid:
    """Cartesian grid over a smooth 2-D domain given by a level function.

    inside(x, y) > 0 marks the interior; boundary_gap(x, y, direction)
    returns the fraction theta in (0, 1] of a grid step from an interior
    node to the boundary along +-x/+-y (1 when the neighbor is interior).
    The discretization is the Shortley-Weller 5-point scheme: second order
    at the boundary, monotone (an M-matrix), in general non-symmetric at
    cut nodes; solves use sparse LU.
    """

    h: float
    bounds: tuple
    level: object  # callable phi(x, y) > 0 inside
    name: str = "domain"

    def node_coords(self):
        x0, x1, y0, y1 = self.bounds
        nx = int(round((x1 - x0) / self.h)) + 1
        ny = int(round((y1 - y0) / self.h)) + 1
        xs = x0 + self.h * np.arange(nx)
        ys = y0 + self.h * np.arange(ny)
        return xs, ys


def disk_grid(h, radius=1.0):
    r2 = radius * radius
    return FdGrid(
        h=h,
        bounds=(-radius, radius, -radius, radius),
        level=lambda x, y: r2 - x * x - y * y,
        name="disk",
    )


def model_domain_grid(h, profile, half_width=1.0, height=1.0):
    """2-D model domain {y > profile(x^2)} clipped to a box.

    The top, left and right box edges are genuine Dirichlet boundary too;
    the curved bottom passes through the origin.
    """

    def level(x, y):
        box = min(half_width - abs(x), height - y)
        return min(box, y - profile(x * x))

    return FdGrid(
        h=h,
        bounds=(-half_width, half_width, None, height),
        level=level,
        name="model",
    )


def _bisect_boundary(level, p, q, tol=1e-14):
    """Fraction t in (0,1] with level(p + t (q - p)) = 0, p interior."""
    a, b = 0.0, 1.0
    fa = level(*p)
    for _ in range(80):
        m = 0.5 * (a + b)
        fm = level(p[0] + m * (q[0] - p[0]), p[1] + m * (q[1] - p[1]))
        if fm > 0:
            a = m
        else:
            b = m
        if b - a < tol:
            break
    return 0.5 * (a + b)


class DirichletSolver:
    """Shortley-Weller discrete Laplacian on an FdGrid, factorized once."""

    def __init__(self, grid):
        self.grid = grid
        h = grid.h
        if grid.bounds[2] is None:
            # model grid: compute a y-range from the profile values
            xs = np.arange(grid.bounds[0], grid.bounds[1] + h / 2, h)
            ymin = min(0.0, min(grid.level(x, 0.0) for x in xs)) - h
            grid.bounds = (grid.bounds[0], grid.bounds[1], ymin, grid.bounds[3])
        xs, ys = grid.node_coords()
        self.xs, self.ys = xs, ys
        level = grid.level
        try:
            gx, gy = np.meshgrid(xs, ys, indexing="ij")
            inside = np.asarray(level(gx, gy)) > 0
            if inside.shape != (len(xs), len(ys)):
                raise TypeError
        except (TypeError, ValueError):
            inside = np.zeros((len(xs), len(ys)), dtype=bool)
            for i, x in enumerate(xs):
                for j, y in enumerate(ys):
                    inside[i, j] = level(x, y) > 0
        idx = -np.ones(inside.shape, dtype=np.int64)
        ii, jj = np.nonzero(inside)
        idx[ii, jj] = np.arange(len(ii))
        self.inside, self.idx = inside, idx
        self.interior_points = np.stack([xs[ii], ys[jj]], axis=1)
        nunk = len(ii)
        rows, cols, vals = [], [], []
        # boundary couplings: (row, boundary point, coefficient)
        self.bc_entries = []
        for k in range(nunk):
            i, j = ii[k], jj[k]
            x, y = xs[i], ys[j]
            thetas = []
            bpts = []
            for di, dj in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                i2, j2 = i + di, j + dj
                q = (x + di * h, y + dj * h)
                if 0 <= i2 < len(xs) and 0 <= j2 < len(ys) and inside[i2, j2]:
                    thetas.append(1.0)
                    bpts.append(None)
                else:
                    t = _bisect_boundary(level, (x, y), q)
                    t = max(t, 1e-6)
                    thetas.append(t)
                    bpts.append((x + t * di * h, y + t * dj * h))
            tE, tW, tN, tS = thetas
            # Shortley-Weller: u_xx ~ 2/(tE+tW) [u_E/tE + u_W/tW - (1/tE+1/tW) u_P] / h^2
            cE = 2.0 / (tE * (tE + tW) * h * h)
            cW = 2.0 / (tW * (tE + tW) * h * h)
            cN = 2.0 / (tN * (tN + tS) * h * h)
            cS = 2.0 / (tS * (tS + tN) * h * h)
            diag = -(cE + cW + cN + cS)
            rows.append(k)
            cols.append(k)
            vals.append(diag)
            for (di, dj), c, t, bp in zip(
                ((1, 0), (-1, 0), (0, 1), (0, -1)), (cE, cW, cN, cS), thetas, bpts
            ):
                if bp is None:
                    k2 = idx[i + di, j + dj]
                    rows.append(k)
                    cols.append(k2)
                    vals.append(c)
                else:
                    self.bc_entries.append((k, bp, c))
        mat = sparse.csc_matrix((vals, (rows, cols)), shape=(nunk, nunk))
        self.lu = splu(mat)
        self.nunk = nunk

    def solve(self, boundary_data):
        """Discrete harmonic function with the given boundary values."""
        rhs = np.zeros(self.nunk)
        for k, (bx, by), c in self.bc_entries:
            rhs[k] -= c * boundary_data(bx, by)
        return self.lu.solve(rhs)

    def value_at(self, sol, x, y):
        """Value at a grid node closest to (x, y); must be interior."""
        i = int(round((x - self.xs[0]) / self.grid.h))
        j = int(round((y - self.ys[0]) / self.grid.h))
        k = self.idx[i, j]
        if k < 0:
            raise ValueError("requested point is not an interior node")
        return sol[k]


def solve_dirichlet_fd(grid, boundary_data):
    """One-shot solve; returns (solver, solution vector)."""
    solver = DirichletSolver(grid)
    return solver, solver.solve(boundary_data)


def fd_convergence_order(boundary_data, exact, hs=(1 / 8, 1 / 16, 1 / 32, 1 / 64)):
    """Observed order of max-norm convergence on the unit disk."""
    errs = []
    for h in hs:
        solver, sol = solve_dirichlet_fd(disk_grid(h), boundary_data)
        pts = solver.interior_points
        vals = np.array([exact(x, y) for x, y in pts])
        errs.append(float(np.max(np.abs(sol - vals))))
    orders = [
        math.log(errs[i] / errs[i + 1]) / math.log(hs[i] / hs[i + 1])
        for i in range(len(hs) - 1)
    ]
    return errs, orders


def fd_poisson_kernel_samples(h, distances, cap_halfwidth=None, radius=1.0):
    """Harmonic measure of a small boundary cap on the disk, per unit mass.

    The Dirichlet data is a smooth bump around the boundary point (0, -R);
    u(x)/mass approximates the Poisson kernel smeared over the cap, sampled
    along the inward normal ray x = 0.  Returns (distances, values, cap)
    with cap the half-angle actually used.
    """
    if cap_halfwidth is None:
        cap_halfwidth = 8 * h
    solver = DirichletSolver(disk_grid(h, radius))
    half_angle = cap_halfwidth / radius

    def bump(x, y):
        ang = math.atan2(x, -y)  # 0 at the south pole
        if abs(ang) >= half_angle:
            return 0.0
        s = ang / half_angle
        return (1 - s * s) ** 2

    mass = integrate.quad(
        lambda a: (1 - (a / half_angle) ** 2) ** 2 * radius,
        -half_angle,
        half_angle,
    )[0]
    sol = solver.solve(bump)
    vals = []
    snapped = []
    for d in distances:
        dg = max(1, round(d / h)) * h  # sample exactly on a grid node
        snapped.append(dg)
        vals.append(solver.value_at(sol, 0.0, -radius + dg) / mass)
    return np.asarray(snapped, dtype=float), np.asarray(vals), half_angle


def fd_poisson_kernel_fit(h, distances, expansion, jet, radius=1.0, cap_halfwidth=None):
    """Fit the FD harmonic-measure kernel against a boundary expansion.

    The FD samples are cap averages, so each expansion power contributes
    the cap average of its (jet-weighted) angular polynomial; fitting one
    coefficient per radial power against these averaged basis functions
    removes the smearing bias exactly.  Returns a NumericReport whose
    predicted coefficients are all 1 (shape-normalized).
    """
    distances, vals, half_angle = fd_poisson_kernel_samples(
        h, distances, cap_halfwidth=cap_halfwidth, radius=radius
    )
    cn = dim_constant(expansion.n)
    powers = sorted({(t.power, t.log) for t in expansion.terms})

    def col_integrand(a, d, power, lg):
        # chart coordinate of the boundary point at angle a from the pole
        yp = radius * math.sin(a)
        rho = math.hypot(d, yp)
        t = d / rho
        s = 0.0
        for term in expansion.terms:
            if term.power != power or term.log != lg:
                continue
            for (ex, _ey), jp in term.coeff.items():
                s += float(jp.eval(jet)) * t ** ex
        v = s * rho ** power
        if lg:
            v *= math.log(rho)
        # the chart kernel carries the surface Jacobian ds/dy'; converting
        # back to the kernel against arc measure brings a factor cos(a)
        b = (1 - (a / half_angle) ** 2) ** 2
        return v * b * radius * math.cos(a)

    mass = integrate.quad(
        lambda a: (1 - (a / half_angle) ** 2) ** 2 * radius, -half_angle, half_angle
    )[0]
    A = np.zeros((len(distances), len(powers)))
    for i, d in enumerate(distances):
        for j, (power, lg) in enumerate(powers):
            A[i, j] = (
                integrate.quad(
                    col_integrand, -half_angle, half_angle, args=(d, power, lg),
                    limit=200,
                )[0]
                / mass
            )
    rhs = vals / cn
    scale = np.linalg.norm(A, axis=0)
    cond = float(np.linalg.cond(A / scale))
    coef = np.linalg.lstsq(A / scale, rhs, rcond=None)[0] / scale
    resid = float(np.linalg.norm(A @ coef - rhs) / np.linalg.norm(rhs))
    return NumericReport(
        basis=[f"rho^{p}" + ("*log" if lg else "") for p, lg in powers],
        coefficients=[float(c) for c in coef],
        predicted=[1.0] * len(powers),
        relative_error=[abs(float(c) - 1.0) for c in coef],
        condition_number=cond,
        residual_norm=resid,
    )


# ---------------------------------------------------------------------------
# spectral ball oracle


@dataclass(frozen=True)
class SpectralBall:
    """Spherical-harmonic construction of the Gram operator and the kernel
    H on the unit ball: degree-l harmonics extend as r^l, and the Gram
    eigenvalue on degree l is 1/(2l+n)."""

    lmax: int
    n: int = 3

    def __post_init__(self):
        if self.lmax < 0:
            raise ValueError("harmonic cutoff must be >= 0")
        if self.n < 2:
            raise ValueError("dimension must be >= 2")

    def gram_eigenvalue(self, l):
        return 1.0 / (2 * l + self.n)

    def zonal(self, l, cosgamma):
        """Zonal harmonic Z_l(x . y) of the unit sphere in R^n."""
        n = self.n
        area = 2 * math.pi ** (n / 2) / math.gamma(n / 2)
        if n == 2:
            return (1.0 if l == 0 else 2.0 * math.cos(l * math.acos(np.clip(cosgamma, -1, 1)))) / area
        if n == 3:
            return (2 * l + 1) / area * special.eval_legendre(l, cosgamma)
        lam = (n - 2) / 2.0
        return (2 * l + n - 2) / (n - 2) / area * special.eval_gegenbauer(l, lam, cosgamma)


def ball_spectral_bergman(sb, x, y):
    """H(x, y) by the spectral sum over spherical-harmonic degrees."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    rx, ry = np.linalg.norm(x), np.linalg.norm(y)
    if rx > 0.999 or ry > 0.999:
        raise ValueError("spectral sum needs interior points away from the boundary")
    cosg = 1.0 if rx * ry == 0 else float(np.dot(x, y) / (rx * ry))
    total = 0.0
    for l in range(sb.lmax + 1):
        term = (rx * ry) ** l * sb.zonal(l, cosg) / sb.gram_eigenvalue(l)
        total += term
    return total


def ball_gram_apply(sb, coeffs):
    """Apply the spectral Gram operator to a coefficient vector by degree."""
    return [c * sb.gram_eigenvalue(l) for l, c in enumerate(coeffs)]


def fd_model_kernel_fit(h, expansion, jet, profile, x0s=None, y_range=(0.09, 0.33, 9),
                        cap_factor=10):
    """Recover expansion coefficients of a curved 2-D model domain from FD data.

    Harmonic measures of small boundary caps centered at several chart
    positions x0 along the curve {y = profile(x^2)} are sampled on the
    center normal; moving the cap instead of the interior point keeps the
    samples inside the center expansion's two-variable domain while varying
    the angular ratio.  One coefficient per expansion grade is fitted
    (shape-normalized: target 1), with quadratic smooth columns absorbing
    the far-boundary contribution.  Returns a NumericReport.
    """
    grid = model_domain_grid(h, profile, half_width=0.8, height=0.8)
    solver = DirichletSolver(grid)
    cap = cap_factor * h
    if x0s is None:
        x0s = (0.0, 0.06, 0.12, 0.18, 0.25)

    def bump01(s):
        return (1 - s * s) ** 2 if abs(s) < 1 else 0.0

    rows = []
    for x0 in x0s:
        sol = solver.solve(
            lambda bx, by, x0=x0: bump01((bx - x0) / cap) if by < 0.4 else 0.0
        )
        for Y in np.geomspace(y_range[0], y_range[1], y_range[2]):
            Yg = max(1, round(Y / h)) * h
            rows.append((x0, Yg, solver.value_at(sol, 0.0, Yg)))

    cn = dim_constant(expansion.n)
    powers = sorted({(t.power, t.log) for t in expansion.terms})

    def col(x0, Y, power, lg):
        def f(x):
            r = math.hypot(Y, x)
            t = Y / r
            s = 0.0
            for term in expansion.terms:
                if term.power != power or term.log != lg:
                    continue
                for (ex, _ey), jp in term.coeff.items():
                    s += float(jp.eval(jet)) * t ** ex
            v = s * r ** power
            if lg:
                v *= math.log(r)
            return v * bump01((x - x0) / cap)

        return integrate.quad(f, x0 - cap, x0 + cap, limit=200)[0]

    nb = len(powers)
    A = np.zeros((len(rows), nb + 6))
    rhs = np.zeros(len(rows))
    bmass = cap * integrate.quad(bump01, -1, 1)[0]
    for i, (x0, Y, v) in enumerate(rows):
        for j, (power, lg) in enumerate(powers):
            A[i, j] = col(x0, Y, power, lg)
        for j, g in enumerate((1.0, x0, Y, x0 * x0, x0 * Y, Y * Y)):
            A[i, nb + j] = bmass * g
        rhs[i] = v / cn
    scale = np.linalg.norm(A, axis=0)
    cond = float(np.linalg.cond(A / scale))
    coef = np.linalg.lstsq(A / scale, rhs, rcond=None)[0] / scale
    resid = float(np.linalg.norm(A @ coef - rhs) / np.linalg.norm(rhs))
    return NumericReport(
        basis=[f"rho^{p}" + ("*log" if lg else "") for p, lg in powers]
        + ["smooth 1", "smooth x0", "smooth Y", "smooth x0^2", "smooth x0*Y",
           "smooth Y^2"],
        coefficients=[float(c) for c in coef],
        predicted=[1.0] * nb + [0.0] * 6,
        relative_error=[abs(float(c) - 1.0) for c in coef[:nb]]
        + [0.0] * 6,
        condition_number=cond,
        residual_norm=resid,
    )


def sphere_quadrature(f, nth=120, nph=240):
    """Integral of f over the unit sphere in R^3 (Gauss-Legendre x trapezoid)."""
    tt, wt = np.polynomial.legendre.leggauss(nth)
    total = 0.0
    for c, wc in zip(tt, wt):
        s = math.sqrt(1 - c * c)
        row = 0.0
        for k in range(nph):
            ph = 2 * math.pi * k / nph
            row += f((s * math.cos(ph), s * math.sin(ph), c))
        total += wc * row * (2 * math.pi / nph)
    return total


def ball_quadrature(f, nr=60, nth=60, nph=120):
    """Integral of f over the unit ball in R^3."""
    rr, wr = np.polynomial.legendre.leggauss(nr)
    rr = 0.5 * (rr + 1)
    wr = 0.5 * wr
    total = 0.0
    for r, w1 in zip(rr, wr):
        total += (
            w1
            * r
            * r
            * sphere_quadrature(lambda z: f((r * z[0], r * z[1], r * z[2])), nth, nph)
        )
    return total


# ---------------------------------------------------------------------------
# cutoff quadrature of the radial transforms


def smooth_patch(w, a=0.5, b=1.5):
    """C^infinity patch function: 0 below a, 1 above b."""
    if w <= a:
        return 0.0
    if w >= b:
        return 1.0
    s = (w - a) / (b - a)
    e1 = math.exp(-1.0 / s)
    e2 = math.exp(-1.0 / (1.0 - s))
    return e1 / (e1 + e2)


def numeric_ift(p, n, T, r, patch=True, wmax_factor=400.0):
    """Cutoff inverse Fourier transform of w^p e^(-Tw) over R^(n-1).

    Radial reduction:  (2 pi)^(-(n-1)/2) r^(1-(n-1)/2)
    int_0^inf theta(w) w^(p+(n-1)/2) e^(-Tw) J_((n-3)/2)(rw) dw.
    """
    if T <= 0:
        raise ValueError("needs T > 0 for absolute convergence")
    d = n - 1
    nu = (d - 2) / 2.0

    def f(w):
        th = smooth_patch(w) if patch else 1.0
        if th == 0.0:
            return 0.0
        return th * w ** (p + d / 2.0) * math.exp(-T * w) * special.jv(nu, r * w)

    wmax = wmax_factor / T
    val = integrate.quad(f, 0, wmax, limit=4000, epsabs=1e-13, epsrel=1e-12)[0]
    return (2 * math.pi) ** (-d / 2.0) * r ** (1 - d / 2.0) * val


# ---------------------------------------------------------------------------
# least-squares fitting of sampled kernels


class FittingError(RuntimeError):
    def __init__(self, message, condition_number=None):
        super().__init__(message)
        self.condition_number = condition_number


@dataclass
class NumericReport:
    """Fit of sampled kernel values against an expansion shape."""

    basis: list
    coefficients: list
    predicted: list
    relative_error: list
    condition_number: float
    residual_norm: float

    def to_json(self):
        return {
            "basis": self.basis,
            "coefficients": self.coefficients,
            "predicted": self.predicted,
            "relative_error": self.relative_error,
            "condition_number": self.condition_number,
            "residual_norm": self.residual_norm,
        }

    def dumps(self):
        return json.dumps(self.to_json(), separators=(",", ":"))


def _basis_functions(expansion):
    """(label, callable(t, rho), predicted JetPoly) triples for each term."""
    out = []
    for term in sorted(expansion.terms, key=lambda t: (t.power, t.log)):
        for (ex, ey), jp in sorted(term.coeff.items()):
            if ey:
                raise ValueError("fit basis expects a potential-type expansion")
            k, lg = term.power, term.log

            def fn(t, rho, ex=ex, k=k, lg=lg):
                v = t ** ex * rho ** k
                return v * math.log(rho) if lg else v

            label = f"t^{ex}*rho^{k}" + ("*log(rho)" if lg else "")
            out.append((label, fn, jp))
    return out


def fit_boundary_expansion(samples, expansion, jet, extra_smooth_powers=()):
    """Least-squares fit of (t, rho, value) samples against expansion terms.

    samples: iterable of (t, rho, value) with value the kernel sample; the
    basis consists of one function per stored (t-monomial, power, log) term
    plus optional smooth powers rho^k (constants on a normal ray).  Returns
    a NumericReport comparing fitted coefficients (in units of c_n) with
    the expansion's jet-evaluated predictions.
    """
    samples = list(samples)
    basis = _basis_functions(expansion)
    labels = [b[0] for b in basis]
    ncols = len(basis) + len(extra_smooth_powers)
    if len(samples) < 2 * ncols:
        raise FittingError("need at least twice as many samples as basis terms")
    cn = dim_constant(expansion.n)
    A = np.zeros((len(samples), ncols))
    rhs = np.zeros(len(samples))
    for i, (t, rho, val) in enumerate(samples):
        for j, (_, fn, _) in enumerate(basis):
            A[i, j] = fn(t, rho)
        for j, k in enumerate(extra_smooth_powers):
            A[i, len(basis) + j] = rho ** k
        rhs[i] = val / cn
    # column scaling for conditioning
    scale = np.linalg.norm(A, axis=0)
    if np.any(scale == 0):
        raise FittingError("degenerate basis column")
    As = A / scale
    cond = float(np.linalg.cond(As))
    if cond > 1e12:
        raise FittingError(
            f"rank-deficient design matrix (cond = {cond:.3e})", condition_number=cond
        )
    coef, res, _rank, _sv = np.linalg.lstsq(As, rhs, rcond=None)
    coef = coef / scale
    fitted = coef[: len(basis)]
    predicted = [float(jp.eval(jet)) for (_, _, jp) in basis]
    rel = [
        abs(f - p) / max(1e-300, abs(p)) if p != 0 else abs(f)
        for f, p in zip(fitted, predicted)
    ]
    resid = float(np.linalg.norm(A @ coef - rhs) / max(1e-300, np.linalg.norm(rhs)))
    return NumericReport(
        basis=labels + [f"smooth rho^{k}" for k in extra_smooth_powers],
        coefficients=[float(c) for c in coef],
        predicted=predicted,
        relative_error=[float(x) for x in rel],
        condition_number=cond,
        residual_norm=resid,
    )
