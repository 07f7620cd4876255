"""Scaling-limit reference distributions.

Harmonic-measure exit CDFs H(theta) for the four domains:

* unit disc: uniform.
* off-centre disc D1: Poisson kernel, evaluated by mapping to the unit
  disc and straightening with the Moebius map that sends the start point
  to the centre (exit angle becomes uniform).
* strip D2: exponential map to a half-plane; the exit position on each
  wall is a Cauchy variable.
* triangle D3: the disc -> equilateral-triangle Schwarz-Christoffel map
  f(w) = C int (1-u^3)^(-2/3) du sends the centre to the centre and the
  boundary angle is uniform; the boundary correspondence reduces to an
  incomplete-Beta arc-length along one edge.

Hull statistics of the Brownian/SLE6 restriction measure in the unit disc
(exit conditioned at 1): P(X <= x), P(Y <= y), P(Z <= r) equal
Phi_A'(1) for the excluded sets A_x = {Re z <= -x}, A_y = {Im z >= y},
A_r = {|z-1| >= r} intersected with the closed disc.  Each D \\ A is a
lune bounded by two circular arcs; Phi_A is assembled from a Moebius map
(corners to 0, infinity), a power map (wedge to half-plane) and a Moebius
map to the disc, and Phi_A'(1) from the chain rule on those pieces.

Monte Carlo oracles (walk-on-spheres exit angles, Brownian-motion hulls)
back every analytic curve; they run in the compiled kernels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.special import betainc, gamma

from . import _kernels as _k
from .geometry import DomainKind

TWO_PI = 2.0 * math.pi
SQRT3 = math.sqrt(3.0)

_DOM_ID = {DomainKind.UNIT_DISC: 0, DomainKind.OFF_CENTER_DISC: 1,
           DomainKind.STRIP: 2, DomainKind.TRIANGLE: 3}


class Provenance(Enum):
    ANALYTIC = "analytic"
    BROWNIAN_ORACLE = "brownian-oracle"


@dataclass
class ReferenceCdf:
    grid: np.ndarray
    values: np.ndarray
    provenance: Provenance

    def __post_init__(self):
        v = np.asarray(self.values)
        if np.any(np.diff(v) < -1e-12):
            raise ValueError("CDF values must be nondecreasing")
        if v[0] < -1e-12 or v[-1] > 1.0 + 1e-12:
            raise ValueError("CDF values must lie in [0, 1]")


def theta_grid(size: int = 2048) -> np.ndarray:
    """Uniform CDF grid on (0, 2pi]: point i is (i+1) * 2pi / size."""
    return TWO_PI * (np.arange(1, size + 1) / size)


def unit_grid(size: int = 2048, lo: float = 0.0, hi: float = 1.0) -> np.ndarray:
    return lo + (hi - lo) * (np.arange(1, size + 1) / size)


# ---------------------------------------------------------------------------
# harmonic measure

def _harmonic_disc(grid):
    return np.asarray(grid) / TWO_PI


def _harmonic_d1(grid):
    th = np.asarray(grid, dtype=float)
    r = np.cos(th) + np.sqrt(np.cos(th) ** 2 + 3.0)
    z = r * np.exp(1j * th)
    w = (z - 1.0) / 2.0            # unit-disc coordinate; start at -1/2
    psi = (w + 0.5) / (1.0 + 0.5 * w)   # Moebius: -1/2 -> 0, exit uniform
    ang = np.unwrap(np.angle(psi))
    # theta -> 0+ gives angle -> 0+; unwrap keeps it increasing from there
    if ang[0] < -1e-9:
        ang = ang + TWO_PI
    return ang / TWO_PI


def _harmonic_d2(grid):
    # exp(pi (z + i) / 3) maps the strip to the upper half-plane; the origin
    # goes to exp(i pi / 3), so the boundary hit is Cauchy(1/2, sqrt(3)/2).
    x0, y0 = 0.5, SQRT3 / 2.0

    def cauchy_cdf(t):
        return 0.5 + np.arctan((t - x0) / y0) / math.pi

    th = np.asarray(grid, dtype=float)
    out = np.empty_like(th)
    top = (th > 0) & (th < math.pi)
    bot = (th > math.pi) & (th < TWO_PI)
    with np.errstate(over="ignore"):
        out[top] = cauchy_cdf(-np.exp((TWO_PI / 3.0) / np.tan(th[top])))
        out[bot] = cauchy_cdf(np.exp((-math.pi / 3.0) / np.tan(th[bot])))
    out[np.isclose(th % TWO_PI, 0.0)] = 0.0
    out[np.isclose(th, math.pi)] = 1.0 / 3.0
    out[np.isclose(th, TWO_PI)] = 1.0
    return out


_TRI_TABLE = None


def _triangle_table():
    """(Theta, t) boundary-correspondence table along one triangle edge."""
    global _TRI_TABLE
    if _TRI_TABLE is not None:
        return _TRI_TABLE
    i0 = gamma(1.0 / 3.0) ** 2 / (3.0 * gamma(2.0 / 3.0))
    c = 2.0 / i0
    b_full = gamma(1.0 / 6.0) * gamma(0.5) / gamma(2.0 / 3.0)
    half = (1.0 / 3.0) * b_full          # I(pi/3): half-edge parameter span

    def edge_integral(t):
        """I(t) = int_0^t sin(3s/2)^(-2/3) ds on [0, 2pi/3]."""
        t = np.asarray(t, dtype=float)
        lo = np.minimum(t, math.pi / 3.0)
        out = (1.0 / 3.0) * b_full * betainc(1.0 / 6.0, 0.5,
                                             np.sin(1.5 * lo) ** 2)
        hi = t > math.pi / 3.0
        if np.any(hi):
            rest = (2.0 * math.pi / 3.0) - t[hi]
            out_hi = 2.0 * half - (1.0 / 3.0) * b_full * betainc(
                1.0 / 6.0, 0.5, np.sin(1.5 * rest) ** 2)
            out[hi] = out_hi
        return out

    # cluster sample points at both edge ends (cube-root arc-length there)
    xi = np.linspace(0.0, 1.0, 20001)
    t = (2.0 * math.pi / 3.0) * (3.0 * xi ** 2 - 2.0 * xi ** 3)
    lam = c * 2.0 ** (-2.0 / 3.0) * edge_integral(t)
    ux, uy = -SQRT3 / 2.0, 0.5
    px = 2.0 + lam * ux
    py = lam * uy
    theta = np.unwrap(np.arctan2(py, px))
    theta[0] = 0.0
    theta[-1] = 2.0 * math.pi / 3.0
    total = lam[-1]
    if abs(total - 2.0 * SQRT3) > 1e-9:
        raise AssertionError("triangle edge length mismatch: %r" % total)
    _TRI_TABLE = (theta, t)
    return _TRI_TABLE


def _harmonic_d3(grid):
    theta_tab, t_tab = _triangle_table()
    th = np.asarray(grid, dtype=float) % TWO_PI
    sector = np.floor(th / (TWO_PI / 3.0)).astype(int)
    sector = np.clip(sector, 0, 2)
    res = th - sector * (TWO_PI / 3.0)
    t = np.interp(res, theta_tab, t_tab)
    out = (sector * (TWO_PI / 3.0) + t) / TWO_PI
    out[np.isclose(np.asarray(grid, dtype=float), TWO_PI)] = 1.0
    return out


def harmonic_cdf(kind: DomainKind, grid=None) -> ReferenceCdf:
    """Analytic CDF of the harmonic-measure exit angle from the origin."""
    if grid is None:
        grid = theta_grid()
    grid = np.asarray(grid, dtype=float)
    if kind is DomainKind.UNIT_DISC:
        v = _harmonic_disc(grid)
    elif kind is DomainKind.OFF_CENTER_DISC:
        v = _harmonic_d1(grid)
    elif kind is DomainKind.STRIP:
        v = _harmonic_d2(grid)
    elif kind is DomainKind.TRIANGLE:
        v = _harmonic_d3(grid)
    else:
        raise ValueError(f"unsupported domain {kind}")
    return ReferenceCdf(grid=grid, values=np.clip(v, 0.0, 1.0),
                        provenance=Provenance.ANALYTIC)


def wos_cdf(kind: DomainKind, nsamples: int, seed: int, grid=None,
            eps: float = 1e-6) -> ReferenceCdf:
    """Walk-on-spheres Brownian-exit oracle for the same CDF."""
    if grid is None:
        grid = theta_grid()
    grid = np.asarray(grid, dtype=float)
    hist = np.zeros(grid.shape[0], dtype=np.int64)
    _k.wos_exit_hist(_DOM_ID[kind], nsamples, seed, eps, hist)
    v = np.cumsum(hist) / float(nsamples)
    return ReferenceCdf(grid=grid, values=v,
                        provenance=Provenance.BROWNIAN_ORACLE)


# ---------------------------------------------------------------------------
# restriction formula: Phi_A'(1) for lune-shaped D \ A

class RestrictionFamily(Enum):
    LEFT_HALF_PLANE = "x"      # A = {Re z <= -x},  x in (0, 1)
    UPPER_HALF_PLANE = "y"     # A = {Im z >= y},   y in (0, 1)
    FAR_FROM_ONE = "z"         # A = {|z-1| >= r},  r in (1, 2)


def _lune_data(family: RestrictionFamily, p: float):
    """Corners of the lune D \\ A and a sample point on the cut arc."""
    if family is RestrictionFamily.LEFT_HALF_PLANE:
        if not 0.0 < p < 1.0:
            raise ValueError("x must be in (0, 1)")
        s = math.sqrt(1.0 - p * p)
        return complex(-p, s), complex(-p, -s), complex(-p, 0.0)
    if family is RestrictionFamily.UPPER_HALF_PLANE:
        if not 0.0 < p < 1.0:
            raise ValueError("y must be in (0, 1)")
        s = math.sqrt(1.0 - p * p)
        return complex(s, p), complex(-s, p), complex(0.0, p)
    if not 1.0 < p < 2.0:
        raise ValueError("r must be in (1, 2)")
    x0 = 1.0 - p * p / 2.0
    y0 = math.sqrt(max(1.0 - x0 * x0, 0.0))
    return complex(x0, y0), complex(x0, -y0), complex(1.0 - p, 0.0)


def phi_prime_at_one(family: RestrictionFamily, p: float) -> float:
    """Phi_A'(1) for the conformal map of D \\ A onto D fixing 0 and 1.

    Assembled analytically (Moebius, power, Moebius); the derivative uses
    the chain rule on the closed-form pieces, never a numerical difference
    at the boundary.
    """
    c1, c2, s_c = _lune_data(family, p)
    one = complex(1.0, 0.0)

    def M(z):
        return (z - c1) / (z - c2)

    u0 = M(0.0)
    u1 = M(one)
    us = M(s_c)
    th1 = np.angle(u1)
    ths = np.angle(us)
    th0 = np.angle(u0)
    d = (ths - th1) % TWO_PI
    if (th0 - th1) % TWO_PI < d:
        base, width = th1, d
    else:
        base, width = ths, TWO_PI - d
    beta = math.pi / width
    rot = complex(math.cos(-base), math.sin(-base))

    def G(u):
        return (rot * u) ** beta

    P0 = G(u0)
    if P0.imag <= 0:
        raise AssertionError("wedge map did not land in the upper half-plane")
    G1 = G(u1)

    def m(w):
        return (w - P0) / (w - P0.conjugate())

    Q1 = m(G1)
    # chain rule
    dM = (c1 - c2) / (one - c2) ** 2
    dG = beta * rot * (rot * u1) ** (beta - 1.0)
    dm = (P0 - P0.conjugate()) / (G1 - P0.conjugate()) ** 2
    val = dm * dG * dM / Q1
    if abs(val.imag) > 1e-7 * max(abs(val), 1e-30):
        raise AssertionError(f"Phi'(1) not real: {val!r}")
    out = float(val.real)
    if not 0.0 < out <= 1.0 + 1e-9:
        raise AssertionError(f"Phi'(1) out of range: {out!r}")
    return min(out, 1.0)


def phi_map(family: RestrictionFamily, p: float):
    """The full map Phi_A (for boundary sanity checks)."""
    c1, c2, s_c = _lune_data(family, p)

    def M(z):
        return (z - c1) / (z - c2)

    u0, u1, us = M(0.0), M(complex(1.0, 0.0)), M(s_c)
    th1, ths, th0 = np.angle(u1), np.angle(us), np.angle(u0)
    d = (ths - th1) % TWO_PI
    if (th0 - th1) % TWO_PI < d:
        base, width = th1, d
    else:
        base, width = ths, TWO_PI - d
    beta = math.pi / width
    rot = complex(math.cos(-base), math.sin(-base))

    def G(u):
        return (rot * u) ** beta

    P0 = G(u0)
    Q1 = (G(u1) - P0) / (G(u1) - P0.conjugate())

    def phi(z):
        w = G(M(z))
        return ((w - P0) / (w - P0.conjugate())) / Q1

    return phi


class XyzVariable(Enum):
    X = "x"
    Y = "y"
    Z = "z"

_XYZ_FAMILY = {XyzVariable.X: RestrictionFamily.LEFT_HALF_PLANE,
               XyzVariable.Y: RestrictionFamily.UPPER_HALF_PLANE,
               XyzVariable.Z: RestrictionFamily.FAR_FROM_ONE}


def xyz_cdf(variable: XyzVariable, grid=None, grid_size: int = 2048) -> ReferenceCdf:
    """Analytic CDF of X, Y or Z from the restriction formula."""
    if grid is None:
        lo, hi = (1.0, 2.0) if variable is XyzVariable.Z else (0.0, 1.0)
        grid = unit_grid(grid_size, lo, hi)
    grid = np.asarray(grid, dtype=float)
    fam = _XYZ_FAMILY[variable]
    lo, hi = (1.0, 2.0) if variable is XyzVariable.Z else (0.0, 1.0)
    vals = np.empty_like(grid)
    for i, g in enumerate(grid):
        if g <= lo:
            vals[i] = 0.0
        elif g >= hi:
            vals[i] = 1.0
        else:
            vals[i] = phi_prime_at_one(fam, float(g))
    vals = np.maximum.accumulate(np.clip(vals, 0.0, 1.0))
    return ReferenceCdf(grid=grid, values=vals, provenance=Provenance.ANALYTIC)


# ---------------------------------------------------------------------------
# Brownian-hull oracle

def _bm_chunk(args):
    h, i0, i1, seed, grid_size = args
    hx = np.zeros(grid_size, dtype=np.int64)
    hy = np.zeros(grid_size, dtype=np.int64)
    hz = np.zeros(grid_size, dtype=np.int64)
    st = np.zeros(3, dtype=np.int64)
    _k.bm_hull_hists(h, i0, i1, seed, hx, hy, hz, st)
    return hx, hy, hz, st


def bm_hull_cdfs(h: float, nsamples: int, seed: int, grid_size: int = 2048,
                 workers: int = 1):
    """Empirical X/Y/Z CDFs of discretised Brownian hulls in the unit disc
    (exit rotated to 1).  Returns (cdf_x, cdf_y, cdf_z, stats_dict).
    Sample i draws from stream (seed, i): workers never affect output."""
    if workers > 1:
        import multiprocessing as mp
        edges = np.linspace(0, nsamples, 4 * workers + 1).astype(int)
        args = [(h, int(a), int(b), seed, grid_size)
                for a, b in zip(edges[:-1], edges[1:]) if b > a]
        with mp.get_context("fork").Pool(workers) as pool:
            parts = pool.map(_bm_chunk, args)
        hx = np.sum([p[0] for p in parts], axis=0)
        hy = np.sum([p[1] for p in parts], axis=0)
        hz = np.sum([p[2] for p in parts], axis=0)
        st = np.sum([p[3] for p in parts], axis=0)
    else:
        hx = np.zeros(grid_size, dtype=np.int64)
        hy = np.zeros(grid_size, dtype=np.int64)
        hz = np.zeros(grid_size, dtype=np.int64)
        st = np.zeros(3, dtype=np.int64)
        _k.bm_hull_hists(h, 0, nsamples, seed, hx, hy, hz, st)
    ok = int(st[0])
    gx = unit_grid(grid_size)
    gz = unit_grid(grid_size, 1.0, 2.0)
    mk = lambda g, hist: ReferenceCdf(grid=g, values=np.cumsum(hist) / ok,
                                      provenance=Provenance.BROWNIAN_ORACLE)
    stats = {"ok": ok, "aborted": int(st[1]), "mean_steps": st[2] / max(ok, 1)}
    return mk(gx, hx), mk(gx, hy), mk(gz, hz), stats


def bm_hull_sample(rng, h: float, step_cap: int = 1 << 20):
    """One Brownian hull draw: Gaussian steps of variance h per coordinate
    until the unit disc is left, rotated so the exit lands at angle 0.
    Returns the HullStats of the discrete path (object-level API; bulk
    sampling goes through :func:`bm_hull_cdfs`)."""
    from .geometry import HullStats, hull_stats
    pts = [(0.0, 0.0)]
    s = math.sqrt(h)
    x = y = 0.0
    while x * x + y * y <= 1.0:
        if len(pts) > step_cap:
            raise RuntimeError("step cap exceeded")
        u1 = max(rng.uniform(), 1e-300)
        u2 = rng.uniform()
        r = math.sqrt(-2.0 * math.log(u1))
        x += s * r * math.cos(2 * math.pi * u2)
        y += s * r * math.sin(2 * math.pi * u2)
        pts.append((x, y))
    return hull_stats(np.asarray(pts), math.atan2(y, x))


def richardson_sqrt_h(f_h: np.ndarray, f_h2: np.ndarray) -> np.ndarray:
    """Eliminate the O(sqrt(h)) discretisation bias from estimates at step
    sizes h and h/2."""
    return f_h2 + (f_h2 - f_h) / (math.sqrt(2.0) - 1.0)
