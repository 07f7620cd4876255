import math

import numpy as np
import pytest

from sksaw import reference as R
from sksaw.geometry import DomainKind

TWO_PI = 2 * math.pi


def test_disc_uniform():
    grid = R.theta_grid(256)
    h = R.harmonic_cdf(DomainKind.UNIT_DISC, grid)
    assert np.allclose(h.values, grid / TWO_PI)


def test_d1_reflection_symmetry():
    grid = R.theta_grid(4096)
    h = R.harmonic_cdf(DomainKind.OFF_CENTER_DISC, grid)
    i = np.argmin(np.abs(grid - math.pi))
    assert h.values[i] == pytest.approx(0.5, abs=1e-6)
    # H(2pi - t) = 1 - H(t) by reflection about the real axis
    for t in (0.5, 1.0, 2.0):
        ht = np.interp(t, grid, h.values)
        hr = np.interp(TWO_PI - t, grid, h.values)
        assert ht == pytest.approx(1.0 - hr, abs=1e-6)


def test_d2_strip_anchors():
    grid = R.theta_grid(4096)
    h = R.harmonic_cdf(DomainKind.STRIP, grid)
    # P(top wall) = 1/3 by the linear harmonic function of height
    i = np.argmin(np.abs(grid - math.pi))
    assert h.values[i] == pytest.approx(1.0 / 3.0, abs=1e-6)
    # H(pi/2) = 1/6: top exits with x > 0 are half the top mass
    j = np.argmin(np.abs(grid - math.pi / 2))
    assert h.values[j] == pytest.approx(1.0 / 6.0, abs=1e-6)
    assert h.values[-1] == pytest.approx(1.0)


def test_d3_triangle_anchors():
    grid = R.theta_grid(4096)
    h = R.harmonic_cdf(DomainKind.TRIANGLE, grid)
    i = np.argmin(np.abs(grid - 2 * math.pi / 3))
    assert h.values[i] == pytest.approx(1.0 / 3.0, abs=1e-6)
    # reflection symmetry about the real axis
    for t in (0.4, 1.1, 1.9):
        ht = np.interp(t, grid, h.values)
        hr = np.interp(TWO_PI - t, grid, h.values)
        assert ht == pytest.approx(1.0 - hr, abs=1e-6)


def test_monotone_cdfs():
    grid = R.theta_grid(2048)
    for kind in DomainKind:
        v = R.harmonic_cdf(kind, grid).values
        assert np.all(np.diff(v) >= -1e-12)
        assert v[0] >= 0 and v[-1] <= 1 + 1e-12


@pytest.mark.parametrize("kind", [DomainKind.UNIT_DISC,
                                  DomainKind.OFF_CENTER_DISC,
                                  DomainKind.STRIP, DomainKind.TRIANGLE])
def test_wos_agreement(kind):
    """Analytic H(theta) vs the walk-on-spheres Brownian exit oracle.

    Sup-norm agreement within Monte Carlo error at 1e7 oracle samples;
    the band is the Kolmogorov 0.1% critical value, the rigorous form of
    a few-sigma agreement requirement for a whole-curve comparison.
    """
    grid = R.theta_grid(512)
    h = R.harmonic_cdf(kind, grid)
    n = 10_000_000
    w = R.wos_cdf(kind, n, 314, grid)
    assert np.abs(w.values - h.values).max() < 1.95 / math.sqrt(n)


def test_phi_prime_endpoints():
    f = R.RestrictionFamily
    assert R.phi_prime_at_one(f.LEFT_HALF_PLANE, 0.9999) == pytest.approx(1.0, abs=1e-3)
    assert R.phi_prime_at_one(f.UPPER_HALF_PLANE, 0.9999) == pytest.approx(1.0, abs=1e-3)
    assert R.phi_prime_at_one(f.FAR_FROM_ONE, 1.9999) == pytest.approx(1.0, abs=1e-3)


def test_phi_prime_monotone_and_in_range():
    f = R.RestrictionFamily
    for fam, lo, hi in ((f.LEFT_HALF_PLANE, 0.01, 0.99),
                        (f.UPPER_HALF_PLANE, 0.01, 0.99),
                        (f.FAR_FROM_ONE, 1.01, 1.99)):
        ps = np.linspace(lo, hi, 80)
        vals = [R.phi_prime_at_one(fam, p) for p in ps]
        assert all(0 < v <= 1 for v in vals)
        assert all(b > a for a, b in zip(vals, vals[1:]))


def test_phi_prime_rejects_out_of_range():
    f = R.RestrictionFamily
    for fam, bad in ((f.LEFT_HALF_PLANE, 0.0), (f.LEFT_HALF_PLANE, 1.0),
                     (f.UPPER_HALF_PLANE, -0.2), (f.FAR_FROM_ONE, 0.5),
                     (f.FAR_FROM_ONE, 2.0)):
        with pytest.raises(ValueError):
            R.phi_prime_at_one(fam, bad)


def test_phi_map_normalisation_and_boundary():
    f = R.RestrictionFamily
    for fam, p in ((f.LEFT_HALF_PLANE, 0.35), (f.UPPER_HALF_PLANE, 0.6),
                   (f.FAR_FROM_ONE, 1.4)):
        phi = R.phi_map(fam, p)
        assert abs(phi(0.0)) < 1e-12
        assert abs(phi(1.0 + 0j) - 1.0) < 1e-12
        # boundary points of D \ A map to the unit circle
        margin = 1e-3  # stay off the lune corners (power-map precision)
        if fam is f.LEFT_HALF_PLANE:
            tmax = math.acos(-p) - margin
            pts = [np.exp(1j * t) for t in np.linspace(-tmax, tmax, 9)]
        elif fam is f.UPPER_HALF_PLANE:
            # retained arc runs from the (-sqrt(1-p^2), p) corner down
            # around the bottom of the circle to the (+sqrt(1-p^2), p) one
            t_hi = math.asin(p)
            t_lo = (math.pi - math.asin(p)) - TWO_PI
            pts = [np.exp(1j * t) for t in
                   np.linspace(t_lo + margin, t_hi - margin, 9)]
        else:
            x0 = 1 - p * p / 2
            tmax = math.acos(x0) - margin
            pts = [np.exp(1j * t) for t in np.linspace(-tmax, tmax, 9)]
        for z in pts:
            assert abs(abs(phi(z)) - 1.0) < 1e-9


def test_xyz_cdf_endpoints_and_shape():
    gx = R.unit_grid(256)
    gz = R.unit_grid(256, 1.0, 2.0)
    cx = R.xyz_cdf(R.XyzVariable.X, gx)
    cy = R.xyz_cdf(R.XyzVariable.Y, gx)
    cz = R.xyz_cdf(R.XyzVariable.Z, gz)
    assert cz.values[-1] == pytest.approx(1.0)       # P(Z <= 2) = 1
    assert cx.values[-1] == pytest.approx(1.0)       # P(X <= 1) = 1
    for c in (cx, cy, cz):
        assert np.all(np.diff(c.values) >= -1e-12)
        assert c.values[0] < 0.2
    # P(Z <= 1+) ~ 0 and P(X <= 0+) ~ 0
    assert cz.values[0] < 0.05
    # X is stochastically smallest: the walk rarely travels far left of 0
    # when conditioned to exit at 1, while it often rises well above it
    assert cx.values[64] > cy.values[64]


def test_bm_hull_oracle_bounds_and_exit_time():
    n = 200_000
    cx, cy, cz, st = R.bm_hull_cdfs(1e-3, n, 7, grid_size=256)
    assert st["ok"] == n
    # mean exit time of planar BM from the unit disc started at 0 is 1/2;
    # Richardson in sqrt(h) across two step sizes removes the O(sqrt h) bias
    _, _, _, st2 = R.bm_hull_cdfs(5e-4, n, 8, grid_size=256)
    t1 = st["mean_steps"] * 1e-3
    t2 = st2["mean_steps"] * 5e-4
    extrap = t2 + (t2 - t1) / (math.sqrt(2) - 1)
    assert extrap == pytest.approx(0.5, abs=0.01)
    for c in (cx, cy, cz):
        assert np.all(np.diff(c.values) >= 0)
        assert c.values[-1] == pytest.approx(1.0)


def test_bm_hull_matches_analytic_extrapolated():
    n = 300_000
    g = 256
    cx1, _, cz1, _ = R.bm_hull_cdfs(8e-4, n, 21, grid_size=g)
    cx2, _, cz2, _ = R.bm_hull_cdfs(4e-4, n, 22, grid_size=g)
    ana_x = R.xyz_cdf(R.XyzVariable.X, cx1.grid)
    f0 = R.richardson_sqrt_h(cx1.values, cx2.values)
    band = 3 * 4.18 * 0.5 / math.sqrt(n) + 3e-3  # noise + residual O(h)
    assert np.abs(f0 - ana_x.values).max() < band


def test_reference_cdf_validation():
    with pytest.raises(ValueError):
        R.ReferenceCdf(grid=np.array([0.0, 1.0]),
                       values=np.array([0.5, 0.2]),
                       provenance=R.Provenance.ANALYTIC)


def test_bm_hull_sample_single_api():
    from sksaw.walker import RandomStream
    rng = RandomStream(404)
    for _ in range(10):
        h = R.bm_hull_sample(rng, 5e-3)
        assert 0.0 <= h.X <= 1.0 + 0.3
        assert 0.0 <= h.Y <= 1.0 + 0.3
        assert 1.0 <= h.Z <= 2.0 + 0.3
