import math

import numpy as np
import pytest

from sksaw import stats as S


def test_empirical_cdf_example():
    e = S.empirical_cdf([1.0, 2.0, 3.0], [1.5, 2.5, 3.5])
    assert list(e.counts) == [1, 2, 3]
    assert e.n == 3


def test_empirical_cdf_all_below_grid():
    e = S.empirical_cdf([0.1, 0.2], [1.0, 2.0])
    assert list(e.counts) == [2, 2]


def test_empirical_cdf_errors():
    with pytest.raises(ValueError):
        S.empirical_cdf([], [1.0, 2.0])
    with pytest.raises(ValueError):
        S.empirical_cdf([1.0], [2.0, 1.0])


def test_empirical_matches_naive_recount():
    rng = np.random.default_rng(0)
    samples = rng.normal(size=500)
    grid = np.sort(rng.uniform(-3, 3, size=40))
    e = S.empirical_cdf(samples, grid)
    naive = [(samples <= g).sum() for g in grid]
    assert list(e.counts) == naive


def test_histogram_cdf_consistency():
    rng = np.random.default_rng(1)
    samples = rng.uniform(0, 1, size=1000)
    grid = np.linspace(0.01, 1.0, 100)
    hist = np.zeros(100, dtype=np.int64)
    for s in samples:
        j = min(int(s * 100), 99)
        hist[j] += 1
    a = S.cdf_from_histogram(grid, hist)
    b = S.empirical_cdf(samples, grid)
    # binning matches the exact count up to boundary ties (measure zero)
    assert np.max(np.abs(a.counts - b.counts)) <= 0


def test_merge_is_union():
    rng = np.random.default_rng(2)
    grid = np.linspace(0, 1, 32)
    s1 = rng.uniform(0, 1, 200)
    s2 = rng.uniform(0, 1, 300)
    merged = S.merge_cdfs([S.empirical_cdf(s1, grid), S.empirical_cdf(s2, grid)])
    direct = S.empirical_cdf(np.concatenate([s1, s2]), grid)
    assert np.array_equal(merged.counts, direct.counts)
    assert merged.n == direct.n
    # permutation invariance
    swapped = S.merge_cdfs([S.empirical_cdf(s2, grid), S.empirical_cdf(s1, grid)])
    assert np.array_equal(swapped.counts, merged.counts)


def test_diff_curve_zero_and_linearity():
    grid = np.linspace(0, 1, 16)
    e = S.empirical_cdf(np.linspace(0.01, 0.99, 50), grid)
    d0 = S.diff_curve(e, e.values)
    assert np.allclose(d0.diff, 0)
    href = np.clip(grid, 0, 1)
    d1 = S.diff_curve(e, href, scale=1.0)
    d2 = S.diff_curve(e, href, scale=0.5)
    assert np.allclose(d2.diff, 0.5 * d1.diff)
    assert np.allclose(d2.stderr, 0.5 * d1.stderr)


def test_diff_curve_grid_mismatch():
    grid = np.linspace(0, 1, 16)
    e = S.empirical_cdf([0.5], grid)
    with pytest.raises(ValueError):
        S.diff_curve(e, S.empirical_cdf([0.5], np.linspace(0, 2, 16)))


def test_l1_norm_examples():
    grid = np.linspace(0, 2 * math.pi, 4096)
    zero = S.DiffCurve(grid=grid, diff=np.zeros_like(grid),
                       stderr=np.zeros_like(grid), scale=1.0)
    assert S.l1_norm(zero) == 0.0
    const = S.DiffCurve(grid=grid, diff=np.full_like(grid, -0.3),
                        stderr=np.zeros_like(grid), scale=1.0)
    assert S.l1_norm(const) == pytest.approx(0.3)
    sin = S.DiffCurve(grid=grid, diff=np.sin(grid),
                      stderr=np.zeros_like(grid), scale=1.0)
    assert S.l1_norm(sin) == pytest.approx(2.0 / math.pi, abs=1e-6)


def test_l1_triangle_inequality():
    grid = np.linspace(0, 1, 64)
    rng = np.random.default_rng(3)
    a = rng.normal(size=64)
    b = rng.normal(size=64)
    mk = lambda d: S.DiffCurve(grid=grid, diff=d, stderr=np.zeros(64), scale=1.0)
    assert S.l1_norm(mk(a + b)) <= S.l1_norm(mk(a)) + S.l1_norm(mk(b)) + 1e-12


def test_fit_line_exact():
    pts = [(x, 2.5 * x - 1.0) for x in (0.0, 1.0, 2.0, 5.0)]
    f = S.fit_line(pts)
    assert f.slope == pytest.approx(2.5, abs=1e-12)
    assert f.intercept == pytest.approx(-1.0, abs=1e-12)
    assert f.rss == pytest.approx(0.0, abs=1e-20)


def test_fit_line_two_points_interpolates():
    f = S.fit_line([(1.0, 3.0), (3.0, 7.0)])
    assert f.slope == pytest.approx(2.0)
    assert f.intercept == pytest.approx(1.0)


def test_fit_line_orthogonality():
    rng = np.random.default_rng(4)
    x = rng.uniform(0, 1, 30)
    y = 1.3 * x + rng.normal(size=30)
    f = S.fit_line(np.column_stack([x, y]))
    r = y - f.slope * x - f.intercept
    assert abs(r.sum()) < 1e-10
    assert abs((r * x).sum()) < 1e-10


def test_fit_line_degenerate():
    with pytest.raises(ValueError):
        S.fit_line([(1.0, 2.0), (1.0, 3.0)])
    with pytest.raises(ValueError):
        S.fit_line([(1.0, 2.0)])


def test_l1_stderr_tracks_scatter_in_signal_regime():
    # synthetic: true diff curve well above noise; the delta-method error
    # should match the observed scatter within ~25%
    rng = np.random.default_rng(5)
    grid = np.linspace(0.0, 1.0, 256)
    href = np.clip(grid, 0, 1) ** 2
    true = href + 0.02 * np.sin(6 * grid)
    n = 40000
    vals = []
    est = None
    for rep in range(40):
        samples = rng.uniform(0, 1, n)
        # invert: sample from the CDF 'true' via interpolation
        xs = np.interp(samples, true / true[-1], grid)
        e = S.empirical_cdf(xs, grid)
        d = S.diff_curve(e, href)
        vals.append(S.l1_norm(d))
        if rep == 0:
            est = S.l1_norm_stderr(e, href)
    sd = np.std(vals, ddof=1)
    assert est == pytest.approx(sd, rel=0.35)


def test_ks_distance():
    grid = np.linspace(0, 1, 64)
    e = S.empirical_cdf(np.full(100, 0.25), grid)
    d, i = S.ks_distance(e, grid)  # reference: uniform CDF
    assert d == pytest.approx(1.0 - 0.25, abs=0.02)


def test_conditioned_tables_synthetic_homogeneity():
    rng = np.random.default_rng(6)
    G = 64
    gx = (np.arange(1, G + 1)) / G
    gz = 1.0 + gx
    refs = [gx, gx, gx]  # uniform references
    hist = np.zeros((6, 3, G), dtype=np.int64)
    n_per = 6000
    for k in range(6):
        for v in range(3):
            s = rng.uniform(0, 1, n_per)
            for val in s:
                hist[k, v, min(int(val * G), G - 1)] += 1
    out = S.conditioned_xyz_tables(hist, [gx, gx, gx], refs)
    assert not out["empty_subsets"]
    l1s = [row["l1"] for row in out["subsets"]]
    # statistically identical subsets: total L1 is pure noise, same scale
    for v in range(3):
        vals = [l[v] for l in l1s]
        assert max(vals) < 4 * np.sqrt(0.25 / n_per)
    # chi-square homogeneity of the subset counts
    counts = np.array([row["count"] for row in out["subsets"]], dtype=float)
    chi2 = ((counts - counts.mean()) ** 2 / counts.mean()).sum()
    assert chi2 < 25.0


def test_conditioned_tables_flags_empty():
    G = 8
    gx = (np.arange(1, G + 1)) / G
    hist = np.zeros((6, 3, G), dtype=np.int64)
    hist[0, :, 2] = 5
    out = S.conditioned_xyz_tables(hist, [gx, gx, gx], [gx, gx, gx])
    assert out["empty_subsets"] == [1, 2, 3, 4, 5]
