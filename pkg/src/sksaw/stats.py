"""Empirical CDFs, difference curves, L1 norms and least-squares fits.

Samples are histogrammed straight into the CDF grid (counts[i] is the
number of samples <= grid[i]), so accumulators merge by plain addition
and memory stays constant at any sample count.  Standard errors are
binomial pointwise; the statistical error of an L1 norm propagates the
full multinomial covariance of the binned CDF through the linearised
absolute-difference integral.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass
class EmpiricalCdf:
    grid: np.ndarray
    counts: np.ndarray          # cumulative counts, counts[i] = #{s <= grid[i]}
    n: int

    def __post_init__(self):
        if np.any(np.diff(self.counts) < 0):
            raise ValueError("cumulative counts must be nondecreasing")

    @property
    def values(self) -> np.ndarray:
        return self.counts / float(self.n)

    def stderr(self) -> np.ndarray:
        f = self.values
        return np.sqrt(f * (1.0 - f) / self.n)


def empirical_cdf(samples, grid) -> EmpiricalCdf:
    """Exact empirical CDF of raw samples on a grid."""
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or np.any(np.diff(grid) <= 0):
        raise ValueError("grid must be strictly increasing")
    samples = np.asarray(samples, dtype=float)
    if samples.size == 0:
        raise ValueError("empty sample set")
    counts = np.searchsorted(np.sort(samples), grid, side="right")
    return EmpiricalCdf(grid=grid, counts=counts.astype(np.int64),
                        n=samples.size)


def cdf_from_histogram(grid, hist, n=None) -> EmpiricalCdf:
    """Empirical CDF from per-bin counts (bin i collects samples in
    (grid[i-1], grid[i]])."""
    hist = np.asarray(hist, dtype=np.int64)
    counts = np.cumsum(hist)
    return EmpiricalCdf(grid=np.asarray(grid, dtype=float), counts=counts,
                        n=int(counts[-1]) if n is None else int(n))


def merge_cdfs(parts: list[EmpiricalCdf]) -> EmpiricalCdf:
    """Combine disjoint sample sets; addition of counts, any order."""
    if not parts:
        raise ValueError("nothing to merge")
    g0 = parts[0].grid
    for p in parts[1:]:
        if p.grid.shape != g0.shape or not np.array_equal(p.grid, g0):
            raise ValueError("grids differ; cannot merge")
    counts = np.sum([p.counts for p in parts], axis=0)
    return EmpiricalCdf(grid=g0, counts=counts, n=sum(p.n for p in parts))


@dataclass
class DiffCurve:
    grid: np.ndarray
    diff: np.ndarray
    stderr: np.ndarray
    scale: float


def diff_curve(f: EmpiricalCdf, h, scale: float = 1.0) -> DiffCurve:
    """scale * (empirical - reference) with identically scaled errors."""
    href = getattr(h, "values", h)
    href = np.asarray(href, dtype=float)
    hgrid = getattr(h, "grid", f.grid)
    if np.asarray(hgrid).shape != f.grid.shape or \
            not np.allclose(hgrid, f.grid, rtol=0, atol=1e-12):
        raise ValueError("empirical and reference grids differ")
    if scale <= 0:
        raise ValueError("scale must be positive")
    return DiffCurve(grid=f.grid, diff=scale * (f.values - href),
                     stderr=scale * f.stderr(), scale=scale)


def l1_norm(d: DiffCurve) -> float:
    """Trapezoid integral of |diff| normalised by the grid span."""
    span = d.grid[-1] - d.grid[0]
    return float(np.trapezoid(np.abs(d.diff), d.grid) / span)


def l1_norm_stderr(f: EmpiricalCdf, h, scale: float = 1.0) -> float:
    """Standard error of the L1 norm of scale*(F - H).

    Linearises |F - H| at the observed sign pattern and propagates the
    multinomial covariance Cov(F_i, F_j) = F_min (1 - F_max) / n.
    """
    href = getattr(h, "values", h)
    d = f.values - np.asarray(href, dtype=float)
    sgn = np.sign(d)
    g = f.grid
    span = g[-1] - g[0]
    # trapezoid weights
    w = np.zeros_like(g)
    w[1:] += 0.5 * np.diff(g)
    w[:-1] += 0.5 * np.diff(g)
    a = w * sgn / span
    fv = f.values
    # var(sum a_i F_i) with Cov(F_i, F_j) = F_min (1 - F_max) / n:
    # 2 sum_{i<j} a_i F_i a_j (1-F_j) + sum_i a_i^2 F_i (1-F_i)
    pre = np.cumsum(a * fv)
    total = float(np.dot(a[1:] * (1.0 - fv[1:]), pre[:-1]))
    var = (2.0 * total + float(np.sum(a * a * fv * (1.0 - fv)))) / f.n
    return float(scale * math.sqrt(max(var, 0.0)))


def ks_distance(f: EmpiricalCdf, h) -> tuple[float, int]:
    """Sup-norm distance to a reference CDF and its argmax index."""
    href = getattr(h, "values", h)
    d = np.abs(f.values - np.asarray(href, dtype=float))
    i = int(np.argmax(d))
    return float(d[i]), i


def ks_distance_stderr(f: EmpiricalCdf, h) -> float:
    """Binomial standard error of the CDF at the KS argmax."""
    href = np.asarray(getattr(h, "values", h), dtype=float)
    _, i = ks_distance(f, href)
    p = min(max(href[i], 1.0 / f.n), 1.0 - 1.0 / f.n)
    return math.sqrt(p * (1.0 - p) / f.n)


@dataclass
class FitResult:
    slope: float
    intercept: float
    rss: float


def fit_line(points) -> FitResult:
    """Ordinary least squares through (x, y) pairs."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[0] < 2:
        raise ValueError("need at least two points")
    x, y = pts[:, 0], pts[:, 1]
    if np.ptp(x) == 0:
        raise ValueError("degenerate abscissae")
    xbar, ybar = x.mean(), y.mean()
    slope = float(np.sum((x - xbar) * (y - ybar)) / np.sum((x - xbar) ** 2))
    intercept = float(ybar - slope * xbar)
    resid = y - slope * x - intercept
    return FitResult(slope=slope, intercept=intercept,
                     rss=float(np.sum(resid ** 2)))


def conditioned_xyz_tables(hist_xyz: np.ndarray, grids, refs) -> dict:
    """Per-subset X/Y/Z CDFs and the summed L1 report for the six-subset
    conditioned runs.

    hist_xyz: int64[6, 3, G] per-bin counts; grids/refs: per-variable
    (grid, reference values).  Empty subsets are flagged, never dropped.
    """
    out = {"subsets": [], "summed_l1": {}, "empty_subsets": []}
    sums = np.zeros(3)
    ses = np.zeros(3)
    for k in range(6):
        row = {"count": int(hist_xyz[k, 0].sum()), "l1": [None] * 3,
               "cdfs": [None] * 3}
        if row["count"] == 0:
            out["empty_subsets"].append(k)
            out["subsets"].append(row)
            continue
        for v in range(3):
            cdf = cdf_from_histogram(grids[v], hist_xyz[k, v])
            d = diff_curve(cdf, refs[v])
            row["l1"][v] = l1_norm(d)
            sums[v] += row["l1"][v]
            ses[v] += l1_norm_stderr(cdf, refs[v]) ** 2
            row["cdfs"][v] = cdf
        out["subsets"].append(row)
    for v, name in enumerate("xyz"):
        out["summed_l1"][name] = float(sums[v])
        out["summed_l1"][name + "_stderr"] = float(math.sqrt(ses[v]))
    return out
