"""Experiment configuration, parallel sample generation and file emission.

Samples are split into chunks by sample index; every sample draws its
randomness from a counter-based stream keyed by (seed, sample index), so
the output is a pure function of (config, seed) no matter how chunks are
distributed over workers.  Chunk histograms are kept, giving a jackknife
standard error for every L1 norm for free.

Emitted files: one CSV per curve with the schema
``abscissa,f_emp,h_ref,diff,stderr,scale`` and a deterministic
``summary.json`` (config echo, L1/KS tables, step statistics, aborted
counts, chunk layout).  Wall-clock time is reported on stderr only, to
keep the JSON byte-reproducible.
"""

from __future__ import annotations

import json
import math
import multiprocessing as mp
import os
import sys
import time
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import __version__, _kernels as _k
from . import reference, stats
from .geometry import DomainKind
from .lattice import LatticeKind

_KIND_ID = {LatticeKind.SQUARE: 0, LatticeKind.HEXAGONAL: 1}
_DOM_ID = {DomainKind.UNIT_DISC: _k.DOM_DISC,
           DomainKind.OFF_CENTER_DISC: _k.DOM_D1,
           DomainKind.STRIP: _k.DOM_D2,
           DomainKind.TRIANGLE: _k.DOM_D3}

GRID_MEMORY_CAP_BYTES = 400 * 1024 * 1024
# |z| cap for strip walks: a sample that wanders this far sideways aborts.
# Harmonic measure decays like exp(-pi d / 3) along the strip, so the
# abort probability is ~2e-7 per sample, inside the 1e-6 budget.
STRIP_REACH = 16.0


class Mode(Enum):
    EXIT_ROT_AVERAGED = "exit-rot"
    EXIT_FIXED = "exit-fixed"
    XYZ_ROT_AVERAGED = "xyz-rot"
    XYZ_CONDITIONED = "xyz-cond"
    MEAN_STEPS = "mean-steps"
    VALIDATION = "validate"


@dataclass
class ExperimentConfig:
    lattice: LatticeKind = LatticeKind.SQUARE
    domain: DomainKind = DomainKind.UNIT_DISC
    delta: float = 0.01
    samples: int = 10000
    seed: int = 1
    mode: Mode = Mode.EXIT_ROT_AVERAGED
    workers: int = 1
    grid_size: int = 2048
    step_budget: int = 10 ** 8
    scale: float = 1.0
    chunks: int = 0          # 0: pick automatically
    first_sample: int = 0    # stream index of the first sample

    def __post_init__(self):
        if not 0.0 < self.delta <= 0.5:
            raise ValueError("delta must be in (0, 0.5]")
        if self.samples < 1 or self.workers < 1 or self.grid_size < 8:
            raise ValueError("samples, workers >= 1 and grid >= 8 required")
        if self.mode in (Mode.XYZ_ROT_AVERAGED, Mode.XYZ_CONDITIONED) \
                and self.domain is not DomainKind.UNIT_DISC:
            raise ValueError("X/Y/Z modes are defined in the unit disc")

    @property
    def rotavg(self) -> bool:
        return self.mode in (Mode.EXIT_ROT_AVERAGED, Mode.XYZ_ROT_AVERAGED)


@dataclass
class RunSummary:
    config: dict
    counts: dict
    steps: dict
    l1: dict
    ks: dict
    curves: dict = field(repr=False)
    chunk_ranges: list = field(repr=False)
    wall_clock: float = 0.0

    def to_json_dict(self) -> dict:
        # deterministic content only (no timing)
        return {
            "version": __version__,
            "config": self.config,
            "counts": self.counts,
            "steps": self.steps,
            "l1": self.l1,
            "ks": self.ks,
            "chunk_ranges": self.chunk_ranges,
        }


def occupancy_grid_halfextent(cfg: ExperimentConfig) -> int:
    """Half-extent of the direct occupancy grid, or 0 for the hash table."""
    reach = {DomainKind.UNIT_DISC: 1.0, DomainKind.OFF_CENTER_DISC: 3.0,
             DomainKind.TRIANGLE: 2.0, DomainKind.STRIP: STRIP_REACH}
    m = int(math.ceil(1.16 * reach[cfg.domain] / cfg.delta)) + 6
    if 4 * (2 * m + 1) ** 2 > GRID_MEMORY_CAP_BYTES:
        return 0
    return m


def _chunk_ranges(samples: int, chunks: int, first: int = 0) -> list[tuple[int, int]]:
    edges = first + np.linspace(0, samples, chunks + 1).astype(int)
    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def _run_chunk(args):
    (kind, mode_i, cond, rotavg, dom, delta, i0, i1, seed, budget, grid_m,
     gsize) = args
    hist_theta = np.zeros(gsize, dtype=np.int64)
    hist_xyz = np.zeros((6, 3, gsize), dtype=np.int64)
    st = np.zeros(_k.N_STATS, dtype=np.int64)
    _k.run_walks(kind, mode_i, cond, rotavg, dom, delta, i0, i1, seed,
                 budget, grid_m, hist_theta, hist_xyz, st)
    return hist_theta, hist_xyz, st


def merge(partials):
    """Order-independent sum of chunk accumulators; shapes must match."""
    hts, hxs, sts = zip(*partials)
    for ht, hx in zip(hts, hxs):
        if ht.shape != hts[0].shape or hx.shape != hxs[0].shape:
            raise ValueError("accumulator shapes differ; configs mismatch")
    ht = np.sum(hts, axis=0)
    hx = np.sum(hxs, axis=0)
    st = np.sum(sts, axis=0)
    st[_k.STAT_STEPS_MAX] = max(s[_k.STAT_STEPS_MAX] for s in sts)
    return ht, hx, st


def _mode_ints(mode: Mode) -> tuple[int, bool]:
    if mode is Mode.MEAN_STEPS:
        return _k.MODE_MEAN, False
    if mode in (Mode.EXIT_ROT_AVERAGED, Mode.EXIT_FIXED):
        return _k.MODE_EXIT, False
    return _k.MODE_XYZ, mode is Mode.XYZ_CONDITIONED


def run_experiment(cfg: ExperimentConfig, out_dir: str | None = None,
                   partials_out: list | None = None) -> RunSummary:
    """Run all samples, merge deterministically, emit CSV/JSON."""
    t0 = time.time()
    kind = _KIND_ID[cfg.lattice]
    dom = _DOM_ID[cfg.domain]
    mode_i, cond = _mode_ints(cfg.mode)
    grid_m = occupancy_grid_halfextent(cfg)
    # chunk layout must not depend on the worker count (determinism)
    nchunks = cfg.chunks or min(64, cfg.samples)
    ranges = _chunk_ranges(cfg.samples, nchunks, cfg.first_sample)
    args = [(kind, mode_i, cond, cfg.rotavg, dom, cfg.delta, i0, i1,
             cfg.seed, cfg.step_budget, grid_m, cfg.grid_size)
            for (i0, i1) in ranges]
    if cfg.workers > 1 and len(args) > 1:
        ctx = mp.get_context("fork")
        with ctx.Pool(cfg.workers) as pool:
            partials = pool.map(_run_chunk, args)
    else:
        partials = [_run_chunk(a) for a in args]
    if partials_out is not None:
        partials_out.extend(partials)
    ht, hx, st = merge(partials)

    ok = int(st[_k.STAT_OK])
    counts = {"ok": ok, "aborted": int(st[_k.STAT_ABORTED]),
              "stuck": int(st[_k.STAT_STUCK]),
              "internal_errors": int(st[_k.STAT_ERR])}
    mean = st[_k.STAT_STEPS_SUM] / max(ok, 1)
    var = st[_k.STAT_STEPS_SUMSQ] / max(ok, 1) - mean * mean
    steps = {"mean": float(mean), "sd": float(math.sqrt(max(var, 0.0))),
             "max": int(st[_k.STAT_STEPS_MAX]), "n": ok}

    curves: dict[str, dict] = {}
    l1: dict[str, dict] = {}
    ks: dict[str, dict] = {}
    if cfg.mode in (Mode.EXIT_ROT_AVERAGED, Mode.EXIT_FIXED):
        grid = reference.theta_grid(cfg.grid_size)
        href = reference.harmonic_cdf(cfg.domain, grid)
        _add_curve(curves, l1, ks, "theta", grid, ht,
                   [p[0] for p in partials], href.values, cfg.scale)
    elif cfg.mode is Mode.XYZ_ROT_AVERAGED:
        _xyz_curves(cfg, curves, l1, ks, hx[0], [p[1][0] for p in partials])
    elif cfg.mode is Mode.XYZ_CONDITIONED:
        for sub in range(6):
            prefix = f"s{sub}_"
            _xyz_curves(cfg, curves, l1, ks, hx[sub],
                        [p[1][sub] for p in partials], prefix=prefix)
        gx = reference.unit_grid(cfg.grid_size)
        gz = reference.unit_grid(cfg.grid_size, 1.0, 2.0)
        refs = [reference.xyz_cdf(reference.XyzVariable.X, gx).values,
                reference.xyz_cdf(reference.XyzVariable.Y, gx).values,
                reference.xyz_cdf(reference.XyzVariable.Z, gz).values]
        table = stats.conditioned_xyz_tables(hx, [gx, gx, gz], refs)
        l1["summed_six_subsets"] = table["summed_l1"]
        counts["subset_counts"] = [int(hx[s, 0].sum()) for s in range(6)]
        counts["empty_subsets"] = table["empty_subsets"]

    summary = RunSummary(
        config={"lattice": cfg.lattice.value, "domain": cfg.domain.value,
                "delta": cfg.delta, "samples": cfg.samples, "seed": cfg.seed,
                "mode": cfg.mode.value, "grid_size": cfg.grid_size,
                "step_budget": cfg.step_budget, "scale": cfg.scale,
                "occupancy": "grid" if grid_m else "hash",
                "stream": "splitmix64(seed, sample_index)"},
        counts=counts, steps=steps, l1=l1, ks=ks, curves=curves,
        chunk_ranges=[list(r) for r in ranges],
        wall_clock=time.time() - t0)
    if out_dir is not None:
        write_outputs(summary, out_dir)
    rate = st[_k.STAT_STEPS_SUM] / max(summary.wall_clock, 1e-9)
    print(f"[sksaw] {cfg.mode.value} {cfg.domain.value} delta={cfg.delta} "
          f"n={cfg.samples}: {summary.wall_clock:.1f}s "
          f"({rate:.3g} steps/s)", file=sys.stderr)
    return summary


def _jackknife_l1(grid, chunk_hists, href, scale):
    """Leave-one-chunk-out standard error of the L1 norm."""
    hists = [h for h in chunk_hists if h.sum() > 0]
    b = len(hists)
    if b < 4:
        return None
    total = np.sum(hists, axis=0)
    vals = []
    for h in hists:
        cdf = stats.cdf_from_histogram(grid, total - h)
        vals.append(stats.l1_norm(stats.diff_curve(cdf, href, scale)))
    vals = np.asarray(vals)
    return float(math.sqrt((b - 1) / b * np.sum((vals - vals.mean()) ** 2)))


def _add_curve(curves, l1, ks, name, grid, hist, chunk_hists, href, scale):
    cdf = stats.cdf_from_histogram(grid, hist)
    d = stats.diff_curve(cdf, href, scale)
    curves[name] = {"grid": grid, "f_emp": cdf.values, "h_ref": href,
                    "diff": d.diff, "stderr": d.stderr, "scale": scale}
    jk = _jackknife_l1(grid, chunk_hists, href, scale)
    l1[name] = {"l1": stats.l1_norm(d),
                "stderr": jk if jk is not None else
                stats.l1_norm_stderr(cdf, href, scale)}
    dist, _ = stats.ks_distance(cdf, href)
    ks[name] = {"ks": dist, "stderr": stats.ks_distance_stderr(cdf, href)}


def _xyz_curves(cfg, curves, l1, ks, hists3, chunk_hists3, prefix=""):
    gx = reference.unit_grid(cfg.grid_size)
    gz = reference.unit_grid(cfg.grid_size, 1.0, 2.0)
    specs = [("x", gx, reference.XyzVariable.X),
             ("y", gx, reference.XyzVariable.Y),
             ("z", gz, reference.XyzVariable.Z)]
    for vi, (name, grid, var) in enumerate(specs):
        href = reference.xyz_cdf(var, grid).values
        _add_curve(curves, l1, ks, prefix + name, grid, hists3[vi],
                   [c[vi] for c in chunk_hists3], href, cfg.scale)


def write_curve_csv(path: str, curve: dict):
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        fh.write("abscissa,f_emp,h_ref,diff,stderr,scale\n")
        n = len(curve["grid"])
        for i in range(n):
            fh.write("%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n" % (
                curve["grid"][i], curve["f_emp"][i], curve["h_ref"][i],
                curve["diff"][i], curve["stderr"][i], curve["scale"]))


def write_outputs(summary: RunSummary, out_dir: str):
    os.makedirs(out_dir, exist_ok=True)
    for name, curve in summary.curves.items():
        write_curve_csv(os.path.join(out_dir, f"{name}.csv"), curve)
    with open(os.path.join(out_dir, "summary.json"), "w",
              newline="\n", encoding="utf-8") as fh:
        json.dump(summary.to_json_dict(), fh, sort_keys=True, indent=1)
        fh.write("\n")


def write_reference_csv(path: str, ref) -> None:
    """Serialise an analytic reference curve in the common CSV schema."""
    curve = {"grid": ref.grid, "f_emp": ref.values, "h_ref": ref.values,
             "diff": np.zeros_like(ref.values),
             "stderr": np.zeros_like(ref.values), "scale": 1.0}
    write_curve_csv(path, curve)
