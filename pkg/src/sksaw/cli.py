"""Command line entry point.

    sksaw run --lattice square --domain d1 --delta 0.01 --samples 100000 \
              --seed 7 --mode exit-rot --workers 2 --grid 2048 --out out/
    sksaw validate
    sksaw reference --domain d1 --out d1_ref.csv
    sksaw reference --xyz x --out x_ref.csv

Exit codes: 0 success, 2 configuration error, 3 validation failure.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .geometry import DomainKind
from .harness import ExperimentConfig, Mode, run_experiment, write_reference_csv
from .lattice import LatticeKind

_LATTICES = {"square": LatticeKind.SQUARE, "hex": LatticeKind.HEXAGONAL,
             "hexagonal": LatticeKind.HEXAGONAL}
_DOMAINS = {"disc": DomainKind.UNIT_DISC, "d1": DomainKind.OFF_CENTER_DISC,
            "d2": DomainKind.STRIP, "d3": DomainKind.TRIANGLE}
_MODES = {m.value: m for m in Mode}


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sksaw")
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="generate samples and emit CSV/JSON")
    run.add_argument("--lattice", choices=sorted(_LATTICES), default="square")
    run.add_argument("--domain", choices=sorted(_DOMAINS), default="disc")
    run.add_argument("--delta", type=float, required=True)
    run.add_argument("--samples", type=int, required=True)
    run.add_argument("--seed", type=int, default=1)
    run.add_argument("--mode", choices=sorted(k for k in _MODES
                                              if k != "validate"),
                     default="exit-rot")
    run.add_argument("--workers", type=int, default=1)
    run.add_argument("--grid", type=int, default=2048)
    run.add_argument("--step-budget", type=int, default=10 ** 8)
    run.add_argument("--scale", type=float, default=1.0)
    run.add_argument("--out", required=True)

    val = sub.add_parser("validate", help="run the fast validation suites")
    val.add_argument("--depth", type=int, default=11,
                     help="exhaustive trap-check depth (steps)")
    val.add_argument("--decisions", type=int, default=200_000,
                     help="random trap decisions per lattice")

    ref = sub.add_parser("reference", help="emit a reference CDF as CSV")
    g = ref.add_mutually_exclusive_group(required=True)
    g.add_argument("--domain", choices=sorted(_DOMAINS))
    g.add_argument("--xyz", choices=["x", "y", "z"])
    ref.add_argument("--grid", type=int, default=2048)
    ref.add_argument("--out", required=True)
    return ap


def _cmd_run(ns) -> int:
    try:
        cfg = ExperimentConfig(
            lattice=_LATTICES[ns.lattice], domain=_DOMAINS[ns.domain],
            delta=ns.delta, samples=ns.samples, seed=ns.seed,
            mode=_MODES[ns.mode], workers=ns.workers, grid_size=ns.grid,
            step_budget=ns.step_budget, scale=ns.scale)
    except ValueError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    summary = run_experiment(cfg, out_dir=ns.out)
    if summary.counts["stuck"] or summary.counts["internal_errors"]:
        print("internal walker error detected", file=sys.stderr)
        return 3
    return 0


def _cmd_validate(ns) -> int:
    from . import _kernels as _k
    from .percolation import enumerate_chordal, enumerate_interface, flower
    from .walker import enumerate_walks, hexagon_count

    failures = []
    for kind, name in ((0, "square"), (1, "hexagonal")):
        c = np.zeros(5, dtype=np.int64)
        _k.trap_exhaustive(kind, ns.depth, c)
        print(f"trap exhaustive {name} <= {ns.depth} steps: states={c[0]} "
              f"checks={c[1]} mismatches={c[2]} stuck={c[3]}")
        if c[2] or c[3] or c[4]:
            failures.append(f"exhaustive {name}")
        cnt = np.zeros(4, dtype=np.int64)
        walks = 0
        while cnt[0] < ns.decisions:
            _k.trap_agreement_run(kind, 0.02, 25, 7_000 + walks, cnt)
            walks += 25
        print(f"trap random {name}: checks={cnt[0]} mismatches={cnt[1]} "
              f"stuck={cnt[2]}")
        if cnt[1] or cnt[2] or cnt[3]:
            failures.append(f"random {name}")

    dom = flower()
    cyc = dom.boundary_cycle()
    u, v = cyc[0], cyc[len(cyc) // 2]
    if enumerate_chordal(dom, u, v) != enumerate_interface(dom, u, v):
        failures.append("percolation equivalence")
    else:
        print("percolation interface == chordal SKSAW on the 7-hexagon "
              "flower (exact)")

    from fractions import Fraction
    vals = set()
    for w, p in enumerate_walks(LatticeKind.HEXAGONAL, 5):
        vals.add(p * Fraction(2) ** hexagon_count(w))
    print(f"hexagonal weight law (n=5): P*2^N values = "
          f"{sorted(str(v) for v in vals)}")
    if vals != {Fraction(4, 3)}:
        failures.append("weight law n<=5")

    if failures:
        print("VALIDATION FAILURES: " + ", ".join(failures), file=sys.stderr)
        return 3
    print("all validation suites passed")
    return 0


def _cmd_reference(ns) -> int:
    from . import reference as R
    if ns.domain:
        ref = R.harmonic_cdf(_DOMAINS[ns.domain], R.theta_grid(ns.grid))
    else:
        var = {"x": R.XyzVariable.X, "y": R.XyzVariable.Y,
               "z": R.XyzVariable.Z}[ns.xyz]
        ref = R.xyz_cdf(var, grid_size=ns.grid)
    write_reference_csv(ns.out, ref)
    return 0


def main(argv=None) -> int:
    ns = _build_parser().parse_args(argv)
    if ns.command == "run":
        return _cmd_run(ns)
    if ns.command == "validate":
        return _cmd_validate(ns)
    return _cmd_reference(ns)


if __name__ == "__main__":
    sys.exit(main())
