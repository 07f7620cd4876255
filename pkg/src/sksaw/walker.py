"""Smart kinetic self-avoiding walk growth.

The full-plane SKSAW starts at the origin and repeatedly steps to a
uniformly chosen nearest neighbour that is unoccupied and not a trapping
site (a site from which no path of unoccupied sites reaches infinity).
Trap verdicts come from the winding-angle loop closure in ``_kernels``;
the flood-fill connectivity oracle used by the test-suite lives there too.

This module is the object-level API: convenient for inspection, small
experiments and the exact enumeration checks.  Bulk sampling goes through
``harness.run_experiment``, which drives the same compiled kernels.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels as _k
from .geometry import ExitRecord
from .lattice import (LatticeKind, Site, embed, neighbors, signed_turn_units,
                      direction_between, hex_edge_faces)

_KIND_ID = {LatticeKind.SQUARE: 0, LatticeKind.HEXAGONAL: 1}


class RandomStream:
    """Counter-based random stream keyed by (seed, sample index).

    Matches the kernel streams bit for bit, so object-level replays of a
    sample agree with the compiled sampler.
    """

    def __init__(self, seed: int, sample_index: int = 0):
        self.seed = seed
        self.sample_index = sample_index
        self._st = np.uint64(_stream_init_py(seed, sample_index))

    def next_u64(self) -> int:
        self._st, u = _rng_next_py(self._st)
        return int(u)

    def uniform(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / 9007199254740992.0)

    def below(self, n: int) -> int:
        lim = (0xFFFFFFFFFFFFFFFF // n) * n
        while True:
            u = self.next_u64()
            if u < lim:
                return u % n


def _stream_init_py(seed, sample_index):
    golden = 0x9E3779B97F4A7C15
    mask = 0xFFFFFFFFFFFFFFFF

    def mix(z):
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & mask
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & mask
        return z ^ (z >> 31)

    s = mix((seed + golden) & mask)
    return mix(s ^ ((sample_index * golden + 1) & mask))


def _rng_next_py(st):
    golden = np.uint64(0x9E3779B97F4A7C15)
    mask = 0xFFFFFFFFFFFFFFFF
    st = np.uint64((int(st) + int(golden)) & mask)
    z = int(st)
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & mask
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & mask
    z = z ^ (z >> 31)
    return st, np.uint64(z)


@dataclass
class TrapVerdict:
    candidate: Site
    trapping: bool


class WalkState:
    """A growing SKSAW: path, occupancy index, winding accumulators."""

    def __init__(self, kind: LatticeKind, origin: Site = (0, 0)):
        self.kind = kind
        cap = 1024
        self._xs = np.empty(cap, dtype=np.int64)
        self._ys = np.empty(cap, dtype=np.int64)
        self._dirs = np.zeros(cap, dtype=np.int64)
        self._wind = np.zeros(cap, dtype=np.int64)
        self._xs[0], self._ys[0] = origin
        self.n = 0                       # number of steps taken
        self.visited: dict[Site, int] = {origin: 0}

    # -- views ------------------------------------------------------------
    @property
    def tip(self) -> Site:
        return (int(self._xs[self.n]), int(self._ys[self.n]))

    @property
    def path(self) -> list[Site]:
        return [(int(self._xs[i]), int(self._ys[i])) for i in range(self.n + 1)]

    def turn_total_units(self) -> int:
        """Total turning of the walk so far, in pi/12 units."""
        return int(self._wind[self.n]) if self.n >= 1 else 0

    def __len__(self) -> int:
        return self.n

    # -- growth -----------------------------------------------------------
    def _grow_arrays(self):
        if self.n + 2 >= self._xs.shape[0]:
            for name in ("_xs", "_ys", "_dirs", "_wind"):
                arr = getattr(self, name)
                new = np.empty(2 * arr.shape[0], dtype=arr.dtype)
                new[:arr.shape[0]] = arr
                setattr(self, name, new)

    def _verdicts(self):
        kid = _KIND_ID[self.kind]
        return _k.tip_verdicts(kid, self._xs, self._ys, self._dirs,
                               self._wind, self.n)

    def append(self, site: Site):
        """Append a site (assumed legal: free neighbour, not trapping)."""
        if site in self.visited:
            raise ValueError(f"site {site} already occupied")
        d = direction_between(self.tip, site, self.kind)  # pi/12 units
        self._grow_arrays()
        self.n += 1
        n = self.n
        self._xs[n], self._ys[n] = site
        self._dirs[n] = d
        self._wind[n] = (self._wind[n - 1] + signed_turn_units(self._dirs[n - 1], d)
                         if n >= 2 else 0)
        self.visited[site] = n


def allowable_neighbors(w: WalkState) -> list[Site]:
    """Unoccupied, non-trapping neighbours of the tip.  Never empty for a
    legally grown walk (raises if the impossible happens)."""
    ox, oy, free, trap = w._verdicts()
    out = []
    for i in range(len(ox)):
        if trap[i] < 0:
            raise RuntimeError("trap detector met a non-simple loop; "
                               "walk state is corrupt")
        if free[i] == 1 and trap[i] == 0:
            out.append((int(ox[i]), int(oy[i])))
    if not out:
        raise RuntimeError("no allowable neighbour: trap detection bug "
                           "(a legally grown SKSAW is never stuck)")
    return out


def is_trapping(w: WalkState, p: Site) -> TrapVerdict:
    """Winding-angle trap verdict for an unoccupied neighbour of the tip."""
    ox, oy, free, trap = w._verdicts()
    for i in range(len(ox)):
        if (int(ox[i]), int(oy[i])) == p:
            if free[i] == 0:
                raise ValueError(f"{p} is occupied, not a trap candidate")
            if trap[i] < 0:
                raise RuntimeError("non-simple loop in trap detector")
            return TrapVerdict(candidate=p, trapping=bool(trap[i]))
    raise ValueError(f"{p} is not a neighbour of the tip {w.tip}")


def step(w: WalkState, rng: RandomStream) -> WalkState:
    """Advance the walk by one uniformly chosen allowable neighbour."""
    opts = allowable_neighbors(w)
    w.append(opts[rng.below(len(opts))] if len(opts) > 1 else opts[0])
    return w


def run_until_exit(kind: LatticeKind, delta: float, rng: RandomStream,
                   contains=None, step_budget: int = 10**8):
    """Grow a full-plane SKSAW until its embedded tip leaves a domain.

    ``contains(point) -> bool`` defaults to the open unit disc.  Returns
    (walk, ExitRecord); raises RuntimeError when the budget is exceeded.
    The exit angle is reported in the standard frame; subtract the domain
    rotation for rotated runs (the harness does this in bulk).
    """
    import math as _math
    if contains is None:
        contains = lambda p: p[0] * p[0] + p[1] * p[1] < 1.0
    w = WalkState(kind)
    while True:
        step(w, rng)
        p = embed(w.tip, kind, delta)
        if not contains(p):
            theta = _math.atan2(p[1], p[0]) % (2.0 * _math.pi)
            return w, ExitRecord(exit_point=p, theta=theta)
        if w.n >= step_budget:
            raise RuntimeError(f"step budget {step_budget} exceeded")


# ---------------------------------------------------------------------------
# hexagonal weight-law helpers

def hexagon_count(path: list[Site]) -> int:
    """Number of hexagons with at least one boundary edge on the path."""
    faces = set()
    for s, t in zip(path, path[1:]):
        f1, f2 = hex_edge_faces(s, t)
        faces.add(f1)
        faces.add(f2)
    return len(faces)


def _oracle_allowable(kind: LatticeKind, path: list[Site]) -> list[Site]:
    """Allowable neighbours by direct flood-fill (exact, slow).

    Independent of the winding-angle detector: the reachability oracle for
    enumeration checks.  Out-of-box sites count as connected to infinity.
    """
    occ = set(path)
    tip = path[-1]
    xs = [s[0] for s in path]
    ys = [s[1] for s in path]
    lox, hix = min(xs), max(xs)
    loy, hiy = min(ys), max(ys)
    out = []
    for cand in neighbors(tip, kind):
        if cand in occ:
            continue
        seen = {cand}
        stack = [cand]
        escaped = False
        while stack:
            cur = stack.pop()
            if not (lox <= cur[0] <= hix and loy <= cur[1] <= hiy):
                escaped = True
                break
            for nb in neighbors(cur, kind):
                if nb in occ or nb in seen:
                    continue
                seen.add(nb)
                stack.append(nb)
        if escaped:
            out.append(cand)
    return out


def kinetic_probability(path: list[Site], kind: LatticeKind = LatticeKind.HEXAGONAL) -> Fraction:
    """Exact sampling probability of a full-plane SKSAW prefix: the product
    of 1/#allowable over its steps.  Raises on an illegal path."""
    if len(path) < 2:
        raise ValueError("need at least one step")
    if len(set(path)) != len(path):
        raise ValueError("path revisits a site")
    if tuple(path[0]) != (0, 0):
        raise ValueError("full-plane walks start at the origin")
    p = Fraction(1)
    for i in range(1, len(path)):
        opts = _oracle_allowable(kind, path[:i])
        if path[i] not in opts:
            raise ValueError(f"step {i} to {path[i]} is not allowable")
        p *= Fraction(1, len(opts))
    return p


def enumerate_walks(kind: LatticeKind, nsteps: int):
    """All full-plane SKSAW paths with exactly ``nsteps`` steps, with their
    exact probabilities (flood-fill dynamics, rational arithmetic)."""
    results: list[tuple[list[Site], Fraction]] = []

    def rec(path, prob):
        if len(path) - 1 == nsteps:
            results.append((list(path), prob))
            return
        opts = _oracle_allowable(kind, path)
        q = prob * Fraction(1, len(opts))
        for s in opts:
            path.append(s)
            rec(path, q)
            path.pop()

    rec([(0, 0)], Fraction(1))
    return results
