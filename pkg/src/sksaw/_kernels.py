"""Numba-compiled hot paths: walk growth, trap detection, oracles.

Everything here works on plain integer/float arrays so the same compiled
routines serve the production sampler, the exact enumeration tests and the
flood-fill agreement checks.

Conventions
-----------
* Angles are integers in units of pi/12 (24 per turn).  Lattice step
  directions are even multiples; square-lattice diagonal chords used by the
  trap detector are odd multiples of 3.
* A walk of n steps is stored as ``xs[0..n], ys[0..n]`` with ``dirs[i]``
  the direction of step i (into vertex i) and ``wind[i]`` the total turning
  accumulated at vertices 1..i-1.  ``wind[n] - wind[k+1]`` is then the
  turning of the subpath from vertex k to vertex n.
* Trap detection closes the walk segment from an occupied trigger site
  back to the tip and reads inside/outside from the loop orientation
  (total turning +-2pi) and the angular sector at the tip.  Triggers are
  the occupied 8-neighbours of the tip (square) or the occupied sites of
  the face ahead of the tip (hexagonal).
* Per-sample RNG streams are derived from (seed, sample_index) with a
  splitmix64 mix, so results never depend on how samples are distributed
  over workers.
"""

import math

import numpy as np
from numba import njit

GOLDEN = np.uint64(0x9E3779B97F4A7C15)
U64_MAX = np.uint64(0xFFFFFFFFFFFFFFFF)

LOG2CAP = 22
TABLE_CAP = 1 << LOG2CAP
PATH_CAP = 1 << 21
TWO_PI = 2.0 * math.pi
SQRT3 = math.sqrt(3.0)

# square lattice: 8-neighbourhood offsets and direction units (pi/12)
_SQ8_DX = np.array([1, 1, 0, -1, -1, -1, 0, 1], dtype=np.int64)
_SQ8_DY = np.array([0, 1, 1, 1, 0, -1, -1, -1], dtype=np.int64)
_SQ8_DIR = np.array([0, 3, 6, 9, 12, 15, 18, 21], dtype=np.int64)
# orthogonal step slots within the 8-neighbourhood
_SQ_ORTH = np.array([0, 2, 4, 6], dtype=np.int64)

STAT_OK = 0
STAT_ABORTED = 1
STAT_STUCK = 2
STAT_STEPS_SUM = 3
STAT_STEPS_SUMSQ = 4
STAT_STEPS_MAX = 5
STAT_ERR = 6
N_STATS = 7

MODE_MEAN = 0
MODE_EXIT = 1
MODE_XYZ = 2

DOM_DISC = 0
DOM_D1 = 1
DOM_D2 = 2
DOM_D3 = 3


# ---------------------------------------------------------------------------
# counter-based RNG (splitmix64 streams keyed by (seed, sample index))

@njit(cache=True, inline="always")
def _mix64(z):
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


@njit(cache=True, inline="always")
def stream_init(seed, sample_index):
    s = _mix64(np.uint64(seed) + GOLDEN)
    return _mix64(s ^ (np.uint64(sample_index) * GOLDEN + np.uint64(1)))


@njit(cache=True, inline="always")
def rng_next(st):
    st = st + GOLDEN
    return st, _mix64(st)


@njit(cache=True, inline="always")
def rng_uniform(st):
    st, u = rng_next(st)
    return st, (u >> np.uint64(11)) * (1.0 / 9007199254740992.0)


@njit(cache=True, inline="always")
def rng_below(st, n):
    # unbiased bounded draw by rejection
    nn = np.uint64(n)
    lim = (U64_MAX // nn) * nn
    while True:
        st, u = rng_next(st)
        if u < lim:
            return st, np.int64(u % nn)


@njit(cache=True, inline="always")
def rng_normal_pair(st):
    st, u1 = rng_uniform(st)
    st, u2 = rng_uniform(st)
    if u1 < 1e-300:
        u1 = 1e-300
    r = math.sqrt(-2.0 * math.log(u1))
    t = TWO_PI * u2
    return st, r * math.cos(t), r * math.sin(t)


# ---------------------------------------------------------------------------
# angle helpers

@njit(cache=True, inline="always")
def _sdiff(a, b):
    """Signed turn a -> b in pi/12 units, in [-12, 11]."""
    return (b - a + 12) % 24 - 12


@njit(cache=True, inline="always")
def _enclosed(tot, alpha, beta, theta):
    """Is direction ``theta`` inside the loop at the tip?

    ``alpha`` = first closure segment direction, ``beta`` = direction back
    along the incoming step, ``tot`` = +-24 loop turning.  For a ccw loop
    the interior sector at the tip sweeps ccw from alpha to beta.
    """
    if tot == 24:
        d = (beta - alpha) % 24
        t = (theta - alpha) % 24
    else:
        d = (alpha - beta) % 24
        t = (alpha - theta) % 24
    return 0 < t < d


# ---------------------------------------------------------------------------
# open-addressing occupancy table (epoch-stamped so resets are O(1)).
# Walks start in a small cache-resident table; the rare sample that outgrows
# it is deterministically replayed on the large table.

LOG2SMALL = 18

@njit(cache=True, inline="always")
def _key_of(x, y):
    return ((x + (1 << 25)) << 26) | (y + (1 << 25))


@njit(cache=True, inline="always")
def table_put(keys, vals, stamp, epoch, log2cap, x, y, idx):
    key = _key_of(x, y)
    h = np.int64((np.uint64(key) * GOLDEN) >> np.uint64(64 - log2cap))
    mask = (1 << log2cap) - 1
    while True:
        if stamp[h] != epoch:
            stamp[h] = epoch
            keys[h] = key
            vals[h] = idx
            return
        if keys[h] == key:
            vals[h] = idx
            return
        h = (h + 1) & mask


@njit(cache=True, inline="always")
def table_get(keys, vals, stamp, epoch, log2cap, x, y):
    key = _key_of(x, y)
    h = np.int64((np.uint64(key) * GOLDEN) >> np.uint64(64 - log2cap))
    mask = (1 << log2cap) - 1
    while True:
        if stamp[h] != epoch:
            return np.int64(-1)
        if keys[h] == key:
            return np.int64(vals[h])
        h = (h + 1) & mask


# ---------------------------------------------------------------------------
# square lattice trap detection

@njit(cache=True, inline="always")
def sq_trapped(dirs, wind, n, cand_dir, nbk):
    """Winding-angle trap verdict for one free tip-neighbour.

    ``nbk[j]`` holds the walk index of 8-neighbour j of the tip (or -1).
    A candidate is trapped iff some loop (walk segment from an occupied
    8-neighbour z back to the tip, closed by the straight chord tip->z)
    encloses it.  Chords never cross lattice edges, so every such loop is
    a simple all-occupied closed polygon.
    """
    d_in = dirs[n]
    beta = (d_in + 12) % 24
    for j in range(8):
        k = nbk[j]
        if k < 0 or k == n - 1:
            continue
        alpha = _SQ8_DIR[j]
        tot = (wind[n] - wind[k + 1]) + _sdiff(d_in, alpha) + _sdiff(alpha, dirs[k + 1])
        if tot != 24 and tot != -24:
            # cannot happen for a simple loop; flag via sentinel
            return -1
        if _enclosed(tot, alpha, beta, cand_dir):
            return 1
    return 0


# ---------------------------------------------------------------------------
# hexagonal lattice helpers

@njit(cache=True, inline="always")
def _hex_vdy(x, y):
    """dy of the vertical neighbour: +1 on even parity, -1 on odd."""
    return 1 - 2 * ((x + y) & 1)


@njit(cache=True, inline="always")
def _hex_iembed(x, y):
    return x, 3 * y - ((x + y) & 1)


@njit(cache=True, inline="always")
def _dir_units(dex, dey):
    """Direction units of an integer-embedded displacement (exact for all
    lattice edges and face chords: axis-aligned, |dy|=|dx| or |dy|=3|dx|)."""
    if dex == 0:
        return 6 if dey > 0 else 18
    if dey == 0:
        return 0 if dex > 0 else 12
    if dey == dex:
        return 2 if dex > 0 else 14
    if dey == -dex:
        return 22 if dex > 0 else 10
    if dey == 3 * dex:
        return 4 if dex > 0 else 16
    if dey == -3 * dex:
        return 20 if dex > 0 else 8
    # not a lattice edge or face chord; exact rounding fallback
    a = math.atan2(float(dey), SQRT3 * float(dex)) * (12.0 / math.pi)
    return np.int64(round(a)) % 24


@njit(cache=True, inline="always")
def _hex_edge_dir(x, y, tx, ty):
    ex0, ey0 = _hex_iembed(x, y)
    ex1, ey1 = _hex_iembed(tx, ty)
    return _dir_units(ex1 - ex0, ey1 - ey0)


# face-ahead site offsets from the tip, indexed by [parity*3 + arrival slot]
# (slot: 0 came from +x, 1 from -x, 2 from the vertical neighbour); each row
# holds offsets of a, b, m_a, z (far vertex), m_b.  Derived once from the
# face-membership test 3*dEx^2 + dEy^2 = 4 on integer embeddings.
_HEX_FACE_OFF = np.array([
    [-1, 0, 0, 1, -2, 0, -2, 1, -1, 1],
    [1, 0, 0, 1, 2, 0, 2, 1, 1, 1],
    [1, 0, -1, 0, 1, -1, 0, -1, -1, -1],
    [-1, 0, 0, -1, -2, 0, -2, -1, -1, -1],
    [1, 0, 0, -1, 2, 0, 2, -1, 1, -1],
    [1, 0, -1, 0, 1, 1, 0, 1, -1, 1],
], dtype=np.int64)


@njit(cache=True, inline="always")
def hex_face_ahead(xt, yt, xb, yb):
    """Sites of the face ahead of tip (xt, yt) arrived from (xb, yb).

    The face ahead is the hexagon through the tip and its two fork
    neighbours a, b.  Returns a, b, m_a (face neighbour of a), z (far
    vertex opposite the tip) and m_b (face neighbour of b).
    """
    if xb == xt + 1:
        slot = 0
    elif xb == xt - 1:
        slot = 1
    else:
        slot = 2
    row = ((xt + yt) & 1) * 3 + slot
    o = _HEX_FACE_OFF[row]
    return (xt + o[0], yt + o[1], xt + o[2], yt + o[3], xt + o[4], yt + o[5],
            xt + o[6], yt + o[7], xt + o[8], yt + o[9])


@njit(cache=True, inline="always")
def hex_trapped(dirs, wind, n, ext, eyt, cand_dir,
                ring_ex, ring_ey, ring_k):
    """Trap verdict for one hexagonal fork candidate.

    ``ring_*`` describe the four face-ahead sites in ring order starting
    from the other fork site and walking away from the candidate:
    (other fork, its face neighbour, far vertex, candidate's face
    neighbour).  For each occupied ring site the walk segment is closed
    back to the tip through the earlier free ring sites (occupied ones are
    skipped by straight chords inside the face, which cross no edges).
    """
    d_in = dirs[n]
    beta = (d_in + 12) % 24
    for j in range(4):
        k = ring_k[j]
        if k < 0 or k == n - 1:
            continue
        # build closure tip -> free ring sites < j -> ring[j]
        tot = np.int64(0)
        prev_ex, prev_ey = ext, eyt
        prev_dir = np.int64(-100)
        alpha0 = np.int64(-100)
        for i in range(j + 1):
            if i < j and ring_k[i] >= 0:
                continue  # occupied intermediate: skip via chord
            d = _dir_units(ring_ex[i] - prev_ex, ring_ey[i] - prev_ey)
            if prev_dir == -100:
                alpha0 = d
                tot += _sdiff(d_in, d)
            else:
                tot += _sdiff(prev_dir, d)
            prev_dir = d
            prev_ex, prev_ey = ring_ex[i], ring_ey[i]
        tot += (wind[n] - wind[k + 1]) + _sdiff(prev_dir, dirs[k + 1])
        if tot != 24 and tot != -24:
            return -1
        if _enclosed(tot, alpha0, beta, cand_dir):
            return 1
    return 0


# ---------------------------------------------------------------------------
# domains

@njit(cache=True, inline="always")
def domain_contains(dom, qx, qy):
    if dom == DOM_DISC:
        return qx * qx + qy * qy < 1.0
    if dom == DOM_D1:
        dx = qx - 1.0
        return dx * dx + qy * qy < 4.0
    if dom == DOM_D2:
        return -1.0 < qy < 2.0
    # equilateral triangle, vertices (2,0), (-1, +-sqrt(3))
    return (qx > -1.0) and (SQRT3 * qx + 3.0 * qy < 2.0 * SQRT3) and \
           (SQRT3 * qx - 3.0 * qy < 2.0 * SQRT3)


@njit(cache=True, inline="always")
def _fold_subset(theta):
    """Six-fold boundary subset index from the fixed-frame exit angle."""
    t = theta % (0.5 * math.pi)
    if t > 0.25 * math.pi:
        t = 0.5 * math.pi - t
    k = np.int64(t / (math.pi / 24.0))
    if k > 5:
        k = 5
    return k


# ---------------------------------------------------------------------------
# growth engines

GROW_EXIT = 0
GROW_BUDGET = 1
GROW_STUCK = 2
GROW_OVERFLOW = 3
GROW_ERR = 4


@njit(cache=True)
def _grow_one(kind, dom, delta, st, max_steps, max_sites, ca, sa,
              xs, ys, dirs, wind, keys, vals, stamp, epoch, log2cap,
              use_grid, grid, goff, gw,
              nbk, ring_ex, ring_ey, ring_k, cx, cy, cd):
    """Grow one full-plane SKSAW from the origin until the embedded,
    frame-rotated tip leaves the domain.  Returns (status, n, theta_e).

    Occupancy lives either in the epoch-stamped hash table or, when
    use_grid is set, in a direct int32 grid of half-extent goff (row
    width gw = 2*goff + 1): spatially local probes for bounded domains.
    The grid caller must clear visited cells afterwards.
    """
    x = np.int64(0)
    y = np.int64(0)
    n = np.int64(0)
    xs[0] = 0
    ys[0] = 0
    if use_grid:
        grid[goff * gw + goff] = 0
    else:
        table_put(keys, vals, stamp, epoch, log2cap, x, y, 0)
    while True:
        ncand = 0
        if n == 0:
            if kind == 0:
                for j in range(4):
                    jj = _SQ_ORTH[j]
                    cx[ncand] = x + _SQ8_DX[jj]
                    cy[ncand] = y + _SQ8_DY[jj]
                    cd[ncand] = _SQ8_DIR[jj]
                    ncand += 1
            else:
                vdy = _hex_vdy(x, y)
                cx[0] = x + 1; cy[0] = y
                cx[1] = x - 1; cy[1] = y
                cx[2] = x; cy[2] = y + vdy
                for j in range(3):
                    cd[j] = _hex_edge_dir(x, y, cx[j], cy[j])
                ncand = 3
        elif kind == 0:
            if use_grid:
                base = (x + goff) * gw + (y + goff)
                nbk[0] = grid[base + gw]
                nbk[1] = grid[base + gw + 1]
                nbk[2] = grid[base + 1]
                nbk[3] = grid[base - gw + 1]
                nbk[4] = grid[base - gw]
                nbk[5] = grid[base - gw - 1]
                nbk[6] = grid[base - 1]
                nbk[7] = grid[base + gw - 1]
            else:
                for j in range(8):
                    nbk[j] = table_get(keys, vals, stamp, epoch, log2cap,
                                       x + _SQ8_DX[j], y + _SQ8_DY[j])
            for j in range(4):
                jj = _SQ_ORTH[j]
                if nbk[jj] >= 0:
                    continue
                cdir = _SQ8_DIR[jj]
                v = sq_trapped(dirs, wind, n, cdir, nbk)
                if v < 0:
                    return GROW_ERR, n, 0.0
                if v == 0:
                    cx[ncand] = x + _SQ8_DX[jj]
                    cy[ncand] = y + _SQ8_DY[jj]
                    cd[ncand] = cdir
                    ncand += 1
        else:
            xb = xs[n - 1]
            yb = ys[n - 1]
            ax, ay, bx, by, ma_x, ma_y, zx, zy, mb_x, mb_y = \
                hex_face_ahead(x, y, xb, yb)
            if use_grid:
                ka = grid[(ax + goff) * gw + (ay + goff)]
                kb = grid[(bx + goff) * gw + (by + goff)]
                kma = grid[(ma_x + goff) * gw + (ma_y + goff)]
                kmb = grid[(mb_x + goff) * gw + (mb_y + goff)]
                kz = grid[(zx + goff) * gw + (zy + goff)]
            else:
                ka = table_get(keys, vals, stamp, epoch, log2cap, ax, ay)
                kb = table_get(keys, vals, stamp, epoch, log2cap, bx, by)
                kma = table_get(keys, vals, stamp, epoch, log2cap, ma_x, ma_y)
                kmb = table_get(keys, vals, stamp, epoch, log2cap, mb_x, mb_y)
                kz = table_get(keys, vals, stamp, epoch, log2cap, zx, zy)
            ext, eyt = _hex_iembed(x, y)
            if ka < 0:
                ring_ex[0], ring_ey[0] = _hex_iembed(bx, by)
                ring_ex[1], ring_ey[1] = _hex_iembed(mb_x, mb_y)
                ring_ex[2], ring_ey[2] = _hex_iembed(zx, zy)
                ring_ex[3], ring_ey[3] = _hex_iembed(ma_x, ma_y)
                ring_k[0] = kb; ring_k[1] = kmb
                ring_k[2] = kz; ring_k[3] = kma
                da = _hex_edge_dir(x, y, ax, ay)
                v = hex_trapped(dirs, wind, n, ext, eyt, da,
                                ring_ex, ring_ey, ring_k)
                if v < 0:
                    return GROW_ERR, n, 0.0
                if v == 0:
                    cx[ncand] = ax; cy[ncand] = ay; cd[ncand] = da
                    ncand += 1
            if kb < 0:
                ring_ex[0], ring_ey[0] = _hex_iembed(ax, ay)
                ring_ex[1], ring_ey[1] = _hex_iembed(ma_x, ma_y)
                ring_ex[2], ring_ey[2] = _hex_iembed(zx, zy)
                ring_ex[3], ring_ey[3] = _hex_iembed(mb_x, mb_y)
                ring_k[0] = ka; ring_k[1] = kma
                ring_k[2] = kz; ring_k[3] = kmb
                db = _hex_edge_dir(x, y, bx, by)
                v = hex_trapped(dirs, wind, n, ext, eyt, db,
                                ring_ex, ring_ey, ring_k)
                if v < 0:
                    return GROW_ERR, n, 0.0
                if v == 0:
                    cx[ncand] = bx; cy[ncand] = by; cd[ncand] = db
                    ncand += 1
        if ncand == 0:
            return GROW_STUCK, n, 0.0
        if ncand == 1:
            pick = 0
        else:
            st, pick = rng_below(st, ncand)
        x = cx[pick]
        y = cy[pick]
        ndir = cd[pick]
        n += 1
        xs[n] = x
        ys[n] = y
        dirs[n] = ndir
        if n >= 2:
            wind[n] = wind[n - 1] + _sdiff(dirs[n - 1], ndir)
        else:
            wind[1] = 0
        if use_grid:
            if x < -goff + 3 or x > goff - 3 or y < -goff + 3 or y > goff - 3:
                return GROW_OVERFLOW, n, 0.0
            grid[(x + goff) * gw + (y + goff)] = np.int32(n)
        else:
            table_put(keys, vals, stamp, epoch, log2cap, x, y, np.int32(n))
        # embedded, frame-rotated position
        if kind == 0:
            px = delta * x
            py = delta * y
        else:
            px = delta * (SQRT3 * 0.5) * x
            py = delta * 0.5 * (3 * y - ((x + y) & 1))
        qx = ca * px + sa * py
        qy = ca * py - sa * px
        if not domain_contains(dom, qx, qy):
            theta_e = math.atan2(qy, qx)
            if theta_e < 0.0:
                theta_e += TWO_PI
            return GROW_EXIT, n, theta_e
        if n >= max_sites:
            return GROW_OVERFLOW, n, 0.0
        if n >= max_steps:
            return GROW_BUDGET, n, 0.0


@njit(cache=True)
def run_walks(kind, mode, cond, rotavg, dom, delta, i0, i1, seed, budget,
              grid_m, hist_theta, hist_xyz, stats):
    """Grow SKSAW samples i0..i1-1 and accumulate histograms.

    kind: 0 square, 1 hexagonal.  mode: 0 mean-steps, 1 exit, 2 xyz.
    cond: six-subset conditioning (xyz mode, fixed orientation).
    rotavg: draw a fresh uniform domain rotation per sample.
    grid_m > 0 selects direct-grid occupancy with half-extent grid_m
    (bounded domains; a walk hitting the rim counts as aborted), else the
    hash table with a deterministic big-table replay on overflow.
    hist_theta: int64[G]; hist_xyz: int64[6, 3, G]; stats: int64[N_STATS].
    """
    G = hist_theta.shape[0]
    Gx = hist_xyz.shape[2]
    xs = np.empty(PATH_CAP, dtype=np.int64)
    ys = np.empty(PATH_CAP, dtype=np.int64)
    dirs = np.empty(PATH_CAP, dtype=np.int64)
    wind = np.empty(PATH_CAP, dtype=np.int64)
    use_grid = grid_m > 0
    gw = 2 * grid_m + 1
    if use_grid:
        grid = np.full(gw * gw, -1, dtype=np.int32)
        keys_s = np.empty(1, dtype=np.int64)
        vals_s = np.empty(1, dtype=np.int32)
        stamp_s = np.full(1, -1, dtype=np.int32)
    else:
        grid = np.empty(1, dtype=np.int32)
        keys_s = np.empty(1 << LOG2SMALL, dtype=np.int64)
        vals_s = np.empty(1 << LOG2SMALL, dtype=np.int32)
        stamp_s = np.full(1 << LOG2SMALL, -1, dtype=np.int32)
    keys_b = np.empty(1, dtype=np.int64)
    vals_b = np.empty(1, dtype=np.int32)
    stamp_b = np.full(1, -1, dtype=np.int32)
    big_ready = False
    nbk = np.empty(8, dtype=np.int64)
    ring_ex = np.empty(4, dtype=np.int64)
    ring_ey = np.empty(4, dtype=np.int64)
    ring_k = np.empty(4, dtype=np.int64)
    cx = np.empty(4, dtype=np.int64)
    cy = np.empty(4, dtype=np.int64)
    cd = np.empty(4, dtype=np.int64)

    max_steps = budget
    if max_steps > PATH_CAP - 2:
        max_steps = PATH_CAP - 2
    small_sites = (1 << LOG2SMALL) // 2
    if use_grid:
        small_sites = PATH_CAP - 2
    epoch_s = np.int32(0)
    epoch_b = np.int32(0)

    for si in range(i0, i1):
        st = stream_init(seed, si)
        alpha = 0.0
        if rotavg:
            st, u = rng_uniform(st)
            alpha = TWO_PI * u
        ca = math.cos(alpha)
        sa = math.sin(alpha)
        status, n, theta_e = _grow_one(
            kind, dom, delta, st, max_steps, small_sites, ca, sa,
            xs, ys, dirs, wind, keys_s, vals_s, stamp_s, epoch_s, LOG2SMALL,
            use_grid, grid, grid_m, gw,
            nbk, ring_ex, ring_ey, ring_k, cx, cy, cd)
        epoch_s += 1
        if use_grid:
            for t in range(n + 1):
                grid[(xs[t] + grid_m) * gw + (ys[t] + grid_m)] = -1
        elif status == GROW_OVERFLOW:
            # deterministic replay of the same stream on the large table
            if not big_ready:
                keys_b = np.empty(TABLE_CAP, dtype=np.int64)
                vals_b = np.empty(TABLE_CAP, dtype=np.int32)
                stamp_b = np.full(TABLE_CAP, -1, dtype=np.int32)
                big_ready = True
            st = stream_init(seed, si)
            if rotavg:
                st, u = rng_uniform(st)
            status, n, theta_e = _grow_one(
                kind, dom, delta, st, max_steps, PATH_CAP - 2, ca, sa,
                xs, ys, dirs, wind, keys_b, vals_b, stamp_b, epoch_b, LOG2CAP,
                False, grid, grid_m, gw,
                nbk, ring_ex, ring_ey, ring_k, cx, cy, cd)
            epoch_b += 1
        if status == GROW_STUCK:
            stats[STAT_STUCK] += 1
            continue
        if status == GROW_ERR:
            stats[STAT_ERR] += 1
            continue
        if status != GROW_EXIT:
            stats[STAT_ABORTED] += 1
            continue
        stats[STAT_OK] += 1
        stats[STAT_STEPS_SUM] += n
        stats[STAT_STEPS_SUMSQ] += n * n
        if n > stats[STAT_STEPS_MAX]:
            stats[STAT_STEPS_MAX] = n
        if mode == MODE_EXIT:
            jb = np.int64(theta_e / TWO_PI * G)
            if jb > G - 1:
                jb = G - 1
            hist_theta[jb] += 1
        elif mode == MODE_XYZ:
            sub = 0
            if cond:
                sub = _fold_subset(theta_e)
            phi = alpha + theta_e
            c2 = math.cos(phi)
            s2 = math.sin(phi)
            xmax = 0.0
            ymax = 0.0
            zsq = 1.0
            for t in range(n + 1):
                if kind == 0:
                    px = delta * xs[t]
                    py = delta * ys[t]
                else:
                    px = delta * (SQRT3 * 0.5) * xs[t]
                    py = delta * 0.5 * (3 * ys[t] - ((xs[t] + ys[t]) & 1))
                rx = c2 * px + s2 * py
                ry = c2 * py - s2 * px
                if -rx > xmax:
                    xmax = -rx
                if ry > ymax:
                    ymax = ry
                d2 = (rx - 1.0) * (rx - 1.0) + ry * ry
                if d2 > zsq:
                    zsq = d2
            zmax = math.sqrt(zsq)
            jx = np.int64(xmax * Gx)
            if jx > Gx - 1:
                jx = Gx - 1
            jy = np.int64(ymax * Gx)
            if jy > Gx - 1:
                jy = Gx - 1
            jz = np.int64((zmax - 1.0) * Gx)
            if jz < 0:
                jz = 0
            if jz > Gx - 1:
                jz = Gx - 1
            hist_xyz[sub, 0, jx] += 1
            hist_xyz[sub, 1, jy] += 1
            hist_xyz[sub, 2, jz] += 1
    return 0


@njit(cache=True)
def sample_step_counts(kind, dom, delta, nsamples, seed, out):
    """Per-sample step counts (diagnostics; -1 marks aborted samples)."""
    xs = np.empty(PATH_CAP, dtype=np.int64)
    ys = np.empty(PATH_CAP, dtype=np.int64)
    dirs = np.empty(PATH_CAP, dtype=np.int64)
    wind = np.empty(PATH_CAP, dtype=np.int64)
    keys = np.empty(TABLE_CAP, dtype=np.int64)
    vals = np.empty(TABLE_CAP, dtype=np.int32)
    stamp = np.full(TABLE_CAP, -1, dtype=np.int32)
    nbk = np.empty(8, dtype=np.int64)
    ring_ex = np.empty(4, dtype=np.int64)
    ring_ey = np.empty(4, dtype=np.int64)
    ring_k = np.empty(4, dtype=np.int64)
    cx = np.empty(4, dtype=np.int64)
    cy = np.empty(4, dtype=np.int64)
    cd = np.empty(4, dtype=np.int64)
    dummy = np.empty(1, dtype=np.int32)
    for si in range(nsamples):
        st = stream_init(seed, si)
        status, n, theta_e = _grow_one(
            kind, dom, delta, st, PATH_CAP - 2, PATH_CAP - 2, 1.0, 0.0,
            xs, ys, dirs, wind, keys, vals, stamp, np.int32(si), LOG2CAP,
            False, dummy, 0, 1,
            nbk, ring_ex, ring_ey, ring_k, cx, cy, cd)
        out[si] = n if status == GROW_EXIT else -1
    return 0


# ---------------------------------------------------------------------------
# flood-fill oracle and agreement checks

@njit(cache=True, inline="always")
def _oracle_free_path(grid, vis, queue, off, W, vepoch, kind,
                      sx, sy, lox, loy, hix, hiy):
    """BFS through free sites from (sx, sy); True iff it escapes the
    bounding box [lox, hix] x [loy, hiy] (everything outside is free)."""
    if sx < lox or sx > hix or sy < loy or sy > hiy:
        return True
    if grid[(sx + off) * W + (sy + off)] >= 0:
        return False
    head = 0
    tail = 0
    queue[tail] = (sx + off) * W + (sy + off)
    tail += 1
    vis[(sx + off) * W + (sy + off)] = vepoch
    while head < tail:
        cur = queue[head]
        head += 1
        cxx = cur // W - off
        cyy = cur % W - off
        for j in range(4):
            if j == 0:
                nx2, ny2 = cxx + 1, cyy
            elif j == 1:
                nx2, ny2 = cxx - 1, cyy
            elif j == 2:
                nx2, ny2 = cxx, cyy + 1
            else:
                nx2, ny2 = cxx, cyy - 1
            if kind == 1 and j >= 2:
                # hexagonal: single vertical neighbour
                if j == 3:
                    continue
                ny2 = cyy + _hex_vdy(cxx, cyy)
            if nx2 < lox or nx2 > hix or ny2 < loy or ny2 > hiy:
                return True
            idx = (nx2 + off) * W + (ny2 + off)
            if vis[idx] == vepoch:
                continue
            if grid[idx] >= 0:
                continue
            vis[idx] = vepoch
            queue[tail] = idx
            tail += 1
    return False


@njit(cache=True)
def trap_agreement_run(kind, delta, nsamples, seed, counters):
    """Grow full-plane walks until unit-disc exit, and at every step compare
    the winding-angle verdict of every free tip-neighbour with the
    flood-fill oracle.  counters: [checks, mismatches, stuck, errs]."""
    OFF = 1024
    W = 2 * OFF
    grid = np.full(W * W, -1, dtype=np.int32)
    vis = np.full(W * W, -1, dtype=np.int32)
    queue = np.empty(W * W, dtype=np.int32)
    xs = np.empty(PATH_CAP, dtype=np.int64)
    ys = np.empty(PATH_CAP, dtype=np.int64)
    dirs = np.empty(PATH_CAP, dtype=np.int64)
    wind = np.empty(PATH_CAP, dtype=np.int64)
    nbk = np.empty(8, dtype=np.int64)
    ring_ex = np.empty(4, dtype=np.int64)
    ring_ey = np.empty(4, dtype=np.int64)
    ring_k = np.empty(4, dtype=np.int64)
    cxs = np.empty(4, dtype=np.int64)
    cys = np.empty(4, dtype=np.int64)
    cds = np.empty(4, dtype=np.int64)
    vepoch = 0
    for si in range(nsamples):
        st = stream_init(seed, si)
        # clear previous walk
        x = np.int64(0)
        y = np.int64(0)
        n = np.int64(0)
        xs[0] = 0
        ys[0] = 0
        grid[(0 + OFF) * W + (0 + OFF)] = 0
        lox = np.int64(0); hix = np.int64(0)
        loy = np.int64(0); hiy = np.int64(0)
        while True:
            ncand = 0
            if n == 0:
                if kind == 0:
                    for j in range(4):
                        jj = _SQ_ORTH[j]
                        cxs[ncand] = x + _SQ8_DX[jj]
                        cys[ncand] = y + _SQ8_DY[jj]
                        cds[ncand] = _SQ8_DIR[jj]
                        ncand += 1
                else:
                    vdy = _hex_vdy(x, y)
                    cxs[0] = x + 1; cys[0] = y
                    cxs[1] = x - 1; cys[1] = y
                    cxs[2] = x; cys[2] = y + vdy
                    for j in range(3):
                        cds[j] = _hex_edge_dir(x, y, cxs[j], cys[j])
                    ncand = 3
            else:
                if kind == 0:
                    for j in range(8):
                        nbk[j] = grid[(x + _SQ8_DX[j] + OFF) * W + (y + _SQ8_DY[j] + OFF)]
                    for j in range(4):
                        jj = _SQ_ORTH[j]
                        px2 = x + _SQ8_DX[jj]
                        py2 = y + _SQ8_DY[jj]
                        if nbk[jj] >= 0:
                            continue
                        cdir = _SQ8_DIR[jj]
                        v = sq_trapped(dirs, wind, n, cdir, nbk)
                        if v < 0:
                            counters[3] += 1
                            v = 1
                        vepoch += 1
                        esc = _oracle_free_path(grid, vis, queue, OFF, W, vepoch,
                                                kind, px2, py2, lox, loy, hix, hiy)
                        counters[0] += 1
                        if esc == (v == 1):
                            counters[1] += 1
                        if v == 0:
                            cxs[ncand] = px2
                            cys[ncand] = py2
                            cds[ncand] = cdir
                            ncand += 1
                else:
                    xb = xs[n - 1]
                    yb = ys[n - 1]
                    ax, ay, bx, by, ma_x, ma_y, zx, zy, mb_x, mb_y = \
                        hex_face_ahead(x, y, xb, yb)
                    ka = grid[(ax + OFF) * W + (ay + OFF)]
                    kb = grid[(bx + OFF) * W + (by + OFF)]
                    kma = grid[(ma_x + OFF) * W + (ma_y + OFF)]
                    kmb = grid[(mb_x + OFF) * W + (mb_y + OFF)]
                    kz = grid[(zx + OFF) * W + (zy + OFF)]
                    ext, eyt = _hex_iembed(x, y)
                    for which in range(2):
                        if which == 0:
                            if ka >= 0:
                                continue
                            ring_ex[0], ring_ey[0] = _hex_iembed(bx, by)
                            ring_ex[1], ring_ey[1] = _hex_iembed(mb_x, mb_y)
                            ring_ex[2], ring_ey[2] = _hex_iembed(zx, zy)
                            ring_ex[3], ring_ey[3] = _hex_iembed(ma_x, ma_y)
                            ring_k[0] = kb; ring_k[1] = kmb
                            ring_k[2] = kz; ring_k[3] = kma
                            px2, py2 = ax, ay
                        else:
                            if kb >= 0:
                                continue
                            ring_ex[0], ring_ey[0] = _hex_iembed(ax, ay)
                            ring_ex[1], ring_ey[1] = _hex_iembed(ma_x, ma_y)
                            ring_ex[2], ring_ey[2] = _hex_iembed(zx, zy)
                            ring_ex[3], ring_ey[3] = _hex_iembed(mb_x, mb_y)
                            ring_k[0] = ka; ring_k[1] = kma
                            ring_k[2] = kz; ring_k[3] = kmb
                            px2, py2 = bx, by
                        dcand = _hex_edge_dir(x, y, px2, py2)
                        v = hex_trapped(dirs, wind, n, ext, eyt, dcand,
                                        ring_ex, ring_ey, ring_k)
                        if v < 0:
                            counters[3] += 1
                            v = 1
                        vepoch += 1
                        esc = _oracle_free_path(grid, vis, queue, OFF, W, vepoch,
                                                kind, px2, py2, lox, loy, hix, hiy)
                        counters[0] += 1
                        if esc == (v == 1):
                            counters[1] += 1
                        if v == 0:
                            cxs[ncand] = px2
                            cys[ncand] = py2
                            cds[ncand] = dcand
                            ncand += 1
            if ncand == 0:
                counters[2] += 1
                break
            if ncand == 1:
                pick = 0
            else:
                st, pick = rng_below(st, ncand)
            x = cxs[pick]
            y = cys[pick]
            n += 1
            xs[n] = x
            ys[n] = y
            dirs[n] = cds[pick]
            if n >= 2:
                wind[n] = wind[n - 1] + _sdiff(dirs[n - 1], dirs[n])
            else:
                wind[1] = 0
            grid[(x + OFF) * W + (y + OFF)] = np.int32(n)
            if x < lox:
                lox = x
            if x > hix:
                hix = x
            if y < loy:
                loy = y
            if y > hiy:
                hiy = y
            if kind == 0:
                px = delta * x
                py = delta * y
            else:
                px = delta * (SQRT3 * 0.5) * x
                py = delta * 0.5 * (3 * y - ((x + y) & 1))
            if px * px + py * py >= 1.0 or n >= PATH_CAP - 2:
                break
        # clear grid for next sample
        for t in range(n + 1):
            grid[(xs[t] + OFF) * W + (ys[t] + OFF)] = -1
    return 0


@njit(cache=True)
def trap_exhaustive(kind, max_steps, counters):
    """Depth-first enumeration of every SKSAW-reachable prefix with at most
    ``max_steps`` steps, comparing winding-angle and flood-fill verdicts for
    every free tip-neighbour of every state.  Children follow the oracle.
    counters: [states, checks, mismatches, stuck, errs]."""
    OFF = max_steps + 3
    W = 2 * OFF
    grid = np.full(W * W, -1, dtype=np.int32)
    vis = np.full(W * W, -1, dtype=np.int32)
    queue = np.empty(W * W, dtype=np.int32)
    xs = np.empty(max_steps + 2, dtype=np.int64)
    ys = np.empty(max_steps + 2, dtype=np.int64)
    dirs = np.empty(max_steps + 2, dtype=np.int64)
    wind = np.empty(max_steps + 2, dtype=np.int64)
    nbk = np.empty(8, dtype=np.int64)
    ring_ex = np.empty(4, dtype=np.int64)
    ring_ey = np.empty(4, dtype=np.int64)
    ring_k = np.empty(4, dtype=np.int64)
    # per-depth candidate lists
    ccx = np.empty((max_steps + 2, 4), dtype=np.int64)
    ccy = np.empty((max_steps + 2, 4), dtype=np.int64)
    ccd = np.empty((max_steps + 2, 4), dtype=np.int64)
    ncand = np.zeros(max_steps + 2, dtype=np.int64)
    iter_ = np.zeros(max_steps + 2, dtype=np.int64)
    vepoch = 0

    xs[0] = 0
    ys[0] = 0
    grid[OFF * W + OFF] = 0
    depth = np.int64(0)
    lox = np.int64(-OFF + 1); hix = np.int64(OFF - 2)
    loy = lox; hiy = hix
    # expand current node: fill candidate list at this depth
    while True:
        x = xs[depth]
        y = ys[depth]
        counters[0] += 1
        nc = 0
        if depth == 0:
            if kind == 0:
                for j in range(4):
                    jj = _SQ_ORTH[j]
                    ccx[0, nc] = x + _SQ8_DX[jj]
                    ccy[0, nc] = y + _SQ8_DY[jj]
                    ccd[0, nc] = _SQ8_DIR[jj]
                    nc += 1
            else:
                vdy = _hex_vdy(x, y)
                ccx[0, 0] = x + 1; ccy[0, 0] = y
                ccx[0, 1] = x - 1; ccy[0, 1] = y
                ccx[0, 2] = x; ccy[0, 2] = y + vdy
                for j in range(3):
                    ccd[0, j] = _hex_edge_dir(x, y, ccx[0, j], ccy[0, j])
                nc = 3
        else:
            n = depth
            if kind == 0:
                for j in range(8):
                    nbk[j] = grid[(x + _SQ8_DX[j] + OFF) * W + (y + _SQ8_DY[j] + OFF)]
                for j in range(4):
                    jj = _SQ_ORTH[j]
                    px2 = x + _SQ8_DX[jj]
                    py2 = y + _SQ8_DY[jj]
                    if nbk[jj] >= 0:
                        continue
                    v = sq_trapped(dirs, wind, n, _SQ8_DIR[jj], nbk)
                    if v < 0:
                        counters[4] += 1
                        v = 1
                    vepoch += 1
                    esc = _oracle_free_path(grid, vis, queue, OFF, W, vepoch,
                                            kind, px2, py2, lox, loy, hix, hiy)
                    counters[1] += 1
                    if esc == (v == 1):
                        counters[2] += 1
                    if esc:
                        ccx[depth, nc] = px2
                        ccy[depth, nc] = py2
                        ccd[depth, nc] = _SQ8_DIR[jj]
                        nc += 1
            else:
                xb = xs[n - 1]
                yb = ys[n - 1]
                ax, ay, bx, by, ma_x, ma_y, zx, zy, mb_x, mb_y = \
                    hex_face_ahead(x, y, xb, yb)
                ka = grid[(ax + OFF) * W + (ay + OFF)]
                kb = grid[(bx + OFF) * W + (by + OFF)]
                kma = grid[(ma_x + OFF) * W + (ma_y + OFF)]
                kmb = grid[(mb_x + OFF) * W + (mb_y + OFF)]
                kz = grid[(zx + OFF) * W + (zy + OFF)]
                ext, eyt = _hex_iembed(x, y)
                for which in range(2):
                    if which == 0:
                        if ka >= 0:
                            continue
                        ring_ex[0], ring_ey[0] = _hex_iembed(bx, by)
                        ring_ex[1], ring_ey[1] = _hex_iembed(mb_x, mb_y)
                        ring_ex[2], ring_ey[2] = _hex_iembed(zx, zy)
                        ring_ex[3], ring_ey[3] = _hex_iembed(ma_x, ma_y)
                        ring_k[0] = kb; ring_k[1] = kmb
                        ring_k[2] = kz; ring_k[3] = kma
                        px2, py2 = ax, ay
                    else:
                        if kb >= 0:
                            continue
                        ring_ex[0], ring_ey[0] = _hex_iembed(ax, ay)
                        ring_ex[1], ring_ey[1] = _hex_iembed(ma_x, ma_y)
                        ring_ex[2], ring_ey[2] = _hex_iembed(zx, zy)
                        ring_ex[3], ring_ey[3] = _hex_iembed(mb_x, mb_y)
                        ring_k[0] = ka; ring_k[1] = kma
                        ring_k[2] = kz; ring_k[3] = kmb
                        px2, py2 = bx, by
                    dcand = _hex_edge_dir(x, y, px2, py2)
                    v = hex_trapped(dirs, wind, n, ext, eyt, dcand,
                                    ring_ex, ring_ey, ring_k)
                    if v < 0:
                        counters[4] += 1
                        v = 1
                    vepoch += 1
                    esc = _oracle_free_path(grid, vis, queue, OFF, W, vepoch,
                                            kind, px2, py2, lox, loy, hix, hiy)
                    counters[1] += 1
                    if esc == (v == 1):
                        counters[2] += 1
                    if esc:
                        ccx[depth, nc] = px2
                        ccy[depth, nc] = py2
                        ccd[depth, nc] = dcand
                        nc += 1
            if nc == 0:
                counters[3] += 1
        ncand[depth] = nc
        iter_[depth] = 0
        # descend / advance
        while True:
            if depth < max_steps and iter_[depth] < ncand[depth]:
                i = iter_[depth]
                iter_[depth] += 1
                nx2 = ccx[depth, i]
                ny2 = ccy[depth, i]
                nd = ccd[depth, i]
                depth += 1
                xs[depth] = nx2
                ys[depth] = ny2
                dirs[depth] = nd
                if depth >= 2:
                    wind[depth] = wind[depth - 1] + _sdiff(dirs[depth - 1], nd)
                else:
                    wind[1] = 0
                grid[(nx2 + OFF) * W + (ny2 + OFF)] = np.int32(depth)
                break
            # exhausted: backtrack
            if depth == 0:
                return 0
            grid[(xs[depth] + OFF) * W + (ys[depth] + OFF)] = -1
            depth -= 1


# ---------------------------------------------------------------------------
# walk-on-spheres harmonic measure oracle

@njit(cache=True, inline="always")
def _domain_dist(dom, x, y):
    if dom == DOM_DISC:
        return 1.0 - math.sqrt(x * x + y * y)
    if dom == DOM_D1:
        dx = x - 1.0
        return 2.0 - math.sqrt(dx * dx + y * y)
    if dom == DOM_D2:
        a = y + 1.0
        b = 2.0 - y
        return a if a < b else b
    d1 = x + 1.0
    d2 = (2.0 * SQRT3 - SQRT3 * x - 3.0 * y) / (2.0 * SQRT3)
    d3 = (2.0 * SQRT3 - SQRT3 * x + 3.0 * y) / (2.0 * SQRT3)
    m = d1 if d1 < d2 else d2
    return m if m < d3 else d3


@njit(cache=True)
def wos_exit_hist(dom, nsamples, seed, eps, hist):
    """Walk-on-spheres samples of the Brownian exit angle; bins into the
    CDF grid of ``hist`` (theta in [0, 2pi))."""
    G = hist.shape[0]
    for si in range(nsamples):
        st = stream_init(seed, si)
        x = 0.0
        y = 0.0
        while True:
            d = _domain_dist(dom, x, y)
            if d < eps:
                break
            st, u = rng_uniform(st)
            phi = TWO_PI * u
            x += d * math.cos(phi)
            y += d * math.sin(phi)
        th = math.atan2(y, x)
        if th < 0.0:
            th += TWO_PI
        jb = np.int64(th / TWO_PI * G)
        if jb > G - 1:
            jb = G - 1
        hist[jb] += 1
    return 0


# ---------------------------------------------------------------------------
# Brownian-hull oracle for the X/Y/Z restriction statistics

@njit(cache=True)
def bm_hull_hists(h, i0, i1, seed, hist_x, hist_y, hist_z, stats):
    """Brownian motion from 0 with per-coordinate step variance h, run to
    unit-disc exit, rotated so the exit lands at angle 0.  Accumulates
    CDF histograms of X, Y, Z over path vertices (exit vertex included)
    for samples i0..i1-1.  stats: int64[ok, aborted, steps_sum]."""
    G = hist_x.shape[0]
    CAPB = 1 << 18
    bx = np.empty(CAPB, dtype=np.float64)
    by = np.empty(CAPB, dtype=np.float64)
    s = math.sqrt(h)
    for si in range(i0, i1):
        st = stream_init(seed, si)
        x = 0.0
        y = 0.0
        n = 0
        bx[0] = 0.0
        by[0] = 0.0
        ok = False
        while n < CAPB - 1:
            st, g1, g2 = rng_normal_pair(st)
            x += s * g1
            y += s * g2
            n += 1
            bx[n] = x
            by[n] = y
            if x * x + y * y > 1.0:
                ok = True
                break
        if not ok:
            stats[1] += 1
            continue
        stats[0] += 1
        stats[2] += n
        phi = math.atan2(y, x)
        c = math.cos(phi)
        sn = math.sin(phi)
        xmax = 0.0
        ymax = 0.0
        zsq = 1.0
        for t in range(n + 1):
            rx = c * bx[t] + sn * by[t]
            ry = c * by[t] - sn * bx[t]
            if -rx > xmax:
                xmax = -rx
            if ry > ymax:
                ymax = ry
            d2 = (rx - 1.0) * (rx - 1.0) + ry * ry
            if d2 > zsq:
                zsq = d2
        zmax = math.sqrt(zsq)
        jx = np.int64(xmax * G)
        if jx > G - 1:
            jx = G - 1
        jy = np.int64(ymax * G)
        if jy > G - 1:
            jy = G - 1
        jz = np.int64((zmax - 1.0) * G)
        if jz < 0:
            jz = 0
        if jz > G - 1:
            jz = G - 1
        hist_x[jx] += 1
        hist_y[jy] += 1
        hist_z[jz] += 1
    return 0


# ---------------------------------------------------------------------------
# python-visible helpers for the walker API

@njit(cache=True)
def tip_verdicts(kind, xs, ys, dirs, wind, n):
    """Free/trap verdicts for every neighbour of the tip of a stored walk.

    Returns (sites_x[cnt], sites_y[cnt], free[cnt], trapped[cnt]) over the
    tip's neighbours in lattice order.  Uses a dictionary built on the fly,
    so intended for API-level calls, not hot loops.
    """
    keys = np.empty(TABLE_CAP, dtype=np.int64)
    vals = np.empty(TABLE_CAP, dtype=np.int32)
    stamp = np.full(TABLE_CAP, -1, dtype=np.int32)
    for t in range(n + 1):
        table_put(keys, vals, stamp, 0, LOG2CAP, xs[t], ys[t], np.int32(t))
    x = xs[n]
    y = ys[n]
    deg = 4 if kind == 0 else 3
    out_x = np.empty(deg, dtype=np.int64)
    out_y = np.empty(deg, dtype=np.int64)
    out_free = np.zeros(deg, dtype=np.int64)
    out_trap = np.zeros(deg, dtype=np.int64)
    nbk = np.empty(8, dtype=np.int64)
    ring_ex = np.empty(4, dtype=np.int64)
    ring_ey = np.empty(4, dtype=np.int64)
    ring_k = np.empty(4, dtype=np.int64)
    if kind == 0:
        for j in range(8):
            nbk[j] = table_get(keys, vals, stamp, 0, LOG2CAP, x + _SQ8_DX[j], y + _SQ8_DY[j])
        for j in range(4):
            jj = _SQ_ORTH[j]
            out_x[j] = x + _SQ8_DX[jj]
            out_y[j] = y + _SQ8_DY[jj]
            if nbk[jj] >= 0:
                continue
            out_free[j] = 1
            if n == 0:
                continue
            v = sq_trapped(dirs, wind, n, _SQ8_DIR[jj], nbk)
            out_trap[j] = 1 if v == 1 else (-1 if v < 0 else 0)
    else:
        vdy = _hex_vdy(x, y)
        out_x[0] = x + 1; out_y[0] = y
        out_x[1] = x - 1; out_y[1] = y
        out_x[2] = x; out_y[2] = y + vdy
        for j in range(3):
            k = table_get(keys, vals, stamp, 0, LOG2CAP, out_x[j], out_y[j])
            if k >= 0:
                continue
            out_free[j] = 1
            if n == 0:
                continue
            xb = xs[n - 1]
            yb = ys[n - 1]
            ax, ay, bx2, by2, ma_x, ma_y, zx, zy, mb_x, mb_y = \
                hex_face_ahead(x, y, xb, yb)
            ka = table_get(keys, vals, stamp, 0, LOG2CAP, ax, ay)
            kb = table_get(keys, vals, stamp, 0, LOG2CAP, bx2, by2)
            kma = table_get(keys, vals, stamp, 0, LOG2CAP, ma_x, ma_y)
            kmb = table_get(keys, vals, stamp, 0, LOG2CAP, mb_x, mb_y)
            kz = table_get(keys, vals, stamp, 0, LOG2CAP, zx, zy)
            ext, eyt = _hex_iembed(x, y)
            if out_x[j] == ax and out_y[j] == ay:
                ring_ex[0], ring_ey[0] = _hex_iembed(bx2, by2)
                ring_ex[1], ring_ey[1] = _hex_iembed(mb_x, mb_y)
                ring_ex[2], ring_ey[2] = _hex_iembed(zx, zy)
                ring_ex[3], ring_ey[3] = _hex_iembed(ma_x, ma_y)
                ring_k[0] = kb; ring_k[1] = kmb; ring_k[2] = kz; ring_k[3] = kma
            else:
                ring_ex[0], ring_ey[0] = _hex_iembed(ax, ay)
                ring_ex[1], ring_ey[1] = _hex_iembed(ma_x, ma_y)
                ring_ex[2], ring_ey[2] = _hex_iembed(zx, zy)
                ring_ex[3], ring_ey[3] = _hex_iembed(mb_x, mb_y)
                ring_k[0] = ka; ring_k[1] = kma; ring_k[2] = kz; ring_k[3] = kmb
            dcand = _hex_edge_dir(x, y, out_x[j], out_y[j])
            v = hex_trapped(dirs, wind, n, ext, eyt, dcand,
                            ring_ex, ring_ey, ring_k)
            out_trap[j] = 1 if v == 1 else (-1 if v < 0 else 0)
    return out_x, out_y, out_free, out_trap
