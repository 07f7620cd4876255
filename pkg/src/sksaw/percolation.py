"""Chordal SKSAW on bounded hexagonal domains and its percolation coupling.

A domain is a simply connected union of hexagonal faces.  The chordal
SKSAW from boundary site u to boundary site v treats out-of-domain sites
as occupied and judges trapping with respect to v.  The equivalent
percolation picture pre-colors the boundary hexagons (black clockwise
from u to v, white from v back to u) and explores the interface: each
step "hits" the hexagon ahead; a white hexagon makes the walk turn left,
a black one right, and an uncolored interior hexagon is colored by a fair
coin first.

Both processes are implemented directly so their path distributions can
be compared exactly (rational arithmetic) on small domains.
"""

from __future__ import annotations

from fractions import Fraction

from .lattice import (LatticeKind, Site, embed, hex_edge_faces,
                      hex_face_sites, hex_face_of_center, iembed_hex,
                      neighbors, parity, step_directions)

HEX = LatticeKind.HEXAGONAL

BLACK = 0
WHITE = 1


class HexDomain:
    """A finite union of hexagonal faces, given by their top sites."""

    def __init__(self, faces):
        self.faces = frozenset(tuple(f) for f in faces)
        if not self.faces:
            raise ValueError("empty domain")
        sites = set()
        for f in self.faces:
            sites.update(hex_face_sites(f))
        self.sites = frozenset(sites)
        self._boundary_cycle = None

    def __contains__(self, site: Site) -> bool:
        return tuple(site) in self.sites

    # -- boundary structure -------------------------------------------------
    def _edge_on_boundary(self, s: Site, t: Site) -> bool:
        f1, f2 = hex_edge_faces(s, t)
        return (f1 in self.faces) != (f2 in self.faces)

    def outside_face(self, s: Site, t: Site) -> Site:
        f1, f2 = hex_edge_faces(s, t)
        if (f1 in self.faces) == (f2 in self.faces):
            raise ValueError(f"edge {s}-{t} is not a boundary edge")
        return f2 if f1 in self.faces else f1

    def boundary_cycle(self) -> list[Site]:
        """Boundary sites in clockwise order (simply connected domains)."""
        if self._boundary_cycle is not None:
            return self._boundary_cycle
        # collect boundary edges
        adj: dict[Site, list[Site]] = {}
        seen = set()
        for f in self.faces:
            ring = hex_face_sites(f)
            for s, t in zip(ring, ring[1:] + ring[:1]):
                e = frozenset((s, t))
                if e in seen:
                    continue
                seen.add(e)
                if self._edge_on_boundary(s, t):
                    adj.setdefault(s, []).append(t)
                    adj.setdefault(t, []).append(s)
        for s, nbrs in adj.items():
            if len(nbrs) != 2:
                raise ValueError("domain boundary has a pinch point at "
                                 f"{s}; use a cleanly simply connected set")
        start = min(adj)
        cyc = [start]
        prev = None
        while True:
            cur = cyc[-1]
            nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
            if nxt == start:
                break
            cyc.append(nxt)
            prev = cur
        if len(cyc) != len(adj):
            raise ValueError("domain boundary is not a single cycle")
        # orient clockwise (negative shoelace area)
        pts = [embed(s, HEX) for s in cyc]
        area2 = sum(pts[i][0] * pts[(i + 1) % len(pts)][1]
                    - pts[(i + 1) % len(pts)][0] * pts[i][1]
                    for i in range(len(pts)))
        if area2 > 0:
            cyc = [cyc[0]] + cyc[:0:-1]
        self._boundary_cycle = cyc
        return cyc

    def entry_neighbor(self, u: Site) -> Site:
        """The unique out-of-domain neighbour of a boundary site."""
        outs = [s for s in neighbors(u, HEX) if s not in self]
        if len(outs) != 1:
            raise ValueError(f"site {u} has {len(outs)} out-of-domain "
                             "neighbours; need exactly one for an endpoint")
        return outs[0]


def hexagon_cluster(centers) -> HexDomain:
    """Domain from face top-sites (convenience constructor)."""
    return HexDomain(centers)


def flower() -> HexDomain:
    """One hexagon plus its six face-neighbours (7 interior hexagons)."""
    c = (0, 0)
    tops = [c, (2, 0), (-2, 0), (1, 1), (-1, 1), (1, -1), (-1, -1)]
    return HexDomain(tops)


# ---------------------------------------------------------------------------
# chordal SKSAW (trapping by direct reachability; exact, for small domains)

def _reaches(domain: HexDomain, occupied, frm: Site, to: Site) -> bool:
    if frm == to:
        return True
    if frm in occupied or frm not in domain:
        return False
    seen = {frm}
    stack = [frm]
    while stack:
        cur = stack.pop()
        for nb in neighbors(cur, HEX):
            if nb == to:
                return True
            if nb in seen or nb in occupied or nb not in domain:
                continue
            seen.add(nb)
            stack.append(nb)
    return False


def chordal_allowable(domain: HexDomain, path: list[Site], v: Site) -> list[Site]:
    """In-domain, unoccupied, non-trapping (w.r.t. v) tip neighbours."""
    occ = set(path)
    tip = path[-1]
    out = []
    for cand in neighbors(tip, HEX):
        if cand not in domain or cand in occ:
            continue
        if _reaches(domain, occ, cand, v) or cand == v:
            out.append(cand)
    return out


def chordal_sksaw(domain: HexDomain, u: Site, v: Site, rng) -> list[Site]:
    """Sample a chordal SKSAW path from u to v (bounded domains always
    terminate)."""
    if u not in domain or v not in domain or u == v:
        raise ValueError("u, v must be distinct domain sites")
    path = [tuple(u)]
    while path[-1] != tuple(v):
        opts = chordal_allowable(domain, path, tuple(v))
        if not opts:
            raise RuntimeError("chordal SKSAW stuck; invalid domain/endpoints")
        path.append(opts[rng.below(len(opts))] if len(opts) > 1 else opts[0])
    return path


def enumerate_chordal(domain: HexDomain, u: Site, v: Site) -> dict[tuple, Fraction]:
    """Exact path distribution of the chordal SKSAW (rational arithmetic)."""
    dist: dict[tuple, Fraction] = {}

    def rec(path, prob):
        if path[-1] == tuple(v):
            dist[tuple(path)] = dist.get(tuple(path), Fraction(0)) + prob
            return
        opts = chordal_allowable(domain, path, tuple(v))
        if not opts:
            raise RuntimeError("stuck state in enumeration")
        q = prob * Fraction(1, len(opts))
        for s in opts:
            path.append(s)
            rec(path, q)
            path.pop()

    rec([tuple(u)], Fraction(1))
    return dist


# ---------------------------------------------------------------------------
# percolation interface

def _hit_face(prev: Site, cur: Site) -> Site:
    """Top site of the hexagon the walk is hitting: the face centred at
    cur + (cur - prev)."""
    ex0, ey0 = iembed_hex(prev)
    ex1, ey1 = iembed_hex(cur)
    return hex_face_of_center((2 * ex1 - ex0, 2 * ey1 - ey0))


def boundary_colors(domain: HexDomain, u: Site, v: Site) -> dict[Site, int]:
    """Pre-colored boundary hexagons: clockwise from u, black until v,
    then white back to u."""
    cyc = domain.boundary_cycle()
    u, v = tuple(u), tuple(v)
    if u not in cyc or v not in cyc:
        raise ValueError("u and v must be boundary sites")
    i0 = cyc.index(u)
    cyc = cyc[i0:] + cyc[:i0]
    iv = cyc.index(v)
    colors: dict[Site, int] = {}
    m = len(cyc)
    for i in range(m):
        s, t = cyc[i], cyc[(i + 1) % m]
        col = BLACK if i < iv else WHITE
        f = domain.outside_face(s, t)
        if colors.get(f, col) != col:
            raise ValueError("boundary coloring conflict; pick different "
                             "endpoints for this domain")
        colors[f] = col
    return colors


def _turn_step(prev: Site, cur: Site, left: bool) -> Site:
    """Site after turning left/right from the step prev -> cur."""
    d_in = None
    for nb, d in zip(neighbors(prev, HEX), step_directions(prev, HEX)):
        if nb == cur:
            d_in = d
            break
    if d_in is None:
        raise ValueError(f"{prev}->{cur} is not an edge")
    d_out = (d_in + 4) % 24 if left else (d_in - 4) % 24
    for nb, d in zip(neighbors(cur, HEX), step_directions(cur, HEX)):
        if d == d_out:
            return nb
    raise AssertionError("turn produced an impossible direction")


def percolation_interface(domain: HexDomain, u: Site, v: Site, rng) -> list[Site]:
    """Grow the percolation interface from u to v: pre-colored boundary,
    interior hexagons colored by fair coins as they are hit."""
    u, v = tuple(u), tuple(v)
    colors = dict(boundary_colors(domain, u, v))
    path = [u]
    prev = domain.entry_neighbor(u)
    while path[-1] != v:
        cur = path[-1]
        f = _hit_face(prev, cur)
        col = colors.get(f)
        if col is None:
            if f not in domain.faces:
                raise AssertionError("interface hit an uncolored face "
                                     "outside the domain")
            col = BLACK if rng.below(2) == 0 else WHITE
            colors[f] = col
        nxt = _turn_step(prev, cur, left=(col == WHITE))
        if nxt not in domain or nxt in path:
            raise AssertionError("interface left the domain or revisited "
                                 "a site; boundary coloring is inconsistent")
        prev = cur
        path.append(nxt)
    return path


def enumerate_interface(domain: HexDomain, u: Site, v: Site) -> dict[tuple, Fraction]:
    """Exact interface path distribution over all coin sequences."""
    u, v = tuple(u), tuple(v)
    base = boundary_colors(domain, u, v)
    dist: dict[tuple, Fraction] = {}

    def rec(path, prev, colors, prob):
        if path[-1] == v:
            dist[tuple(path)] = dist.get(tuple(path), Fraction(0)) + prob
            return
        cur = path[-1]
        f = _hit_face(prev, cur)
        col = colors.get(f)
        if col is None:
            if f not in domain.faces:
                raise AssertionError("uncolored face outside domain")
            for c in (BLACK, WHITE):
                colors[f] = c
                nxt = _turn_step(prev, cur, left=(c == WHITE))
                path.append(nxt)
                rec(path, cur, colors, prob * Fraction(1, 2))
                path.pop()
                del colors[f]
            return
        nxt = _turn_step(prev, cur, left=(col == WHITE))
        path.append(nxt)
        rec(path, cur, colors, prob)
        path.pop()

    rec([u], domain.entry_neighbor(u), dict(base), Fraction(1))
    return dist


# Note: a "coloring-only" sampler (flip a coin at every uncolored hit
# hexagon, no occupancy checks) is NOT the full-plane SKSAW: without a
# pre-colored boundary the walk can hit an uncolored hexagon one of whose
# fork sites is already occupied, and there the SKSAW move is forced while
# a coin would sometimes step onto the occupied site.  The percolation
# coupling is exact only for the bounded chordal walk above.
