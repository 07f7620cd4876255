"""Integer-coordinate geometry for the square and hexagonal lattices.

Sites are pairs of integers.  Square sites use plain Cartesian coordinates.
Hexagonal (honeycomb) sites use brick/axial coordinates: site (x, y) has
parity p = (x + y) & 1, horizontal neighbours (x-1, y) and (x+1, y), and a
vertical neighbour (x, y+1) when p == 0, (x, y-1) when p == 1.  With one
edge direction along +y the embedding at spacing delta is

    square:    (x, y)  ->  delta * (x, y)
    hexagonal: (x, y)  ->  delta * (sqrt(3)/2 * x, (3*y - p) / 2)

which makes every nearest-neighbour embedded distance exactly delta.

Angles are handled as exact integer multiples of pi/12 (24 units per full
turn) so winding totals never accumulate floating-point drift.  Lattice
step directions are multiples of pi/6; the finer pi/12 grid also represents
the square lattice's diagonal chords used by the trap detector.
"""

from __future__ import annotations

import math
from enum import Enum

Site = tuple[int, int]

ANGLE_UNITS = 24          # angle units per full turn; 1 unit = pi/12
UNIT = math.pi / 12.0

SQRT3 = math.sqrt(3.0)


class LatticeKind(Enum):
    SQUARE = "square"
    HEXAGONAL = "hexagonal"


# neighbour offsets and their direction units (multiples of pi/12)
_SQUARE_STEPS = (((1, 0), 0), ((0, 1), 6), ((-1, 0), 12), ((0, -1), 18))
# hexagonal: index by parity (even sites sit above their horizontal
# neighbours, so east = -30deg, west = 210deg; odd sites mirror this)
_HEX_STEPS = (
    (((1, 0), 22), ((-1, 0), 14), ((0, 1), 6)),    # parity 0: one edge along +y
    (((1, 0), 2), ((-1, 0), 10), ((0, -1), 18)),   # parity 1
)


def parity(s: Site) -> int:
    """Sublattice parity of a hexagonal site."""
    return (s[0] + s[1]) & 1


def neighbors(s: Site, kind: LatticeKind) -> list[Site]:
    """All nearest neighbours of ``s`` in a fixed deterministic order."""
    x, y = s
    if kind is LatticeKind.SQUARE:
        return [(x + dx, y + dy) for (dx, dy), _ in _SQUARE_STEPS]
    return [(x + dx, y + dy) for (dx, dy), _ in _HEX_STEPS[parity(s)]]


def step_directions(s: Site, kind: LatticeKind) -> list[int]:
    """Direction units (pi/12 multiples) of the outgoing edges of ``s``,
    aligned with :func:`neighbors` order."""
    if kind is LatticeKind.SQUARE:
        return [d for _, d in _SQUARE_STEPS]
    return [d for _, d in _HEX_STEPS[parity(s)]]


def direction_between(s: Site, t: Site, kind: LatticeKind) -> int:
    """Direction units of the lattice edge s -> t; raises if not neighbours."""
    for n, d in zip(neighbors(s, kind), step_directions(s, kind)):
        if n == t:
            return d
    raise ValueError(f"{t} is not a neighbour of {s} on {kind.value}")


def embed(s: Site, kind: LatticeKind, delta: float = 1.0) -> tuple[float, float]:
    """Embed a site into the plane at lattice spacing ``delta``."""
    x, y = s
    if kind is LatticeKind.SQUARE:
        return (delta * x, delta * y)
    p = (x + y) & 1
    return (delta * (SQRT3 / 2.0) * x, delta * 0.5 * (3 * y - p))


def iembed_hex(s: Site) -> tuple[int, int]:
    """Exact integer embedding of a hexagonal site.

    Units are (sqrt(3)/2, 1/2) per axis, so the true embedding is the
    integer pair scaled componentwise.  Face centres live on the same grid.
    """
    x, y = s
    return (x, 3 * y - ((x + y) & 1))


def signed_turn_units(d_in: int, d_out: int) -> int:
    """Signed exterior angle d_in -> d_out in pi/12 units, in [-12, 11]."""
    return ((d_out - d_in + 12) % ANGLE_UNITS) - 12


def turn_angle(d_in: int, d_out: int, kind: LatticeKind) -> float:
    """Signed turn angle in radians between consecutive step directions.

    Positive is counterclockwise.  Square turns are in {-pi/2, 0, +pi/2},
    hexagonal turns in {-pi/3, +pi/3}.  A reversal (walking straight back)
    is illegal for a self-avoiding walk and raises ValueError.
    """
    t = signed_turn_units(d_in, d_out)
    if abs(t) == 12:
        raise ValueError("reversal turn: walker attempted to backtrack")
    allowed = (0, 6, -6) if kind is LatticeKind.SQUARE else (4, -4)
    if t not in allowed:
        raise ValueError(f"turn of {t} pi/12 units impossible on {kind.value}")
    return t * UNIT


def reverse_direction(d: int) -> int:
    return (d + 12) % ANGLE_UNITS


# ---------------------------------------------------------------------------
# hexagon faces (needed for hexagon counting and the percolation coupling)

def hex_face_center(top_site: Site) -> tuple[int, int]:
    """Integer-embedded centre of the face whose topmost site is ``top_site``.

    Every hexagonal face has a unique even-parity top site; the face is the
    hexagon hanging below it.
    """
    if parity(top_site) != 0:
        raise ValueError("face top site must have even parity")
    ix, iy = iembed_hex(top_site)
    return (ix, iy - 2)


def hex_face_sites(top_site: Site) -> list[Site]:
    """The six sites of the face below ``top_site``, in boundary order."""
    x, y = top_site
    if parity(top_site) != 0:
        raise ValueError("face top site must have even parity")
    return [(x, y), (x + 1, y), (x + 1, y - 1), (x, y - 1), (x - 1, y - 1), (x - 1, y)]


def hex_edge_faces(s: Site, t: Site) -> tuple[Site, Site]:
    """Top sites of the two faces flanking the edge s-t on the hexagonal
    lattice."""
    if t not in neighbors(s, LatticeKind.HEXAGONAL):
        raise ValueError(f"{s}-{t} is not a hexagonal edge")
    (x0, y0), (x1, y1) = sorted((s, t))
    if x0 == x1:                       # vertical edge, lower end is even
        yt = max(y0, y1)
        return ((x0 - 1, yt), (x0 + 1, yt))
    # horizontal edge: faces above and below
    xa = x0 if (x0 + y0 + 1) & 1 == 0 else x1
    xb = x0 if (x0 + y0) & 1 == 0 else x1
    return ((xa, y0 + 1), (xb, y0))


def hex_face_of_center(center: tuple[int, int]) -> Site:
    """Invert :func:`hex_face_center`."""
    cx, cy = center
    if (cy + 2) % 3 != 0:
        raise ValueError(f"{center} is not a face centre")
    top = (cx, (cy + 2) // 3)
    if parity(top) != 0:
        raise ValueError(f"{center} is not a face centre")
    return top
