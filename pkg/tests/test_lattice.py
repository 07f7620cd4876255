import math
from itertools import product

import pytest

from sksaw.lattice import (ANGLE_UNITS, LatticeKind, direction_between, embed,
                           hex_edge_faces, hex_face_center, hex_face_of_center,
                           hex_face_sites, iembed_hex, neighbors, parity,
                           reverse_direction, signed_turn_units,
                           step_directions, turn_angle)

SQ = LatticeKind.SQUARE
HEX = LatticeKind.HEXAGONAL


def test_square_neighbors_of_origin():
    assert set(neighbors((0, 0), SQ)) == {(1, 0), (-1, 0), (0, 1), (0, -1)}
    assert len(neighbors((3, -2), SQ)) == 4


def test_hex_coordination_number():
    for s in [(0, 0), (1, 0), (5, -3), (-2, 7)]:
        assert len(neighbors(s, HEX)) == 3


def test_hex_neighbor_symmetry_scan():
    # brute-force symmetry over a 100 x 100 patch
    for x in range(-50, 50):
        for y in range(-50, 50):
            s = (x, y)
            for t in neighbors(s, HEX):
                assert s in neighbors(t, HEX)


def test_embed_linear_in_delta():
    for kind in (SQ, HEX):
        for s in [(3, -2), (0, 5), (-4, -1)]:
            p1 = embed(s, kind, 0.5)
            p2 = embed(s, kind, 0.125)
            assert p1[0] == pytest.approx(4 * p2[0])
            assert p1[1] == pytest.approx(4 * p2[1])
    assert embed((3, -2), SQ, 0.5) == (1.5, -1.0)


def test_embed_neighbor_distance_is_delta():
    for kind in (SQ, HEX):
        for s in [(0, 0), (1, 0), (2, -3), (-1, 4)]:
            px = embed(s, kind, 0.25)
            for t in neighbors(s, kind):
                qx = embed(t, kind, 0.25)
                d = math.hypot(qx[0] - px[0], qx[1] - px[1])
                assert d == pytest.approx(0.25, abs=1e-12)


def test_hex_axial_unit_distance():
    p = embed((1, 0), HEX, 0.7)
    assert math.hypot(*p) == pytest.approx(0.7)


def test_origin_maps_to_origin():
    assert embed((0, 0), SQ, 0.3) == (0.0, 0.0)
    assert embed((0, 0), HEX, 0.3) == (0.0, 0.0)


def test_turn_angle_square():
    east, north = 0, 6
    assert turn_angle(east, north, SQ) == pytest.approx(math.pi / 2)
    assert turn_angle(east, east, SQ) == 0.0
    with pytest.raises(ValueError):
        turn_angle(east, reverse_direction(east), SQ)


def test_turn_angle_hex_no_straight():
    # hexagonal turns are +-pi/3; straight ahead is not a lattice move
    d = direction_between((0, 0), (1, 0), HEX)
    nxt = [direction_between((1, 0), t, HEX)
           for t in neighbors((1, 0), HEX) if t != (0, 0)]
    turns = sorted(turn_angle(d, t, HEX) for t in nxt)
    assert turns == pytest.approx([-math.pi / 3, math.pi / 3])


def test_hexagon_loop_turn_sum():
    ring = hex_face_sites((0, 0))
    total = 0
    m = len(ring)
    for i in range(m):
        a, b, c = ring[i], ring[(i + 1) % m], ring[(i + 2) % m]
        d1 = direction_between(a, b, HEX)
        d2 = direction_between(b, c, HEX)
        total += signed_turn_units(d1, d2)
    assert abs(total) == ANGLE_UNITS  # +-2 pi


def _all_simple_loops(kind, max_len):
    """Closed self-avoiding lattice loops from the origin, up to max_len."""
    loops = []

    def rec(path):
        tip = path[-1]
        for t in neighbors(tip, kind):
            if t == path[0] and len(path) >= 3:
                loops.append(path + [t])
            if t in path or len(path) > max_len - 1:
                continue
            rec(path + [t])

    rec([(0, 0)])
    return loops


@pytest.mark.parametrize("kind,max_len", [(SQ, 10), (HEX, 10)])
def test_all_simple_loops_turn_sum(kind, max_len):
    loops = _all_simple_loops(kind, max_len)
    assert loops, "no loops found"
    for loop in loops:
        total = 0
        m = len(loop) - 1
        for i in range(m):
            a = loop[i]
            b = loop[(i + 1) % m]
            c = loop[(i + 2) % m]
            d1 = direction_between(a, b, kind)
            d2 = direction_between(b, c, kind)
            total += signed_turn_units(d1, d2)
        assert abs(total) == ANGLE_UNITS, f"loop {loop} sums to {total}"


def test_square_embed_rotation_equivariance():
    # rotating coordinates by the 90-degree map rotates embeddings by pi/2
    for s in [(2, 3), (-1, 4), (5, -2)]:
        rx, ry = -s[1], s[0]
        px, py = embed(s, SQ, 1.0)
        qx, qy = embed((rx, ry), SQ, 1.0)
        assert (qx, qy) == pytest.approx((-py, px))


def _hex_rot120(s):
    x, y = s
    if parity(s) == 0:
        return (-(x + 3 * y) // 2, (x - y) // 2)
    return (-(x + 3 * y - 1) // 2, (x - y + 1) // 2)


def test_hex_embed_rotation_equivariance():
    c, s_ = math.cos(2 * math.pi / 3), math.sin(2 * math.pi / 3)
    for site in product(range(-6, 7), range(-6, 7)):
        px, py = embed(site, HEX, 1.0)
        qx, qy = embed(_hex_rot120(site), HEX, 1.0)
        assert qx == pytest.approx(c * px - s_ * py, abs=1e-12)
        assert qy == pytest.approx(s_ * px + c * py, abs=1e-12)


def test_step_directions_match_neighbors():
    for kind in (SQ, HEX):
        for s in [(0, 0), (1, 0), (2, -1)]:
            nbrs = neighbors(s, kind)
            dirs = step_directions(s, kind)
            assert len(nbrs) == len(dirs)
            for t, d in zip(nbrs, dirs):
                assert direction_between(s, t, kind) == d


def test_hex_face_helpers():
    faces = hex_face_sites((0, 0))
    assert len(faces) == 6
    # every consecutive pair is an edge whose flanking faces include (0,0)
    for a, b in zip(faces, faces[1:] + faces[:1]):
        assert (0, 0) in hex_edge_faces(a, b)
    center = hex_face_center((0, 0))
    assert hex_face_of_center(center) == (0, 0)
    with pytest.raises(ValueError):
        hex_face_center((1, 0))  # odd parity has no face below it


def test_edge_faces_unique_pair():
    f1, f2 = hex_edge_faces((0, 0), (0, 1))
    assert f1 != f2
    for f in (f1, f2):
        sites = hex_face_sites(f)
        assert (0, 0) in sites and (0, 1) in sites
