import math

import numpy as np
import pytest

from sksaw.geometry import (DomainKind, DomainSpec, boundary_distance,
                            boundary_subset_index, contains, exit_angle,
                            fold_angle, hull_stats)

ALL = [DomainKind.UNIT_DISC, DomainKind.OFF_CENTER_DISC, DomainKind.STRIP,
       DomainKind.TRIANGLE]


def test_origin_interior_to_all_domains():
    for kind in ALL:
        assert contains(DomainSpec(kind), (0.0, 0.0))


def test_strip_geometry():
    d = DomainSpec(DomainKind.STRIP)
    assert contains(d, (1000.0, 0.0))
    assert not contains(d, (0.0, 2.1))
    assert not contains(d, (0.0, -1.0))


def test_rotation_definition():
    rng = np.random.default_rng(3)
    for kind in ALL:
        for _ in range(50):
            a = rng.uniform(0, 2 * math.pi)
            p = rng.uniform(-2.5, 2.5, size=2)
            c, s = math.cos(-a), math.sin(-a)
            q = (c * p[0] - s * p[1], s * p[0] + c * p[1])
            assert contains(DomainSpec(kind, a), tuple(p)) == \
                contains(DomainSpec(kind), q)


def test_inradius_exactly_one():
    # distance from the origin to each boundary is 1 (checked numerically)
    for kind in ALL:
        best = math.inf
        for t in np.linspace(0, 2 * math.pi, 20000, endpoint=False):
            # march until the boundary along each ray
            lo, hi = 0.0, 4.0
            d = DomainSpec(kind)
            if kind is DomainKind.STRIP and abs(math.sin(t)) < 1e-3:
                continue
            for _ in range(60):
                mid = 0.5 * (lo + hi)
                if contains(d, (mid * math.cos(t), mid * math.sin(t))):
                    lo = mid
                else:
                    hi = mid
            best = min(best, lo)
        assert best == pytest.approx(1.0, abs=1e-9)


def test_boundary_distance_matches_inradius():
    for kind in ALL:
        assert boundary_distance(kind, (0.0, 0.0)) == pytest.approx(1.0, abs=1e-12)


def test_exit_angle_examples():
    d = DomainSpec(DomainKind.UNIT_DISC)
    assert exit_angle((1.001, 0.0), d) == 0.0
    assert exit_angle((0.0, -1.001), d) == pytest.approx(3 * math.pi / 2)
    rng = np.random.default_rng(4)
    for _ in range(50):
        a = rng.uniform(0, 2 * math.pi)
        th = rng.uniform(0, 2 * math.pi)
        e = (1.01 * math.cos(th), 1.01 * math.sin(th))
        er = (1.01 * math.cos(th + a), 1.01 * math.sin(th + a))
        assert exit_angle(er, DomainSpec(DomainKind.UNIT_DISC, a)) == \
            pytest.approx(exit_angle(e, d), abs=1e-9)


def test_fold_angle():
    assert fold_angle(math.pi / 3) == pytest.approx(math.pi / 6)
    assert fold_angle(math.pi / 4) == pytest.approx(math.pi / 4)
    assert fold_angle(7 * math.pi / 4) == pytest.approx(math.pi / 4)
    ths = np.random.default_rng(5).uniform(0, 2 * math.pi, 200)
    for t in ths:
        f = fold_angle(t)
        assert 0 <= f <= math.pi / 4 + 1e-15
        assert fold_angle(f) == pytest.approx(f)   # idempotent


def test_boundary_subset_index():
    assert boundary_subset_index(0.0) == 0
    assert boundary_subset_index(math.pi / 4) == 5
    assert boundary_subset_index(math.pi / 3) == 4
    for t in np.linspace(0, 2 * math.pi, 500, endpoint=False):
        assert 0 <= boundary_subset_index(t) <= 5


def test_hull_stats_straight_path():
    path = [(x / 10.0, 0.0) for x in range(11)]
    h = hull_stats(path, 0.0)
    assert h.X == 0.0
    assert h.Y == 0.0
    assert h.Z == pytest.approx(1.0)


def test_hull_stats_rotation_invariance():
    rng = np.random.default_rng(6)
    pts = np.cumsum(rng.normal(size=(50, 2)) * 0.05, axis=0)
    pts[0] = (0.0, 0.0)
    th = 0.7
    h0 = hull_stats(pts, th)
    a = 1.234
    c, s = math.cos(a), math.sin(a)
    rot = pts @ np.array([[c, s], [-s, c]])   # rotate points by +a
    h1 = hull_stats(rot, th + a)
    assert h1.X == pytest.approx(h0.X, abs=1e-12)
    assert h1.Y == pytest.approx(h0.Y, abs=1e-12)
    assert h1.Z == pytest.approx(h0.Z, abs=1e-12)


def test_hull_stats_bounds_on_samples():
    from sksaw.lattice import LatticeKind, embed
    from sksaw.walker import RandomStream, run_until_exit
    from sksaw.geometry import exit_angle, DomainSpec
    rng = RandomStream(11)
    d = DomainSpec(DomainKind.UNIT_DISC)
    for _ in range(25):
        w, rec = run_until_exit(LatticeKind.SQUARE, 0.05, rng)
        th = exit_angle(rec.exit_point, d)
        pts = [embed(s, LatticeKind.SQUARE, 0.05) for s in w.path]
        h = hull_stats(pts, th)
        assert 0.0 <= h.X < 1.0
        assert 0.0 <= h.Y < 1.0
        assert 1.0 <= h.Z < 2.0
