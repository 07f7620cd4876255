"""Continuum domains, exit angles and hull statistics.

The four study domains, all with distance exactly 1 from the origin to the
boundary:

    D1   off-centre disc  {|z - 1| < 2}
    D2   horizontal strip {-1 < Im z < 2}
    D3   equilateral triangle with vertices (2, 0), (-1, +-sqrt(3))
    disc unit disc        {|z| < 1}

A DomainSpec carries a rotation angle; membership and exit angles are
always evaluated in the unrotated frame (rotate the point back).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

SQRT3 = math.sqrt(3.0)
TWO_PI = 2.0 * math.pi


class DomainKind(Enum):
    UNIT_DISC = "disc"
    OFF_CENTER_DISC = "d1"
    STRIP = "d2"
    TRIANGLE = "d3"


@dataclass(frozen=True)
class DomainSpec:
    kind: DomainKind
    rotation: float = 0.0


@dataclass(frozen=True)
class ExitRecord:
    exit_point: tuple[float, float]
    theta: float


@dataclass(frozen=True)
class HullStats:
    X: float
    Y: float
    Z: float


def _contains_unrotated(kind: DomainKind, x: float, y: float) -> bool:
    if kind is DomainKind.UNIT_DISC:
        return x * x + y * y < 1.0
    if kind is DomainKind.OFF_CENTER_DISC:
        return (x - 1.0) ** 2 + y * y < 4.0
    if kind is DomainKind.STRIP:
        return -1.0 < y < 2.0
    return (x > -1.0 and SQRT3 * x + 3.0 * y < 2.0 * SQRT3
            and SQRT3 * x - 3.0 * y < 2.0 * SQRT3)


def contains(d: DomainSpec, p) -> bool:
    """Strict interior test for the rotated domain."""
    x, y = p
    c = math.cos(d.rotation)
    s = math.sin(d.rotation)
    return _contains_unrotated(d.kind, c * x + s * y, c * y - s * x)


def boundary_distance(kind: DomainKind, p) -> float:
    """Distance from an interior point to the domain boundary."""
    x, y = p
    if kind is DomainKind.UNIT_DISC:
        return 1.0 - math.hypot(x, y)
    if kind is DomainKind.OFF_CENTER_DISC:
        return 2.0 - math.hypot(x - 1.0, y)
    if kind is DomainKind.STRIP:
        return min(y + 1.0, 2.0 - y)
    return min(x + 1.0,
               (2.0 * SQRT3 - SQRT3 * x - 3.0 * y) / (2.0 * SQRT3),
               (2.0 * SQRT3 - SQRT3 * x + 3.0 * y) / (2.0 * SQRT3))


def exit_angle(e, d: DomainSpec) -> float:
    """Polar angle of an exit point, mapped to the unrotated frame,
    in [0, 2pi)."""
    th = math.atan2(e[1], e[0]) - d.rotation
    return th % TWO_PI


def fold_angle(theta: float) -> float:
    """Reduce an angle by the square lattice's rotation and reflection
    symmetries into [0, pi/4]."""
    t = theta % (0.5 * math.pi)
    if t > 0.25 * math.pi:
        t = 0.5 * math.pi - t
    return t


def boundary_subset_index(theta: float) -> int:
    """Index in 0..5 of the equal-length subinterval of [0, pi/4] holding
    fold_angle(theta); the right endpoint pi/4 belongs to subset 5."""
    k = int(fold_angle(theta) / (math.pi / 24.0))
    return 5 if k > 5 else k


def hull_stats(path_points, exit_theta: float) -> HullStats:
    """Extreme-value statistics of a unit-disc walk rotated so its exit
    point lands at angle 0 (the boundary point 1).

    X = max(-Re), Y = max(Im), Z = max |w - 1| over all path vertices
    (exit vertex included).
    """
    pts = np.asarray(path_points, dtype=float)
    c = math.cos(exit_theta)
    s = math.sin(exit_theta)
    rx = c * pts[:, 0] + s * pts[:, 1]
    ry = c * pts[:, 1] - s * pts[:, 0]
    X = float(np.max(-rx))
    Y = float(np.max(ry))
    Z = float(np.sqrt(np.max((rx - 1.0) ** 2 + ry ** 2)))
    return HullStats(X=X, Y=Y, Z=Z)
