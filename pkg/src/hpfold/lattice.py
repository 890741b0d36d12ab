"""Geometry of the 2D triangular lattice in integer axial coordinates.

Directions are the integer codes 1..6 (counter-clockwise starting at
Right-Up). A point has exactly six neighbours, one unit step away in
each direction.
"""
from enum import IntEnum
from typing import NamedTuple


class Direction(IntEnum):
    RIGHT_UP = 1
    UP = 2
    LEFT_UP = 3
    LEFT_DOWN = 4
    DOWN = 5
    RIGHT_DOWN = 6

    @property
    def opposite(self) -> "Direction":
        return Direction((self.value + 2) % 6 + 1)

    def rotate(self, k: int) -> "Direction":
        """Rotate by ``k`` sixth-turns counter-clockwise."""
        return Direction((self.value - 1 + k) % 6 + 1)


class LatticePoint(NamedTuple):
    u: int
    v: int


# index 0 unused so that STEPS[code] works for code in 1..6
STEPS = (
    None,
    (1, 0),
    (0, 1),
    (-1, 1),
    (-1, 0),
    (0, -1),
    (1, -1),
)
STEP_SET = frozenset(STEPS[1:])

ORIGIN = LatticePoint(0, 0)


def opposite(d: int) -> int:
    return (d + 2) % 6 + 1


def step(p, d: int) -> LatticePoint:
    du, dv = STEPS[d]
    return LatticePoint(p[0] + du, p[1] + dv)


def neighbors(p) -> list:
    return [LatticePoint(p[0] + du, p[1] + dv) for du, dv in STEPS[1:]]


def are_adjacent(p, q) -> bool:
    return (q[0] - p[0], q[1] - p[1]) in STEP_SET


def direction_between(p, q) -> int:
    """Direction code taking ``p`` to the adjacent point ``q``."""
    delta = (q[0] - p[0], q[1] - p[1])
    for d in range(1, 7):
        if STEPS[d] == delta:
            return d
    raise ValueError(f"{tuple(p)} and {tuple(q)} are not adjacent")


def to_cartesian(p) -> tuple:
    """Drawing coordinates with a 60 degree basis and unit bond length."""
    return (p[0] + p[1] / 2.0, p[1] * 0.8660254037844386)
