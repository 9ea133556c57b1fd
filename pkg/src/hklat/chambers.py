"""Walls and chambers of the positive cone of a rank-2 hyperbolic lattice.

Rays are compared by the sign of a 2x2 determinant after orienting every
direction into the positive component; with irrational boundary rays that
sign is decided by integer arithmetic on a + b*sqrt(d).
"""
from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from typing import Iterable

from . import intmat
from .errors import ContractViolation, UnsupportedRank
from .isotropy import graded_box
from .lattice import GramLattice, eval_form, pairing_row, signature, un_basis, value_divisor
from .surd import QuadSurd, SurdRay, squarefree_split


@dataclass(frozen=True)
class MbmSpec:
    """Admissible squares of MBM candidates: an explicit set, or all of [-C, -1]."""

    squares: frozenset[int] | None = None
    bound: int | None = None

    def __post_init__(self):
        if (self.squares is None) == (self.bound is None):
            raise ContractViolation("MbmSpec needs exactly one of squares or bound")
        if self.squares is not None:
            object.__setattr__(self, "squares", frozenset(int(s) for s in self.squares))
            if not self.squares or any(s >= 0 for s in self.squares):
                raise ContractViolation(f"MBM squares must be negative, got {sorted(self.squares)}")
        elif self.bound <= 0:
            raise ContractViolation(f"MBM bound must be positive, got {self.bound}")

    @classmethod
    def of_squares(cls, squares: Iterable[int]) -> "MbmSpec":
        return cls(squares=frozenset(squares))

    @classmethod
    def of_bound(cls, bound: int) -> "MbmSpec":
        return cls(bound=bound)

    def admits(self, s: int) -> bool:
        if self.squares is not None:
            return s in self.squares
        return -self.bound <= s <= -1

    @property
    def max_abs(self) -> int:
        return self.bound if self.bound is not None else max(-s for s in self.squares)

    def admissible(self) -> list[int]:
        if self.squares is not None:
            return sorted(self.squares)
        return list(range(-self.bound, 0))

    def to_json(self) -> dict:
        if self.squares is not None:
            return {"squares": sorted(self.squares)}
        return {"bound": self.bound}


def divisor_certifies(d: int, spec: MbmSpec) -> bool:
    """True when every admissible square is smaller in size than d.

    Since d divides q(x, x) for all x, a nonzero square has |q| >= d.
    """
    return d > spec.max_abs


def divisor_excludes(d: int, spec: MbmSpec) -> bool:
    """True when d divides no admissible square, so none is represented."""
    if d == 0:
        return True
    return all(s % d for s in spec.admissible())


def _require_plane(P: GramLattice, op: str) -> None:
    if P.rank != 2:
        raise UnsupportedRank(f"{op}: rank {P.rank} lattice, rank 2 required")
    sig = signature(P)
    if tuple(sig) != (1, 0, 1):
        raise ContractViolation(f"{op}: signature {tuple(sig)}, (1,0,1) required")


def positive_vector(P: GramLattice) -> tuple[int, int]:
    """Some integer vector with positive square."""
    (a, b), (_, c) = P.gram
    if a > 0:
        return (1, 0)
    if c > 0:
        return (0, 1)
    if c < 0:
        # maximum of the quadratic in the slope: q(c, -b) = -c (b^2 - ac) > 0
        return (-c, b)
    sb = 1 if b > 0 else -1
    return (1, sb * (1 - a))


def _q_surd(P: GramLattice, v, h) -> QuadSurd:
    row = pairing_row(P, h)
    return v[0] * row[0] + v[1] * row[1]


def _det(v, w):
    return v[0] * w[1] - v[1] * w[0]


def _oriented(P: GramLattice, ray: SurdRay, h):
    x, y = ray.vector()
    s = _q_surd(P, (x, y), h).sign()
    if s == 0:
        raise ContractViolation(f"ray {ray} is orthogonal to a positive vector")
    return (x, y) if s > 0 else (-x, -y)


def positive_cone_boundary(P: GramLattice) -> tuple[SurdRay, SurdRay]:
    """The two isotropic rays bounding the positive cone, in arc order."""
    _require_plane(P, "positive_cone_boundary")
    (a, b), (_, c) = P.gram
    if c != 0:
        s, d = squarefree_split(b * b - a * c)
        rays = [SurdRay.from_slope(QuadSurd(-b, s, d, c)), SurdRay.from_slope(QuadSurd(-b, -s, d, c))]
    else:
        rays = [SurdRay.from_slope(QuadSurd.rational(-a, 2 * b)), SurdRay.infinite()]
    h = positive_vector(P)
    o = [_oriented(P, r, h) for r in rays]
    if _det(o[0], o[1]).sign() < 0:
        rays.reverse()
    return rays[0], rays[1]


@dataclass(frozen=True)
class Wall:
    alpha: tuple[int, int]
    square: int
    ray: SurdRay
    direction: tuple[int, int]

    def to_json(self) -> dict:
        return {"alpha": list(self.alpha), "square": self.square, "direction": list(self.direction),
                "ray": self.ray.to_json()}


def _wall(P: GramLattice, alpha, h) -> Wall:
    r = pairing_row(P, alpha)
    w = intmat.primitive_part([-r[1], r[0]])
    if eval_form(P, w, h) < 0:
        w = [-w[0], -w[1]]
    return Wall(tuple(alpha), eval_form(P, alpha, alpha), SurdRay.from_vector(w), tuple(w))


def _arc_sorted(walls: list[Wall]) -> list[Wall]:
    def cmp(u: Wall, v: Wall) -> int:
        return -_det(u.direction, v.direction) or (u.alpha > v.alpha) - (u.alpha < v.alpha)
    return sorted(walls, key=functools.cmp_to_key(cmp))


def candidate_walls(P: GramLattice, spec: MbmSpec, bound: int) -> list[Wall]:
    """Walls alpha^perp for primitive alpha in the box with an admissible square."""
    _require_plane(P, "candidate_walls")
    h = positive_vector(P)
    walls = [_wall(P, a, h) for a in graded_box(2, bound) if spec.admits(eval_form(P, a, a))]
    return _arc_sorted(walls)


@dataclass(frozen=True)
class ChamberDecomposition:
    boundary: tuple[SurdRay, SurdRay]
    walls: tuple[Wall, ...]
    chambers: tuple[tuple[SurdRay, SurdRay], ...]
    truncated: bool

    def to_json(self) -> dict:
        return {
            "boundary": [r.to_json() for r in self.boundary],
            "walls": [w.to_json() for w in self.walls],
            "chambers": [[lo.to_json(), hi.to_json()] for lo, hi in self.chambers],
            "wall_count": len(self.walls),
            "chamber_count": len(self.chambers),
            "truncated": self.truncated,
        }


def chambers_rank2(P: GramLattice, spec: MbmSpec, bound: int) -> ChamberDecomposition:
    lo, hi = positive_cone_boundary(P)
    walls = candidate_walls(P, spec, bound)
    cuts = [lo] + [w.ray for w in walls] + [hi]
    chambers = tuple(zip(cuts[:-1], cuts[1:]))
    complete = divisor_excludes(value_divisor(P), spec)
    return ChamberDecomposition((lo, hi), tuple(walls), chambers, not complete)


def ray_inside_arc(P: GramLattice, ray: SurdRay) -> bool:
    """Whether the ray lies strictly between the two boundary rays."""
    lo, hi = positive_cone_boundary(P)
    h = positive_vector(P)
    try:
        v = _oriented(P, ray, h)
    except ContractViolation:
        return False
    a, b = _oriented(P, lo, h), _oriented(P, hi, h)
    return _det(a, v).sign() > 0 and _det(v, b).sign() > 0


class RoundStatus(enum.Enum):
    CERTIFIED_ROUND = "CertifiedRound"
    WALL_FOUND = "WallFound"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class RoundVerdict:
    status: RoundStatus
    divisor: int
    alpha: tuple[int, ...] | None = None

    def to_json(self) -> dict:
        out = {"status": self.status.value, "divisor": self.divisor}
        if self.alpha is not None:
            out["alpha"] = list(self.alpha)
        return out


def _simplicity(alpha) -> tuple:
    # smaller max-norm first, then smaller |coordinates|, positive before negative
    return (max(map(abs, alpha)), tuple((abs(c), c < 0) for c in alpha))


def is_round(P: GramLattice, spec: MbmSpec, bound: int) -> RoundVerdict:
    _require_plane(P, "is_round")
    d = value_divisor(P)
    if divisor_certifies(d, spec):
        return RoundVerdict(RoundStatus.CERTIFIED_ROUND, d)
    walls = candidate_walls(P, spec, bound)
    if walls:
        alpha = min((w.alpha for w in walls), key=_simplicity)
        return RoundVerdict(RoundStatus.WALL_FOUND, d, alpha)
    return RoundVerdict(RoundStatus.UNKNOWN, d)


def nef_isotropic_generators(P: GramLattice) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """The two primitive isotropic generators of P when P is some U(N)."""
    if P.rank != 2:
        raise UnsupportedRank(f"nef_isotropic_generators: rank {P.rank} lattice, rank 2 required")
    found = un_basis(P)
    if found is None:
        return None
    _, (x, z) = found
    return tuple(intmat.canonical_sign(x)), tuple(intmat.canonical_sign(z))
