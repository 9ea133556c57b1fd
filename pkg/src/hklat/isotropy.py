"""Primitive isotropic vectors, non-orthogonal isotropic pairs and their invariant."""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from math import isqrt
from typing import Iterator, Sequence

from . import intmat
from .errors import ContractViolation
from .lattice import (
    GramLattice,
    IntVector,
    discriminant,
    eval_form,
    isotropic_directions_rank2,
    saturate,
    signature,
    value_divisor,
)


@dataclass(frozen=True, order=True)
class IsotropicRay:
    rep: tuple[int, ...]

    @classmethod
    def of(cls, v: IntVector) -> "IsotropicRay":
        return cls(tuple(intmat.canonical_sign(intmat.primitive_part(v))))


@dataclass(frozen=True)
class IsotropicPair:
    first: IsotropicRay
    second: IsotropicRay
    invariant_n: int

    def sort_key(self):
        return (self.invariant_n, self.first.rep, self.second.rep)


@dataclass(frozen=True)
class SearchBudget:
    coefficient_bound: int = 10
    max_candidates: int = 10**6

    def __post_init__(self):
        if self.coefficient_bound <= 0 or self.max_candidates <= 0:
            raise ContractViolation(
                f"search budget must be positive, got coefficient_bound={self.coefficient_bound}, "
                f"max_candidates={self.max_candidates}")


class SearchStatus(enum.Enum):
    FOUND = "Found"
    PROVABLY_NONE = "ProvablyNone"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class IsotropicSearch:
    status: SearchStatus
    ray: IsotropicRay | None = None
    strategy: str | None = None
    candidates_tried: int = 0


def shell(n: int, r: int) -> Iterator[tuple[int, ...]]:
    """Canonical-sign vectors of max-norm exactly r, in lexicographic order."""
    if r == 0:
        return
    for v in itertools.product(range(-r, r + 1), repeat=n):
        if max(map(abs, v)) != r:
            continue
        first = next(c for c in v if c)
        if first > 0:
            yield v


def graded_box(n: int, bound: int) -> Iterator[tuple[int, ...]]:
    """Primitive canonical vectors with coordinates in [-bound, bound],
    ordered by max-norm and then lexicographically."""
    for r in range(1, bound + 1):
        for v in shell(n, r):
            if intmat.content(v) == 1:
                yield v


def _hyperbolic_pair_ray(L: GramLattice) -> tuple[IsotropicRay, str] | None:
    g = L.gram
    n = L.rank
    for i in range(n):
        if g[i][i] == 0:
            e = [0] * n
            e[i] = 1
            return IsotropicRay(tuple(e)), "zero-diagonal"
    for i in range(n):
        for j in range(i + 1, n):
            sub = ((g[i][i], g[i][j]), (g[j][i], g[j][j]))
            if sub[0][0] * sub[1][1] - sub[0][1] ** 2 == 0:
                continue
            rays = isotropic_directions_rank2(sub)
            if rays:
                v = [0] * n
                v[i], v[j] = rays[0]
                return IsotropicRay.of(v), "binary-subform"
    return None


def find_isotropic(L: GramLattice, budget: SearchBudget = SearchBudget()) -> IsotropicSearch:
    """Look for a primitive isotropic vector.

    Cheap structural checks run first (a zero diagonal entry, then any 2x2
    principal block whose binary form splits over Q), then an exhaustive
    scan of the coefficient box.  Nonexistence is only claimed for definite
    forms.
    """
    if discriminant(L) == 0:
        raise ContractViolation("find_isotropic: lattice is degenerate")
    sig = signature(L)
    if sig.positive == 0 or sig.negative == 0:
        return IsotropicSearch(SearchStatus.PROVABLY_NONE)
    hit = _hyperbolic_pair_ray(L)
    if hit is not None:
        return IsotropicSearch(SearchStatus.FOUND, hit[0], hit[1], 0)
    tried = 0
    for v in graded_box(L.rank, budget.coefficient_bound):
        tried += 1
        if eval_form(L, v, v) == 0:
            return IsotropicSearch(SearchStatus.FOUND, IsotropicRay(v), "box", tried)
        if tried >= budget.max_candidates:
            break
    return IsotropicSearch(SearchStatus.UNKNOWN, candidates_tried=tried)


def enumerate_primitive_isotropic(L: GramLattice, bound: int) -> list[IsotropicRay]:
    """All primitive isotropic rays inside the box [-bound, bound]^rank.

    The last coordinate is solved for instead of enumerated: with the
    other coordinates fixed, q is a quadratic in it.
    """
    n = L.rank
    if n == 0:
        return []
    g = L.gram
    found: set[tuple[int, ...]] = set()
    last = n - 1
    glast = g[last][last]

    def keep(vec):
        if any(vec) and intmat.content(vec) == 1:
            found.add(tuple(intmat.canonical_sign(vec)))

    for head in itertools.product(range(-bound, bound + 1), repeat=last):
        beta = sum(head[i] * g[i][last] for i in range(last))
        gamma = sum(head[i] * head[j] * g[i][j] for i in range(last) for j in range(last))
        if glast:
            disc = beta * beta - glast * gamma
            if disc < 0:
                continue
            s = isqrt(disc)
            if s * s != disc:
                continue
            for num in {-beta + s, -beta - s}:
                if num % glast == 0 and abs(num // glast) <= bound:
                    keep(head + (num // glast,))
        elif beta:
            if gamma % (2 * beta) == 0 and abs(gamma // (2 * beta)) <= bound:
                keep(head + (-gamma // (2 * beta),))
        elif gamma == 0:
            for t in range(-bound, bound + 1):
                keep(head + (t,))
    return [IsotropicRay(v) for v in sorted(found)]


def pair_invariant(L: GramLattice, x: IsotropicRay, y: IsotropicRay) -> int:
    n = eval_form(L, x.rep, y.rep)
    if n == 0:
        raise ContractViolation(f"pair_invariant: rays {list(x.rep)} and {list(y.rep)} are orthogonal")
    return abs(n)


def make_pair(L: GramLattice, x: IsotropicRay, y: IsotropicRay) -> IsotropicPair:
    if y < x:
        x, y = y, x
    return IsotropicPair(x, y, pair_invariant(L, x, y))


def _pairings(L: GramLattice, rays: Sequence[IsotropicRay]) -> Iterator[tuple[int, int, int]]:
    """Yield (i, j, q(r_i, r_j)) for i < j."""
    rows = [[sum(r.rep[a] * L.gram[a][b] for a in range(L.rank)) for b in range(L.rank)] for r in rays]
    for i, row in enumerate(rows):
        for j in range(i + 1, len(rays)):
            yield i, j, sum(c * d for c, d in zip(row, rays[j].rep))


def enumerate_isotropic_pairs(L: GramLattice, bound: int) -> list[IsotropicPair]:
    rays = enumerate_primitive_isotropic(L, bound)
    pairs = [IsotropicPair(rays[i], rays[j], abs(q)) for i, j, q in _pairings(L, rays) if q]
    pairs.sort(key=IsotropicPair.sort_key)
    return pairs


def distinct_invariants(L: GramLattice, bound: int) -> list[int]:
    rays = enumerate_primitive_isotropic(L, bound)
    return sorted({abs(q) for _, _, q in _pairings(L, rays) if q})


def pair_sublattice(L: GramLattice, pair: IsotropicPair):
    """Primitive closure of the span of a pair (the inverse of the S1 -> S2 map)."""
    return saturate(L, [pair.first.rep, pair.second.rep])


def isotropic_rays_of(emb) -> list[IsotropicRay]:
    """Isotropic rays of a rank-2 sublattice, mapped into ambient coordinates."""
    dirs = isotropic_directions_rank2(emb.induced_gram) or []
    out = []
    for c in dirs:
        v = [c[0] * a + c[1] * b for a, b in zip(*emb.basis)]
        out.append(IsotropicRay.of(v))
    return sorted(out)


def sublattice_buckets(L: GramLattice, bound: int, max_disc: int) -> dict[tuple[int, str], int]:
    """Bucket the saturated spans of isotropic pairs by (|disc|, parity).

    Both are isometry invariants, so the number of buckets bounds the
    number of orbits of these sublattices from below.
    """
    seen = set()
    buckets: dict[tuple[int, str], int] = {}
    for p in enumerate_isotropic_pairs(L, bound):
        emb = pair_sublattice(L, p)
        if emb.basis in seen:
            continue
        seen.add(emb.basis)
        d = abs(intmat.det(emb.induced_gram))
        if d > max_disc:
            continue
        key = (d, "even" if value_divisor(emb.lattice()) % 2 == 0 else "odd")
        buckets[key] = buckets.get(key, 0) + 1
    return dict(sorted(buckets.items()))
