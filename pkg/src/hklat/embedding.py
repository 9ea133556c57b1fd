"""Primitive hyperbolic planes U(N) with large N inside an indefinite lattice.

For an isotropic lattice of rank >= 4 such planes exist for every bound,
but only by a non-constructive argument; here we search.  In rank 3 they
need not exist: U + <-2> contains no primitive U(N) other than U itself,
so the search there ends with an exhausted budget.

Starting from a primitive isotropic u, every other rational point of the
quadric is the second intersection with a line through u, so the
candidates are y = 2 q(u,v) v - q(v,v) u for a deterministic stream of v.
Each candidate plane <u, y> is saturated and tested for being U(N).
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from math import gcd
from typing import Iterator

from . import intmat
from .errors import ContractViolation, UnsupportedRank
from .isotropy import SearchBudget, SearchStatus, find_isotropic
from .lattice import (
    GramLattice,
    IntVector,
    SublatticeEmbedding,
    discriminant,
    eval_form,
    pairing_row,
    saturate,
    saturation_index,
    signature,
    un_basis,
    value_divisor,
)


def second_intersection(L: GramLattice, u: IntVector, v: IntVector) -> list[int]:
    """Other isotropic point on the line through u in direction v (integral).

    q(u + t v) = 2 a t + b t^2 vanishes at t = -2a/b; clearing denominators
    gives y = 2a v - b u with q(y, y) = 0 and q(u, y) = 2 a^2.
    """
    if eval_form(L, u, u) != 0:
        raise ContractViolation(f"second_intersection: u = {list(u)} is not isotropic")
    a = eval_form(L, u, v)
    if a == 0:
        raise ContractViolation(f"second_intersection: q(u, v) = 0 for u = {list(u)}, v = {list(v)}")
    b = eval_form(L, v, v)
    return [2 * a * vi - b * ui for ui, vi in zip(u, v)]


@dataclass(frozen=True)
class UnWitness:
    """A primitive sublattice isomorphic to U(N), with what is needed to check it."""

    embedding: SublatticeEmbedding
    n_value: int
    basis_change: tuple[tuple[int, int], tuple[int, int]]
    hyperbolic_basis: tuple[tuple[int, ...], tuple[int, ...]]
    saturation_index: int
    span_index: int
    isotropic_seed: tuple[int, ...]
    direction: tuple[int, ...]

    @property
    def certificate(self) -> dict:
        return {"primitive": self.saturation_index == 1, "gram_check": self.gram_check()}

    def gram_check(self) -> bool:
        L = self.embedding.ambient
        x, z = self.hyperbolic_basis
        n = self.n_value
        return (eval_form(L, x, x), eval_form(L, x, z), eval_form(L, z, z)) == (0, n, 0)

    def to_json(self) -> dict:
        L = self.embedding.ambient
        return {
            "ambient": {"name": L.name, "hash": L.digest(), "rank": L.rank},
            "n": self.n_value,
            "basis": [list(r) for r in self.embedding.basis],
            "induced_gram": [list(r) for r in self.embedding.induced_gram],
            "basis_change": [list(r) for r in self.basis_change],
            "hyperbolic_basis": [list(r) for r in self.hyperbolic_basis],
            "saturation_index": self.saturation_index,
            "span_index": self.span_index,
            "isotropic_seed": list(self.isotropic_seed),
            "direction": list(self.direction),
            "certificate": self.certificate,
        }


class EmbedStatus(enum.Enum):
    WITNESS = "Witness"
    EXHAUSTED = "Exhausted"


@dataclass(frozen=True)
class EmbedResult:
    status: EmbedStatus
    witness: UnWitness | None
    candidates_tried: int
    reason: str = ""

    def to_json(self) -> dict:
        out = {"status": self.status.value, "candidates_tried": self.candidates_tried}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.reason:
            out["reason"] = self.reason
        return out


def _xgcd_vector(row: list[int]) -> list[int]:
    """Integer x with row . x = gcd(row)."""
    g, x = 0, [0] * len(row)
    for i, c in enumerate(row):
        if c == 0:
            continue
        # extended Euclid on (g, c)
        r0, r1, s0, s1, t0, t1 = g, c, 1, 0, 0, 1
        while r1:
            q = r0 // r1
            r0, r1 = r1, r0 - q * r1
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0 < 0:
            r0, s0, t0 = -r0, -s0, -t0
        x = [s0 * xi for xi in x]
        x[i] += t0
        g = r0
    return x


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    k = 1
    while k * k <= n:
        if n % k == 0:
            small.append(k)
            if k * k != n:
                large.append(n // k)
        k += 1
    return small + large[::-1]


def _quotient_vectors(k: int) -> Iterator[tuple[int, ...]]:
    """Every vector of Z^k exactly once: by max-norm, then support size,
    then support position, then values ordered 1, -1, 2, -2, ..."""
    yield (0,) * k
    for r in itertools.count(1):
        values = [s * x for x in range(1, r + 1) for s in (1, -1)]
        for size in range(1, k + 1):
            for support in itertools.combinations(range(k), size):
                for vals in itertools.product(values, repeat=size):
                    if max(map(abs, vals)) != r:
                        continue
                    w = [0] * k
                    for i, x in zip(support, vals):
                        w[i] = x
                    yield tuple(w)


def _directions(L: GramLattice, u: IntVector, a_bound: int) -> Iterator[tuple[list[int], int, int] | None]:
    """Deterministic stream of line directions v through u.

    Let d be the divisibility of u and p a vector with q(u, p) = d.  Every
    v with q(u, v) > 0 is m p + w with m >= 1 and w in u^perp, and only w
    modulo u matters, so w runs over representatives of W = u^perp / <u>.
    The second intersection is integral after dividing by 2 m d exactly when
    2 m d | q(v, v); for q(w, w) != 0 this forces m | q(w, w), leaving
    finitely many m per w.  Yields (v, q(u, v), q(v, v)), or None for a w
    that admits no m with m d > a_bound.
    """
    row = pairing_row(L, u)
    d = intmat.content(row)
    p = _xgcd_vector(row)
    prow = pairing_row(L, p)
    pp = sum(x * y for x, y in zip(prow, p))
    perp = intmat.integer_kernel([row], L.rank)
    coords = intmat.solve_rational(perp, u)
    change = intmat.complete_to_basis([int(c) for c in coords])
    reps = intmat.matmul(change[1:], perp)
    for c in _quotient_vectors(len(reps)):
        w = [sum(ci * r[j] for ci, r in zip(c, reps) if ci) for j in range(L.rank)]
        pw = sum(x * y for x, y in zip(prow, w))
        ww = eval_form(L, w, w)
        if ww:
            ms = [m for m in _divisors(ww)
                  if m * d > a_bound and (m * m * pp + 2 * m * pw + ww) % (2 * m * d) == 0]
        else:
            # 2 m d | m^2 q(p,p) + 2 m q(p,w)  <=>  2d | m q(p,p) + 2 q(p,w): a progression in m
            m0 = a_bound // d + 1
            ms = [m for m in range(m0, m0 + 6 * d) if (m * pp + 2 * pw) % (2 * d) == 0][:3]
        if not ms:
            yield None
        for m in ms:
            v = [m * pi + wi for pi, wi in zip(p, w)]
            yield v, m * d, m * m * pp + 2 * m * pw + ww


def _plane_index(u: IntVector, y: IntVector) -> int:
    """Index of <u, y> in its saturation: gcd of the 2x2 minors."""
    g = 0
    n = len(u)
    for i in range(n):
        for j in range(i + 1, n):
            g = gcd(g, u[i] * y[j] - u[j] * y[i])
            if g == 1:
                return 1
    return g


def _check_hypotheses(L: GramLattice, op: str) -> None:
    if L.rank < 3:
        raise UnsupportedRank(
            f"{op}: rank {L.rank} lattice; rank >= 3 is required (U itself has no primitive U(N) with N > 1)")
    if discriminant(L) == 0:
        raise ContractViolation(f"{op}: lattice is degenerate")
    sig = signature(L)
    if sig.positive == 0 or sig.negative == 0:
        raise ContractViolation(f"{op}: lattice is definite, signature {tuple(sig)}")


def witness_from_plane(L: GramLattice, u: IntVector, y: IntVector, v: IntVector = ()) -> UnWitness | None:
    """Saturate <u, y> and return a witness if it is some U(N)."""
    emb = saturate(L, [u, y])
    found = un_basis(emb.lattice())
    if found is None:
        return None
    n, change = found
    hyp = intmat.matmul(change, [list(r) for r in emb.basis])
    return UnWitness(
        embedding=emb,
        n_value=n,
        basis_change=tuple(tuple(r) for r in change),
        hyperbolic_basis=tuple(tuple(r) for r in hyp),
        saturation_index=saturation_index(L, emb.basis),
        span_index=saturation_index(L, [u, y]),
        isotropic_seed=tuple(u),
        direction=tuple(v),
    )


def embed_un(L: GramLattice, a_bound: int, budget: SearchBudget = SearchBudget()) -> EmbedResult:
    """Find a primitive U(N) in L with N > a_bound."""
    _check_hypotheses(L, "embed_un")
    if a_bound < 0:
        raise ContractViolation(f"embed_un: a_bound must be non-negative, got {a_bound}")
    iso = find_isotropic(L, budget)
    if iso.status is not SearchStatus.FOUND:
        return EmbedResult(EmbedStatus.EXHAUSTED, None, iso.candidates_tried,
                           "no isotropic vector found within the coefficient bound")
    u = list(iso.ray.rep)
    tried = 0
    for cand in _directions(L, u, a_bound):
        tried += 1
        if tried > budget.max_candidates:
            break
        if cand is None:
            continue
        v, a, b = cand
        y = [2 * a * vi - b * ui for ui, vi in zip(u, v)]
        c = intmat.content(y)
        # <u, y/c> has Gram [[0, P], [P, 0]] with P = 2a^2/c; a U(N) saturation has N = P / index
        pairing = 2 * a * a // c
        if pairing <= a_bound:
            continue
        y = [yi // c for yi in y]
        if pairing // _plane_index(u, y) <= a_bound:
            continue
        w = witness_from_plane(L, u, y, v)
        if w is not None and w.n_value > a_bound:
            return EmbedResult(EmbedStatus.WITNESS, w, tried)
    return EmbedResult(EmbedStatus.EXHAUSTED, None, min(tried, budget.max_candidates),
                       "candidate budget exhausted")


@dataclass(frozen=True)
class RoundPicardResult:
    status: EmbedStatus
    witness: UnWitness | None
    divisor: int | None
    mbm_bound: int
    candidates_tried: int
    reason: str = ""

    def to_json(self) -> dict:
        out = {"status": self.status.value, "mbm_bound": self.mbm_bound,
               "candidates_tried": self.candidates_tried}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
            out["divisor_certificate"] = {
                "value_divisor": self.divisor,
                "exceeds_mbm_bound": self.divisor > self.mbm_bound,
            }
        if self.reason:
            out["reason"] = self.reason
        return out


def round_picard_witness(L: GramLattice, mbm_bound: int,
                         budget: SearchBudget = SearchBudget()) -> RoundPicardResult:
    """A U(N) Picard lattice whose squares all avoid [-mbm_bound, -1].

    Every square in U(N) is a multiple of 2N, so 2N > mbm_bound leaves no
    room for an MBM class and the positive cone is the Kaehler cone.
    """
    if mbm_bound <= 0:
        raise ContractViolation(f"round_picard_witness: mbm_bound must be positive, got {mbm_bound}")
    res = embed_un(L, mbm_bound, budget)
    if res.witness is None:
        return RoundPicardResult(res.status, None, None, mbm_bound, res.candidates_tried, res.reason)
    d = value_divisor(res.witness.embedding.lattice())
    return RoundPicardResult(res.status, res.witness, d, mbm_bound, res.candidates_tried)
