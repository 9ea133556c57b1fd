"""Integer quadratic lattices given by a Gram matrix.

Every routine works on Python ints (or Fractions where elimination over Q
is needed) so there is no overflow and no rounding anywhere.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import NamedTuple, Sequence

from . import intmat
from .errors import ContractViolation, InputFormatError, UnsupportedRank

IntVector = Sequence[int]


class Signature(NamedTuple):
    positive: int
    null: int
    negative: int


@dataclass(frozen=True)
class GramLattice:
    """Free abelian group with an integral symmetric bilinear form."""

    gram: tuple[tuple[int, ...], ...]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.gram)
        object.__setattr__(self, "gram", rows)
        n = len(rows)
        for i, r in enumerate(rows):
            if len(r) != n:
                raise InputFormatError(
                    f"gram row {i} has length {len(r)}, expected {n} (matrix must be square)")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise InputFormatError(
                        f"gram is not symmetric: entry ({i},{j}) = {rows[i][j]} "
                        f"but ({j},{i}) = {rows[j][i]}")

    @classmethod
    def from_rows(cls, rows, name: str | None = None) -> "GramLattice":
        if not isinstance(rows, (list, tuple)) or any(not isinstance(r, (list, tuple)) for r in rows):
            raise InputFormatError("gram must be a list of rows")
        for i, r in enumerate(rows):
            for j, x in enumerate(r):
                if isinstance(x, bool) or not isinstance(x, int):
                    raise InputFormatError(f"gram entry ({i},{j}) = {x!r} is not an integer")
        return cls(tuple(tuple(r) for r in rows), name)

    @classmethod
    def diagonal(cls, *entries: int, name: str | None = None) -> "GramLattice":
        n = len(entries)
        return cls(tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n)), name)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def abs_discriminant(self) -> int:
        return abs(discriminant(self))

    def to_json(self) -> dict:
        out: dict = {}
        if self.name is not None:
            out["name"] = self.name
        out["gram"] = [list(r) for r in self.gram]
        return out

    def digest(self) -> str:
        """Short stable hash of the Gram matrix (used to tag certificates)."""
        blob = json.dumps([list(r) for r in self.gram], separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


def hyperbolic(n: int = 1) -> GramLattice:
    """U(n): rank 2 with Gram [[0, n], [n, 0]]."""
    return GramLattice(((0, n), (n, 0)), "U" if n == 1 else f"U({n})")


@dataclass(frozen=True)
class SublatticeEmbedding:
    ambient: GramLattice
    basis: tuple[tuple[int, ...], ...]
    induced_gram: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def lattice(self) -> GramLattice:
        return GramLattice(self.induced_gram)


def _check_vec(L: GramLattice, x: IntVector, what: str = "vector") -> None:
    if len(x) != L.rank:
        raise ContractViolation(f"{what} {list(x)} has length {len(x)}, lattice rank is {L.rank}")


def eval_form(L: GramLattice, x: IntVector, y: IntVector) -> int:
    _check_vec(L, x)
    _check_vec(L, y)
    g = L.gram
    return sum(x[i] * sum(g[i][j] * y[j] for j in range(len(y)) if y[j]) for i in range(len(x)) if x[i])


def pairing_row(L: GramLattice, x: IntVector) -> list[int]:
    """The row vector x^T G, i.e. the functional q(x, -)."""
    _check_vec(L, x)
    n = L.rank
    return [sum(x[i] * L.gram[i][j] for i in range(n)) for j in range(n)]


def gram_of(L: GramLattice, rows: Sequence[IntVector]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(eval_form(L, a, b) for b in rows) for a in rows)


def signature(L: GramLattice) -> Signature:
    """Inertia of the form by symmetric Gaussian elimination over Q.

    A zero pivot is repaired by a congruence: either swap in a row with a
    nonzero diagonal entry, or add row/column j to i when a[i][j] != 0 (which
    makes the new diagonal entry 2 a[i][j] != 0).  If the remaining block is
    identically zero every leftover direction is null.
    """
    a = [[Fraction(x) for x in r] for r in L.gram]
    n = len(a)
    pos = neg = 0
    k = 0
    while k < n:
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if j is not None:
                a[k], a[j] = a[j], a[k]
                for r in a:
                    r[k], r[j] = r[j], r[k]
            else:
                j = next((j for i in range(k, n) for j in range(i + 1, n) if a[i][j] != 0), None)
                if j is None:
                    break
                i = next(i for i in range(k, n) if a[i][j] != 0 and i != j)
                # move i to slot k, then e_k <- e_k + e_j
                a[k], a[i] = a[i], a[k]
                for r in a:
                    r[k], r[i] = r[i], r[k]
                a[k] = [x + y for x, y in zip(a[k], a[j])]
                for r in a:
                    r[k] += r[j]
        p = a[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            if a[i][k]:
                f = a[i][k] / p
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
        for i in range(k + 1, n):
            a[k][i] = Fraction(0)
        k += 1
    return Signature(pos, n - pos - neg, neg)


def discriminant(L: GramLattice) -> int:
    """Signed determinant of the Gram matrix."""
    return intmat.det(L.gram)


def is_nondegenerate(L: GramLattice) -> bool:
    return discriminant(L) != 0


def is_primitive_vector(L: GramLattice, x: IntVector) -> bool:
    _check_vec(L, x)
    if not any(x):
        raise ContractViolation("is_primitive_vector: zero vector")
    return intmat.content(x) == 1


def divisibility(L: GramLattice, u: IntVector) -> int:
    """gcd of q(u, w) over the lattice; 0 iff u is in the radical."""
    if not any(u):
        _check_vec(L, u)
        raise ContractViolation("divisibility: zero vector")
    return intmat.content(pairing_row(L, u))


def value_divisor(L: GramLattice) -> int:
    """Largest d with d | q(x, x) for every x in L."""
    g = L.gram
    d = 0
    for i in range(L.rank):
        d = gcd(d, g[i][i])
        for j in range(i + 1, L.rank):
            d = gcd(d, 2 * g[i][j])
    return d


def is_even(L: GramLattice) -> bool:
    return value_divisor(L) % 2 == 0


def direct_sum(*lattices: GramLattice, name: str | None = None) -> GramLattice:
    n = sum(L.rank for L in lattices)
    rows = [[0] * n for _ in range(n)]
    off = 0
    for L in lattices:
        for i, r in enumerate(L.gram):
            rows[off + i][off:off + L.rank] = r
        off += L.rank
    return GramLattice(tuple(tuple(r) for r in rows), name)


def embedding(L: GramLattice, rows: Sequence[IntVector]) -> SublatticeEmbedding:
    basis = tuple(tuple(r) for r in rows)
    return SublatticeEmbedding(L, basis, gram_of(L, basis))


def saturate(L: GramLattice, S: Sequence[IntVector]) -> SublatticeEmbedding:
    """Primitive closure span_Q(S) ∩ L, basis in Hermite normal form.

    Computed as the integer kernel of the integer kernel: the rational span
    of S is cut out by the linear forms vanishing on S, and integer kernels
    are automatically saturated.
    """
    for v in S:
        _check_vec(L, v)
    if S and intmat.rank(S) != len(S):
        raise ContractViolation(f"saturate: input vectors are linearly dependent: {[list(v) for v in S]}")
    if not S:
        return embedding(L, [])
    ann = intmat.integer_kernel(S, L.rank)
    basis = intmat.integer_kernel(ann, L.rank) if ann else intmat.identity(L.rank)
    return embedding(L, intmat.hnf(basis))


def saturation_index(L: GramLattice, S: Sequence[IntVector]) -> int:
    """Index of span_Z(S) in its primitive closure.

    Equal to the product of the invariant factors of the matrix S after
    dividing out the saturation; we get it as |det C| where S = C * B.
    """
    sat = saturate(L, S)
    coeffs = []
    for v in S:
        c = intmat.solve_rational(sat.basis, v)
        assert c is not None and all(x.denominator == 1 for x in c)
        coeffs.append([int(x) for x in c])
    return abs(intmat.det(coeffs))


def quotient_isotropic(L: GramLattice, u: IntVector) -> GramLattice:
    """W = u^perp / <u> with the induced form, for primitive isotropic u."""
    _check_vec(L, u)
    if not any(u) or intmat.content(u) != 1:
        raise ContractViolation(f"quotient_isotropic: {list(u)} is not primitive")
    if eval_form(L, u, u) != 0:
        raise ContractViolation(f"quotient_isotropic: {list(u)} is not isotropic (q = {eval_form(L, u, u)})")
    row = pairing_row(L, u)
    perp = intmat.integer_kernel([row], L.rank) if any(row) else intmat.identity(L.rank)
    coords = intmat.solve_rational(perp, u)
    c = [int(x) for x in coords]
    # u is primitive in L, hence in the saturated u^perp: c is primitive
    change = intmat.complete_to_basis(c)
    rest = intmat.matmul(change[1:], perp)
    return GramLattice(gram_of(L, rest))


def isotropic_directions_rank2(gram: Sequence[Sequence[int]]) -> list[list[int]] | None:
    """Primitive rational isotropic vectors of a nondegenerate binary form.

    Returns the (one or two) canonical-sign rays, or None when the form has
    no rational isotropic direction.
    """
    a, b, c = gram[0][0], gram[0][1], gram[1][1]
    disc = b * b - a * c
    if disc < 0:
        return None
    s = isqrt(disc)
    if s * s != disc:
        return None
    if a == 0 and c == 0:
        rays = [[1, 0], [0, 1]] if b else None
        return rays
    if a == 0:
        # q(x, y) = y (2 b x + c y)
        rays = [[1, 0], [c, -2 * b]]
    else:
        # roots of a t^2 + 2 b t + c with t = x / y
        rays = [[-b + s, a], [-b - s, a]]
    out = []
    for r in rays:
        if not any(r):
            continue
        r = intmat.canonical_sign(intmat.primitive_part(r))
        if r not in out:
            out.append(r)
    return sorted(out)


def un_basis(L: GramLattice) -> tuple[int, list[list[int]]] | None:
    """Find N and a basis change T with T G T^t = [[0, N], [N, 0]].

    Pick a primitive isotropic x, complete it to a basis (x, z) with Gram
    [[0, a], [a, c]].  Replacing z by z + k x shifts c by 2 k a, so L is
    U(|a|) exactly when 2a divides c.  Any isotropic ray may be used: in
    U(N) every primitive isotropic vector is a hyperbolic basis vector.
    """
    if L.rank != 2:
        raise UnsupportedRank(f"un_recognize: rank {L.rank} lattice, rank 2 required")
    if discriminant(L) == 0:
        return None
    rays = isotropic_directions_rank2(L.gram)
    if not rays:
        return None
    x = rays[0]
    change = intmat.complete_to_basis(x)
    z = change[1]
    a = eval_form(L, x, z)
    c = eval_form(L, z, z)
    if c % (2 * a):
        return None
    k = c // (2 * a)
    z = [zi - k * xi for zi, xi in zip(z, x)]
    if a < 0:
        a = -a
        z = [-zi for zi in z]
    return a, [list(x), z]


def un_recognize(L: GramLattice) -> int | None:
    found = un_basis(L)
    return None if found is None else found[0]


def parse_lattice(obj, name: str | None = None) -> GramLattice:
    """Build a lattice from the JSON format ``{"name": ..., "gram": [[...]]}``.

    A bare list of rows is accepted too.
    """
    if isinstance(obj, dict):
        if "gram" not in obj:
            raise InputFormatError("lattice JSON object has no 'gram' field")
        name = obj.get("name", name)
        rows = obj["gram"]
    else:
        rows = obj
    return GramLattice.from_rows(rows, name)
