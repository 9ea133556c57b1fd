"""Second-cohomology lattices of the known hyperkaehler deformation types."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ContractViolation
from .lattice import GramLattice, direct_sum, hyperbolic, signature

# Bourbaki numbering: chain 1-3-4-5-6-7-8 with node 2 attached to node 4
_E8_EDGES = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)]


def e8_negative() -> GramLattice:
    """E8(-1): the negative definite even unimodular lattice of rank 8."""
    g = [[-2 if i == j else 0 for j in range(8)] for i in range(8)]
    for i, j in _E8_EDGES:
        g[i][j] = g[j][i] = 1
    return GramLattice(tuple(tuple(r) for r in g), "E8(-1)")


def a2_negative() -> GramLattice:
    return GramLattice(((-2, 1), (1, -2)), "A2(-1)")


def rank_one(value: int) -> GramLattice:
    return GramLattice(((value,),), f"<{value}>")


@dataclass(frozen=True)
class CatalogEntry:
    key: str
    lattice: GramLattice
    b2: int
    mbm_bound_default: int | None
    notes: str
    n: int | None = None

    def to_json(self) -> dict:
        return {
            "key": self.key,
            "n": self.n,
            "b2": self.b2,
            "mbm_bound_default": self.mbm_bound_default,
            "notes": self.notes,
            "lattice": self.lattice.to_json(),
        }


def _k3_lattice() -> GramLattice:
    U = hyperbolic()
    E8 = e8_negative()
    return direct_sum(U, U, U, E8, E8, name="U^3+E8(-1)^2")


def _k3(n):
    return _k3_lattice(), 2, "H^2 of a K3 surface; -2 curves give the MBM bound 2."


def _k3n(n):
    L = direct_sum(_k3_lattice(), rank_one(-2 * (n - 1)), name=f"U^3+E8(-1)^2+<{-2 * (n - 1)}>")
    return L, None, "Hilbert schemes of n points on a K3 (Beauville)."


def _kum(n):
    U = hyperbolic()
    L = direct_sum(U, U, U, rank_one(-2 * (n + 1)), name=f"U^3+<{-2 * (n + 1)}>")
    return L, None, "Generalized Kummer varieties of dimension 2n (Beauville)."


def _og6(n):
    U = hyperbolic()
    L = direct_sum(U, U, U, rank_one(-2), rank_one(-2), name="U^3+<-2>^2")
    return L, None, "O'Grady's sixfolds (Rapagnetta)."


def _og10(n):
    U = hyperbolic()
    E8 = e8_negative()
    L = direct_sum(U, U, U, E8, E8, a2_negative(), name="U^3+E8(-1)^2+A2(-1)")
    return L, None, "O'Grady's tenfolds (Rapagnetta)."


_BUILDERS = {
    "K3": (_k3, False),
    "K3^[n]": (_k3n, True),
    "Kum_n": (_kum, True),
    "OG10": (_og10, False),
    "OG6": (_og6, False),
}


def catalog_list() -> list[str]:
    return sorted(_BUILDERS)


def catalog_get(key: str, n: int | None = None) -> CatalogEntry:
    if key not in _BUILDERS:
        raise ContractViolation(f"catalog: unknown key {key!r}; known keys: {', '.join(catalog_list())}")
    build, parametrized = _BUILDERS[key]
    if parametrized:
        if n is None:
            raise ContractViolation(f"catalog: {key} needs a parameter n >= 2")
        if isinstance(n, bool) or not isinstance(n, int) or n < 2:
            raise ContractViolation(f"catalog: {key} needs n >= 2, got {n!r}")
    elif n is not None:
        raise ContractViolation(f"catalog: {key} takes no parameter n (got {n})")
    lattice, mbm, notes = build(n)
    entry = CatalogEntry(key, lattice, lattice.rank, mbm, notes, n)
    sig = signature(lattice)
    if tuple(sig) != (3, 0, entry.b2 - 3):
        raise AssertionError(f"catalog entry {key} has signature {tuple(sig)}")
    return entry
