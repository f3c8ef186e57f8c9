"""Integer homology, cohomology and cup products of simplicial sets.

Chains are normalized: the free abelian group on nondegenerate simplices,
with degenerate faces dropped from boundaries.  Cochains are dual, and the
Alexander-Whitney product of normalized cochains is again normalized.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .nerve import SemiSimplicialSet, SimplicialMap, nondegenerate
from .snf import identity, smith_normal_form


class HopfInvariantError(ValueError):
    pass


@dataclass(frozen=True)
class HomologyGroup:
    degree: int
    rank: int
    torsion: tuple = ()

    def __str__(self):
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) or "0"

    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion


@dataclass(frozen=True, eq=False)
class ChainComplex:
    ranks: tuple
    boundaries: tuple  # boundaries[n]: C_n -> C_(n-1); boundaries[0] has no rows

    def boundary(self, n: int) -> np.ndarray:
        if 0 <= n < len(self.boundaries):
            return self.boundaries[n]
        if n == len(self.ranks):
            return np.zeros((self.ranks[-1] if self.ranks else 0, 0), dtype=object)
        raise IndexError(n)

    def problems(self) -> list:
        out = []
        for n in range(2, len(self.ranks)):
            prod = self.boundaries[n - 1].dot(self.boundaries[n])
            if prod.size and np.any(prod != 0):
                out.append(f"d{n - 1} d{n} != 0")
        return out


def chain_complex(X: SemiSimplicialSet) -> ChainComplex:
    ranks = tuple(X.counts())
    mats = [np.zeros((0, ranks[0] if ranks else 0), dtype=object)]
    for n in range(1, len(ranks)):
        D = np.zeros((ranks[n - 1], ranks[n]), dtype=object)
        for j, s in enumerate(X.simplices[n]):
            for i, f in enumerate(X.faces[n][s]):
                if not f.degenerate:
                    D[X.index[n - 1][f.simplex], j] += (-1) ** i
        mats.append(D)
    return ChainComplex(ranks, tuple(mats))


class Subquotient:
    """``ker(outgoing) / im(incoming)`` on ``Z^size`` with explicit bases."""

    def __init__(self, incoming: np.ndarray, outgoing: np.ndarray, size: int):
        self.size = size
        so = smith_normal_form(outgoing) if outgoing.size else None
        r_o = so.rank if so else 0
        V, V_inv = (so.V, so.V_inv) if so else (identity(size), identity(size))
        self._kernel = V[:, r_o:]
        self._kernel_coords = V_inv[r_o:, :]
        k = size - r_o
        M = self._kernel_coords.dot(incoming) if incoming.size else np.zeros((k, 0), dtype=object)
        sm = smith_normal_form(M) if M.size else None
        self._r = sm.rank if sm else 0
        self._U = sm.U if sm else identity(k)
        gens = self._kernel.dot(sm.U_inv) if sm else self._kernel
        diag = sm.diagonal if sm else []
        self.torsion = tuple(d for d in diag if d > 1)
        self._torsion_index = [j for j, d in enumerate(diag) if d > 1]
        self.torsion_generators = [tuple(gens[:, j]) for j in self._torsion_index]
        self.free_generators = [tuple(int(v) for v in gens[:, j]) for j in range(self._r, k)]
        self.rank = k - self._r

    def coordinates(self, vector) -> tuple:
        """Free and torsion coordinates of a cycle."""
        w = self._kernel_coords.dot(np.array(vector, dtype=object)) if self.size else np.zeros(0, dtype=object)
        y = self._U.dot(w) if len(w) else w
        free = tuple(int(v) for v in y[self._r:])
        tors = tuple(int(y[j]) % d for j, d in zip(self._torsion_index, self.torsion))
        return free, tors


@lru_cache(maxsize=None)
def _complex(X: SemiSimplicialSet) -> ChainComplex:
    return chain_complex(X)


@lru_cache(maxsize=None)
def _homology_basis(X: SemiSimplicialSet, n: int) -> Subquotient:
    cc = _complex(X)
    return Subquotient(cc.boundary(n + 1), cc.boundary(n), cc.ranks[n])


@lru_cache(maxsize=None)
def _cohomology_basis(X: SemiSimplicialSet, n: int) -> Subquotient:
    cc = _complex(X)
    return Subquotient(cc.boundary(n).T, cc.boundary(n + 1).T, cc.ranks[n])


def _group(n, sq: Subquotient) -> HomologyGroup:
    return HomologyGroup(n, sq.rank, sq.torsion)


def homology(X: SemiSimplicialSet, max_dim: int | None = None) -> list:
    top = X.dimension if max_dim is None else min(max_dim, X.dimension)
    return [_group(n, _homology_basis(X, n)) for n in range(top + 1)]


@dataclass(frozen=True, eq=False)
class CohomologyClass:
    degree: int
    cocycle: tuple  # values on the nondegenerate simplices, in stored order
    coordinates: tuple  # w.r.t. the free generators of this degree
    torsion_coordinates: tuple = ()

    def is_zero(self) -> bool:
        return not any(self.coordinates) and not any(self.torsion_coordinates)


def cohomology_class(X: SemiSimplicialSet, n: int, cocycle) -> CohomologyClass:
    if n > X.dimension:
        return CohomologyClass(n, (), (), ())
    cocycle = tuple(int(v) for v in cocycle)
    delta = _complex(X).boundary(n + 1).T
    if delta.size and np.any(delta.dot(np.array(cocycle, dtype=object)) != 0):
        raise ValueError(f"not a cocycle in degree {n}")
    free, tors = _cohomology_basis(X, n).coordinates(cocycle)
    return CohomologyClass(n, cocycle, free, tors)


def cohomology(X: SemiSimplicialSet, max_dim: int | None = None) -> tuple:
    """Groups ``H^n`` and, per degree, classes of the free generators."""
    top = X.dimension if max_dim is None else min(max_dim, X.dimension)
    groups, classes = [], {}
    for n in range(top + 1):
        sq = _cohomology_basis(X, n)
        groups.append(_group(n, sq))
        classes[n] = [cohomology_class(X, n, g) for g in sq.free_generators]
    return groups, classes


def euler_characteristic(X: SemiSimplicialSet) -> int:
    return X.euler_characteristic()


def betti_euler(X: SemiSimplicialSet) -> int:
    return sum((-1) ** g.degree * g.rank for g in homology(X))


def induced_map(m: SimplicialMap, n: int) -> list:
    """Matrix of ``H_n`` (free parts) in the generator bases of both sides."""
    tgt = _homology_basis(m.target, n) if n <= m.target.dimension else None
    rows = tgt.rank if tgt else 0
    if n > m.source.dimension:
        return [[] for _ in range(rows)]
    src = _homology_basis(m.source, n)
    columns = []
    for z in src.free_generators:
        image = [0] * m.target.count(n)
        for s, c in zip(m.source.simplices[n], z):
            if c:
                img = m.image(n, s)
                if not img.degenerate:
                    image[m.target.index[n][img.simplex]] += c
        columns.append(tgt.coordinates(image)[0] if tgt else ())
    return [[int(columns[j][i]) for j in range(len(columns))] for i in range(rows)]


def cup_cochain(X: SemiSimplicialSet, a, p: int, b, q: int) -> tuple:
    """Alexander-Whitney product of cochains given as value sequences."""
    n = p + q
    out = []
    for s in X.simplices[n]:
        img = nondegenerate(s, n)
        front, back = X.front(img, p), X.back(img, q)
        if front.degenerate or back.degenerate:
            out.append(0)
            continue
        out.append(a[X.index[p][front.simplex]] * b[X.index[q][back.simplex]])
    return tuple(out)


def cup_product(a: CohomologyClass, b: CohomologyClass, X: SemiSimplicialSet) -> CohomologyClass:
    n = a.degree + b.degree
    if n > X.dimension:
        return CohomologyClass(n, (), (), ())
    return cohomology_class(X, n, cup_cochain(X, a.cocycle, a.degree, b.cocycle, b.degree))


def unit_class(X: SemiSimplicialSet) -> CohomologyClass:
    return cohomology_class(X, 0, [1] * X.count(0))


def hopf_invariant(X: SemiSimplicialSet) -> int:
    """Coefficient of ``x . x`` on the generator of ``H^4`` for x generating ``H^2``."""
    groups, classes = cohomology(X)
    for d in (2, 4):
        g = groups[d] if d < len(groups) else HomologyGroup(d, 0)
        if g.rank != 1 or g.torsion:
            raise HopfInvariantError(f"H^{d} = {g}, expected Z")
    x = classes[2][0]
    return cup_product(x, x, X).coordinates[0]


def cup_table(X: SemiSimplicialSet) -> list:
    """Products of free generators: ``(p, i, q, j, coordinates of the product)``."""
    _, classes = cohomology(X)
    rows = []
    for p in range(1, X.dimension + 1):
        for q in range(p, X.dimension + 1 - p):
            for i, a in enumerate(classes[p]):
                for j, b in enumerate(classes[q]):
                    rows.append((p, i, q, j, cup_product(a, b, X).coordinates))
    return rows


def dump_matrix(M: np.ndarray) -> str:
    r, c = M.shape
    lines = [f"{r} {c}"]
    lines += [" ".join(str(int(v)) for v in row) for row in M]
    return "\n".join(lines) + "\n"


def homology_report(X: SemiSimplicialSet, max_dim: int | None = None) -> dict:
    return {
        "complex": X.name,
        "simplices": X.counts(),
        "euler_characteristic": X.euler_characteristic(),
        "homology": [
            {"degree": g.degree, "betti": g.rank, "torsion": list(g.torsion)} for g in homology(X, max_dim)
        ],
    }
