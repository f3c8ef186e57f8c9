"""Nerves of acyclic categories and the simplicial side of the constructions.

Simplicial sets are stored by their nondegenerate simplices only.  A
possibly degenerate simplex is an ``Image(simplex, dim, surjection)``: the
nondegenerate ``simplex`` of dimension ``dim`` pulled back along a monotone
surjection ``[n] -> [dim]`` (its Eilenberg-Zilber form).  Nerves of acyclic
categories have nondegenerate faces throughout, but pushouts along
collapsing maps do not, so face tables store ``Image`` values.

Orientation: a chain ``(f1, ..., fn)`` with ``fi: x(i-1) -> xi``; ``d0``
drops ``f1``, ``dn`` drops ``fn`` and the inner ``di`` composes
``f(i+1) . fi``.
"""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Hashable, NamedTuple

from .category import FiniteCategory, Functor, acyclicity_witness
from .constructions import (
    CylinderResult,
    PushoutResult,
    arrow_end_inclusion,
    mapping_cylinder,
    product_with_arrow,
)


class NonAcyclicError(ValueError):
    pass


class Image(NamedTuple):
    simplex: Hashable
    dim: int
    surjection: tuple

    @property
    def degenerate(self) -> bool:
        return len(self.surjection) != self.dim + 1


def nondegenerate(simplex, n: int) -> Image:
    return Image(simplex, n, tuple(range(n + 1)))


def label_str(label) -> str:
    if isinstance(label, tuple):
        return "(" + ",".join(label_str(x) for x in label) + ")"
    return str(label)


class SemiSimplicialSet:
    """Nondegenerate simplices per dimension with face tables.

    ``faces[n][s]`` is the tuple ``(d0 s, ..., dn s)`` of ``Image`` values
    for ``n >= 1``.
    """

    def __init__(self, simplices, faces, name: str = ""):
        self.name = name
        self.simplices = tuple(tuple(level) for level in simplices)
        while self.simplices and not self.simplices[-1] and len(self.simplices) > 1:
            self.simplices = self.simplices[:-1]
        self.faces = [dict(level) for level in faces][: len(self.simplices)]
        while len(self.faces) < len(self.simplices):
            self.faces.append({})
        self.index = [{s: i for i, s in enumerate(level)} for level in self.simplices]

    @property
    def dimension(self) -> int:
        return len(self.simplices) - 1

    def count(self, n: int) -> int:
        return len(self.simplices[n]) if 0 <= n < len(self.simplices) else 0

    def counts(self) -> list:
        return [len(level) for level in self.simplices]

    def contains(self, n: int, simplex) -> bool:
        return 0 <= n < len(self.index) and simplex in self.index[n]

    def face(self, img: Image, i: int) -> Image:
        """``d_i`` of a possibly degenerate simplex."""
        s = img.surjection
        t = s[:i] + s[i + 1:]
        m = img.dim
        if t and t[0] == 0 and t[-1] == m and len(set(t)) == m + 1:
            return Image(img.simplex, m, t)
        missing = next(v for v in range(m + 1) if v not in t)
        inner = self.faces[m][img.simplex][missing]
        return Image(inner.simplex, inner.dim, tuple(inner.surjection[v - (v > missing)] for v in t))

    def face_of(self, n: int, simplex, i: int) -> Image:
        return self.faces[n][simplex][i]

    def restrict(self, img: Image, keep) -> Image:
        """Face spanned by the vertex indices ``keep`` (sorted)."""
        keep = set(keep)
        for j in range(len(img.surjection) - 1, -1, -1):
            if j not in keep:
                img = self.face(img, j)
        return img

    def front(self, img: Image, p: int) -> Image:
        for j in range(len(img.surjection) - 1, p, -1):
            img = self.face(img, j)
        return img

    def back(self, img: Image, q: int) -> Image:
        for _ in range(len(img.surjection) - 1 - q):
            img = self.face(img, 0)
        return img

    def vertices(self, n: int, simplex) -> list:
        img = nondegenerate(simplex, n)
        return [self.restrict(img, [j]).simplex for j in range(n + 1)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * c for n, c in enumerate(self.counts()))

    def problems(self) -> list:
        """Missing faces and violations of ``d_i d_j = d_(j-1) d_i`` (i < j)."""
        out = []
        for n in range(1, len(self.simplices)):
            for s in self.simplices[n]:
                fs = self.faces[n].get(s)
                if fs is None or len(fs) != n + 1:
                    out.append(f"{label_str(s)}: expected {n + 1} faces")
                    continue
                for i, f in enumerate(fs):
                    ok = (
                        len(f.surjection) == n
                        and f.surjection[0] == 0
                        and all(b - a in (0, 1) for a, b in zip(f.surjection, f.surjection[1:]))
                        and f.surjection[-1] == f.dim
                        and self.contains(f.dim, f.simplex)
                    )
                    if not ok:
                        out.append(f"d{i} {label_str(s)} = {f} is not a stored simplex")
        if out:
            return out
        for n in range(2, len(self.simplices)):
            for s in self.simplices[n]:
                img = nondegenerate(s, n)
                for j in range(n + 1):
                    for i in range(j):
                        lhs = self.face(self.face(img, j), i)
                        rhs = self.face(self.face(img, i), j - 1)
                        if lhs != rhs:
                            out.append(f"d{i}d{j} != d{j - 1}d{i} on {label_str(s)}")
        return out

    def to_dict(self) -> dict:
        return {
            "kind": "complex",
            "name": self.name,
            "simplices": [[label_str(s) for s in level] for level in self.simplices],
            "faces": [
                {
                    label_str(s): [[label_str(f.simplex), f.dim, list(f.surjection)] for f in fs]
                    for s, fs in level.items()
                }
                for level in self.faces
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=1)

    @classmethod
    def from_dict(cls, data: dict) -> SemiSimplicialSet:
        faces = [
            {s: tuple(Image(f, d, tuple(sj)) for f, d, sj in fs) for s, fs in level.items()}
            for level in data["faces"]
        ]
        return cls(data["simplices"], faces, name=data.get("name", ""))


@dataclass(frozen=True, eq=False)
class SimplicialMap:
    source: SemiSimplicialSet
    target: SemiSimplicialSet
    images: list  # images[n][simplex] -> Image in target
    name: str = ""

    def image(self, n: int, simplex) -> Image:
        return self.images[n][simplex]

    def apply(self, img: Image) -> Image:
        t = self.images[img.dim][img.simplex]
        return Image(t.simplex, t.dim, tuple(t.surjection[v] for v in img.surjection))

    def after(self, other: SimplicialMap, name: str = "") -> SimplicialMap:
        images = [
            {s: self.apply(img) for s, img in level.items()} for level in other.images
        ]
        return SimplicialMap(other.source, self.target, images, name)

    def problems(self) -> list:
        out = []
        X, Y = self.source, self.target
        for n, level in enumerate(X.simplices):
            for s in level:
                img = self.images[n].get(s) if n < len(self.images) else None
                if img is None:
                    out.append(f"no image for {label_str(s)}")
                elif len(img.surjection) != n + 1 or not Y.contains(img.dim, img.simplex):
                    out.append(f"bad image for {label_str(s)}: {img}")
        if out:
            return out
        for n in range(1, len(X.simplices)):
            for s in X.simplices[n]:
                for i in range(n + 1):
                    lhs = Y.face(self.images[n][s], i)
                    rhs = self.apply(X.face_of(n, s, i))
                    if lhs != rhs:
                        out.append(f"d{i} does not commute on {label_str(s)}: {lhs} vs {rhs}")
        return out

    def injectivity_witness(self):
        """``(n, s, None)`` for a collapsed simplex, ``(n, s, t)`` for a shared image, or None."""
        for n, level in enumerate(self.images):
            seen = {}
            for s, img in level.items():
                if img.degenerate:
                    return n, s, None
                key = (img.dim, img.simplex)
                if key in seen:
                    return n, seen[key], s
                seen[key] = s
        return None

    def is_injective(self) -> bool:
        """No collapse and no two simplices with the same image."""
        return self.injectivity_witness() is None

    def missed(self) -> dict:
        """Target simplices that are not the nondegenerate image of anything."""
        hit = {(img.dim, img.simplex) for level in self.images for img in level.values() if not img.degenerate}
        out = {}
        for n, level in enumerate(self.target.simplices):
            gone = [s for s in level if (n, s) not in hit]
            if gone:
                out[n] = gone
        return out


def identity_map(X: SemiSimplicialSet) -> SimplicialMap:
    return SimplicialMap(X, X, [{s: nondegenerate(s, n) for s in level} for n, level in enumerate(X.simplices)], "id")


def is_simplicial_iso(m: SimplicialMap) -> bool:
    if not m.is_injective():
        return False
    return m.source.counts() == m.target.counts() and not m.missed()


@lru_cache(maxsize=None)
def nerve(C: FiniteCategory) -> SemiSimplicialSet:
    """Nondegenerate nerve: chains of composable non-identity morphisms."""
    witness = acyclicity_witness(C)
    if witness is not None:
        raise NonAcyclicError(f"{C.name} is not acyclic: {witness}")
    levels = [sorted(C.objects)]
    faces = [{}]
    chains = [(m,) for m in C.non_identities]
    while chains:
        levels.append(sorted(chains))
        chains = [
            c + (g,) for c in chains for g in C.out_of(C.target(c[-1])) if not C.is_identity(g)
        ]
    for n in range(1, len(levels)):
        level = {}
        for c in levels[n]:
            if n == 1:
                f = c[0]
                level[c] = (nondegenerate(C.target(f), 0), nondegenerate(C.source(f), 0))
                continue
            fs = [nondegenerate(c[1:], n - 1)]
            for i in range(1, n):
                fs.append(nondegenerate(c[: i - 1] + (C.compose(c[i], c[i - 1]),) + c[i + 1:], n - 1))
            fs.append(nondegenerate(c[:-1], n - 1))
            level[c] = tuple(fs)
        faces.append(level)
    return SemiSimplicialSet(levels, faces, name=f"N{C.name}")


def nerve_map(F: Functor) -> SimplicialMap:
    """``N F``: images of chains with identity entries collapsed."""
    X, Y = nerve(F.source), nerve(F.target)
    B = F.target
    images = [{x: Image(F.obj(x), 0, (0,)) for x in X.simplices[0]}]
    for n in range(1, len(X.simplices)):
        level = {}
        for c in X.simplices[n]:
            surj = [0]
            kept = []
            for f in c:
                g = F.mor(f)
                if not B.is_identity(g):
                    kept.append(g)
                surj.append(len(kept))
            if kept:
                level[c] = Image(tuple(kept), len(kept), tuple(surj))
            else:
                level[c] = Image(F.obj(F.source.source(c[0])), 0, tuple(surj))
        images.append(level)
    return SimplicialMap(X, Y, images, name=f"N{F.name}")


@dataclass(frozen=True, eq=False)
class SimplicialPushout:
    complex: SemiSimplicialSet
    leg_x: SimplicialMap  # X -> pushout
    leg_b: SimplicialMap  # B -> pushout


def simplicial_pushout(f: SimplicialMap, g: SimplicialMap, name: str = "") -> SimplicialPushout:
    """Pushout of ``X <-f- A -g-> B`` with f injective.

    Nondegenerate simplices are those of B (tagged ``"B"``) and those of X
    outside the image of f (tagged ``"X"``).  Faces of X-simplices landing in
    ``f(A)`` are replaced by their g-images, which may be degenerate.
    """
    if f.source is not g.source:
        raise ValueError("pushout legs must share their source")
    if not f.is_injective():
        raise ValueError("the first leg of a simplicial pushout must be injective")
    X, B = f.target, g.target
    f_inv = {}
    for n, level in enumerate(f.images):
        for a, img in level.items():
            f_inv[n, img.simplex] = a

    def from_x(img: Image) -> Image:
        a = f_inv.get((img.dim, img.simplex))
        if a is None:
            return Image(("X", img.simplex), img.dim, img.surjection)
        gi = g.images[img.dim][a]
        return Image(("B", gi.simplex), gi.dim, tuple(gi.surjection[v] for v in img.surjection))

    def from_b(img: Image) -> Image:
        return Image(("B", img.simplex), img.dim, img.surjection)

    top = max(X.dimension, B.dimension)
    levels, faces = [], []
    for n in range(top + 1):
        level = [("B", s) for s in (B.simplices[n] if n <= B.dimension else ())]
        level += [("X", s) for s in (X.simplices[n] if n <= X.dimension else ()) if (n, s) not in f_inv]
        levels.append(level)
        fl = {}
        if n >= 1:
            for tag, s in level:
                src = B if tag == "B" else X
                conv = from_b if tag == "B" else from_x
                fl[tag, s] = tuple(conv(fi) for fi in src.faces[n][s])
        faces.append(fl)
    P = SemiSimplicialSet(levels, faces, name=name)
    leg_x = SimplicialMap(
        X, P, [{s: from_x(nondegenerate(s, n)) for s in level} for n, level in enumerate(X.simplices)]
    )
    leg_b = SimplicialMap(
        B, P, [{s: from_b(nondegenerate(s, n)) for s in level} for n, level in enumerate(B.simplices)]
    )
    return SimplicialPushout(P, leg_x, leg_b)


@dataclass(frozen=True, eq=False)
class SimplicialCylinder:
    complex: SemiSimplicialSet
    pushout: SimplicialPushout
    product: FiniteCategory
    end_inclusion: Functor  # A -> A x 2 onto the end glued to B


def simplicial_mapping_cylinder(F: Functor) -> SimplicialCylinder:
    """``N(A x 2) +_{NA} NB`` glued along ``x -> (x, 1)`` and ``N F``."""
    A2 = product_with_arrow(F.source)
    i1 = arrow_end_inclusion(F.source, A2, 1)
    po = simplicial_pushout(nerve_map(i1), nerve_map(F), name=f"M[N{F.name}]")
    return SimplicialCylinder(po.complex, po, A2, i1)


def cylinder_condition_witness(F: Functor):
    """``(x, g)`` with ``g: F x -> y`` not of the form ``F f`` for ``f`` out of ``x``."""
    A, B = F.source, F.target
    for x in sorted(A.objects):
        lifted = {F.mor(f) for f in A.out_of(x)}
        for g in B.out_of(F.obj(x)):
            if g not in lifted:
                return x, g
    return None


def cylinder_condition(F: Functor) -> bool:
    return cylinder_condition_witness(F) is None


def lift_uniqueness_witness(F: Functor):
    """``(x, f, f2)``: distinct arrows out of x with the same image under F."""
    for x in sorted(F.source.objects):
        seen = {}
        for f in sorted(F.source.out_of(x)):
            g = F.mor(f)
            if g in seen:
                return x, seen[g], f
            seen[g] = f
    return None


def is_discrete_opfibration(F: Functor) -> bool:
    """Every ``g: F x -> y`` lifts to exactly one arrow out of x."""
    return cylinder_condition(F) and lift_uniqueness_witness(F) is None


def collapse_functor(cyl: CylinderResult, A2: FiniteCategory) -> Functor:
    """``A x 2 -> M_F``: ``(u, id0) -> u``, ``(u, 01) -> a . u``, ``(u, id1) -> F u``."""
    F = cyl.functor
    A = F.source
    i_A, i_B = cyl.include_source, cyl.include_target
    objects, morphisms = {}, {}
    for x in A.objects:
        objects[f"({x},0)"] = i_A.obj(x)
        objects[f"({x},1)"] = i_B.obj(F.obj(x))
    for u in A.morphisms:
        morphisms[f"({u},id(0))"] = i_A.mor(u)
        morphisms[f"({u},(01))"] = cyl.cross(A.source(u), F.mor(u))
        morphisms[f"({u},id(1))"] = i_B.mor(F.mor(u))
    return Functor("k", A2, cyl.cylinder, objects, morphisms)


def comparison_k(F: Functor, scyl: SimplicialCylinder | None = None,
                 cyl: CylinderResult | None = None) -> SimplicialMap:
    """The comparison map from the simplicial cylinder of ``N F`` to ``N M_F``."""
    scyl = scyl or simplicial_mapping_cylinder(F)
    cyl = cyl or mapping_cylinder(F, rename=_auto_rename(F))
    phi = nerve_map(collapse_functor(cyl, scyl.product))
    incl = nerve_map(cyl.include_target)
    target = nerve(cyl.cylinder)
    P = scyl.complex
    images = []
    for n, level in enumerate(P.simplices):
        images.append({
            (tag, s): (phi if tag == "X" else incl).image(n, s) for tag, s in level
        })
    return SimplicialMap(P, target, images, name=f"k[{F.name}]")


def _auto_rename(F: Functor) -> dict | None:
    clash = set(F.source.objects) & set(F.target.objects)
    if not clash:
        return None
    return {y: f"F{y}" if y in clash else y for y in F.target.objects}


def pushout_comparison(F: Functor, G: Functor, result: PushoutResult) -> SimplicialMap:
    """From ``NB +_{NA} NC`` to the nerve of the categorical pushout."""
    sp = simplicial_pushout(nerve_map(F), nerve_map(G))
    left, right = nerve_map(result.leg_left), nerve_map(result.leg_right)
    images = []
    for n, level in enumerate(sp.complex.simplices):
        images.append({
            (tag, s): (left if tag == "X" else right).image(n, s) for tag, s in level
        })
    return SimplicialMap(sp.complex, nerve(result.apex), images, name="pushout comparison")


def _sphere_point(label: str) -> tuple:
    digest = hashlib.sha256(label.encode()).digest()
    u = int.from_bytes(digest[:8], "big") / 2**64
    v = int.from_bytes(digest[8:16], "big") / 2**64
    z = 2 * u - 1
    phi = 2 * math.pi * v
    r = math.sqrt(max(0.0, 1 - z * z))
    return r * math.cos(phi), r * math.sin(phi), z


def to_off(X: SemiSimplicialSet) -> str:
    """2-skeleton as an OFF mesh; coordinates are arbitrary points on a sphere."""
    verts = list(X.simplices[0]) if X.simplices else []
    where = {v: i for i, v in enumerate(verts)}
    faces = [[where[v] for v in X.vertices(2, s)] for s in (X.simplices[2] if X.dimension >= 2 else ())]
    lines = ["OFF", f"{len(verts)} {len(faces)} {X.count(1)}"]
    for v in verts:
        lines.append("{:.6f} {:.6f} {:.6f}".format(*_sphere_point(label_str(v))))
    for f in faces:
        lines.append("3 " + " ".join(map(str, f)))
    return "\n".join(lines) + "\n"
