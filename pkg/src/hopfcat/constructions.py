"""Mapping cylinders, cones and pushouts of finite categories."""
from __future__ import annotations

from dataclasses import dataclass

from scipy.cluster.hierarchy import DisjointSet

from .category import (
    CatPresentation,
    FiniteCategory,
    Functor,
    Generator,
    NaturalTransformation,
    Realization,
    functor_from_generators,
    identity_name,
    ordinal,
    realize,
)


class ConstructionError(ValueError):
    pass


def _require_functor(F: Functor) -> None:
    problems = F.problems()
    if problems:
        raise ConstructionError(f"{F.name} is not a functor: {problems[0]}")


def functor_difference(F: Functor, G: Functor):
    """First object or morphism on which two parallel functors differ, or None."""
    for x in sorted(F.source.objects):
        if F.obj(x) != G.obj(x):
            return f"object {x}: {F.obj(x)} vs {G.obj(x)}"
    for m in sorted(F.source.morphisms):
        if F.mor(m) != G.mor(m):
            return f"morphism {m}: {F.mor(m)} vs {G.mor(m)}"
    return None


@dataclass(frozen=True, eq=False)
class CylinderResult:
    cylinder: FiniteCategory
    include_source: Functor
    include_target: Functor
    seam: NaturalTransformation
    functor: Functor
    kind: dict  # morphism -> ("A", u) | ("B", b) | ("cross", x, b)

    def cross(self, x: str, b: str) -> str:
        """The morphism ``b . a_x`` for ``b: F(x) -> y``."""
        return self.cylinder.compose(self.include_target.mor(b), self.seam.components[x])


def mapping_cylinder(F: Functor, name: str | None = None, rename: dict | None = None) -> CylinderResult:
    """Collage of ``F: A -> B``.

    Objects of A and B side by side, with cross homs ``M(x, y) = B(F x, y)``
    for x in A, y in B and nothing from B back to A.  ``rename`` relabels
    objects of B, which is needed whenever A and B share object names;
    non-identity arrows of B whose names occur in A get an ``F`` prefix.
    """
    _require_functor(F)
    A, B = F.source, F.target
    ren = {y: (rename or {}).get(y, y) for y in B.objects}
    if len(set(ren.values())) != len(ren):
        raise ConstructionError("rename must be injective")
    clash = set(A.objects) & set(ren.values())
    if clash:
        raise ConstructionError(f"objects {sorted(clash)} occur on both sides; pass rename=")

    shared = set(A.morphisms) & set(B.morphisms)

    def bm(b):
        if B.is_identity(b):
            return identity_name(ren[B.source(b)])
        return f"F{b}" if b in shared else b

    def cross_name(x, b):
        return f"a[{x}]" if B.is_identity(b) else f"{bm(b)}.a[{x}]"

    morphisms, kind = {}, {}

    def add(m, ends, k):
        if m in morphisms:
            raise ConstructionError(f"morphism name {m!r} occurs twice in the cylinder")
        morphisms[m] = ends
        kind[m] = k

    for u, ends in A.morphisms.items():
        add(u, ends, ("A", u))
    for b, (s, t) in B.morphisms.items():
        add(bm(b), (ren[s], ren[t]), ("B", b))
    for x in A.objects:
        for b in B.out_of(F.obj(x)):
            add(cross_name(x, b), (x, ren[B.target(b)]), ("cross", x, b))

    composition = {}
    for (g, f), h in A.composition.items():
        composition[g, f] = h
    for (g, f), h in B.composition.items():
        composition[bm(g), bm(f)] = bm(h)
    for x in A.objects:
        for b in B.out_of(F.obj(x)):
            c = cross_name(x, b)
            for b2 in B.out_of(B.target(b)):
                composition[bm(b2), c] = cross_name(x, B.compose(b2, b))
            for u in A.into(x):
                composition[c, u] = cross_name(A.source(u), B.compose(b, F.mor(u)))

    objects = tuple(sorted(set(A.objects) | set(ren.values())))
    identity = dict(A.identity)
    identity.update({ren[y]: identity_name(ren[y]) for y in B.objects})
    M = FiniteCategory(
        name=name or f"M[{F.name}]",
        objects=objects,
        morphisms=morphisms,
        identity=identity,
        composition=composition,
    )
    i_A = Functor(f"i_{A.name}", A, M, {x: x for x in A.objects}, {u: u for u in A.morphisms})
    i_B = Functor(f"i_{B.name}", B, M, ren, {b: bm(b) for b in B.morphisms})
    seam = NaturalTransformation(
        "a", i_A, i_B.after(F), {x: cross_name(x, B.identity[F.obj(x)]) for x in A.objects}
    )
    return CylinderResult(M, i_A, i_B, seam, F, kind)


def cylinder_factorize(cyl: CylinderResult, H: Functor, K: Functor,
                       r: NaturalTransformation, name: str = "G") -> Functor:
    """The unique functor out of the cylinder restricting to H, K and r."""
    F = cyl.functor
    X = H.target
    if H.source is not F.source or K.source is not F.target or K.target is not X:
        raise ConstructionError("H, K must have sources A, B and a common target")
    for x in F.source.objects:
        comp = r.components.get(x)
        if X.morphisms.get(comp) != (H.obj(x), K.obj(F.obj(x))):
            raise ConstructionError(f"component of {r.name} at {x} is not a morphism H({x}) -> K(F({x}))")
    for u, (x, y) in sorted(F.source.morphisms.items()):
        lhs = X.compose(K.mor(F.mor(u)), r.components[x])
        rhs = X.compose(r.components[y], H.mor(u))
        if lhs != rhs:
            raise ConstructionError(f"{r.name} is not natural at {u}: {lhs} != {rhs}")

    object_map, morphism_map = {}, {}
    for x in F.source.objects:
        object_map[cyl.include_source.obj(x)] = H.obj(x)
    for y in F.target.objects:
        object_map[cyl.include_target.obj(y)] = K.obj(y)
    for m, k in cyl.kind.items():
        if k[0] == "A":
            morphism_map[m] = H.mor(k[1])
        elif k[0] == "B":
            morphism_map[m] = K.mor(k[1])
        else:
            _, x, b = k
            morphism_map[m] = X.compose(K.mor(b), r.components[x])
    return Functor(name, cyl.cylinder, X, object_map, morphism_map)


def product_with_arrow(A: FiniteCategory) -> FiniteCategory:
    """``A x 2`` where 2 is the arrow ``(01): 0 -> 1``."""
    two = ordinal(1)

    def obj(x, i):
        return f"({x},{i})"

    def mor(u, v):
        return f"({u},{v})"

    objects = tuple(sorted(obj(x, i) for x in A.objects for i in two.objects))
    morphisms = {
        mor(u, v): (obj(A.source(u), two.source(v)), obj(A.target(u), two.target(v)))
        for u in A.morphisms for v in two.morphisms
    }
    composition = {
        (mor(g, v2), mor(f, v1)): mor(h, w)
        for (g, f), h in A.composition.items()
        for (v2, v1), w in two.composition.items()
    }
    identity = {obj(x, i): mor(A.identity[x], two.identity[i]) for x in A.objects for i in two.objects}
    return FiniteCategory(f"{A.name}x2", objects, morphisms, identity, composition)


def arrow_end_inclusion(A: FiniteCategory, A2: FiniteCategory, end: int) -> Functor:
    """``A -> A x 2`` onto the copy ``A x {end}``."""
    ident = identity_name(str(end))
    return Functor(
        f"i_{end}",
        A,
        A2,
        {x: f"({x},{end})" for x in A.objects},
        {u: f"({u},{ident})" for u in A.morphisms},
    )


def terminal_functor(C: FiniteCategory) -> Functor:
    point = ordinal(0)
    return Functor(
        f"!{C.name}", C, point, {x: "0" for x in C.objects}, {m: point.identity["0"] for m in C.morphisms}
    )


def cone(C: FiniteCategory, apex: str = "*", name: str | None = None) -> CylinderResult:
    """Mapping cylinder of ``C -> point``; the apex is terminal."""
    return mapping_cylinder(terminal_functor(C), name=name or f"cone({C.name})", rename={"0": apex})


@dataclass(frozen=True, eq=False)
class PushoutResult:
    apex: FiniteCategory
    leg_left: Functor
    leg_right: Functor
    realization: Realization
    generator_origin: dict  # apex generator -> (0 | 1, morphism of B | C)


def _side_relations(C: FiniteCategory, tag) -> list:
    """A complete set of relations among the indecomposables of acyclic C."""
    fact = C.factorization
    relations = []
    for e in C.indecomposables:
        for m in C.non_identities:
            if C.target(m) != C.source(e):
                continue
            lhs = fact[m] + (e,)
            rhs = fact[C.compose(e, m)]
            if lhs != rhs:
                relations.append((tuple(map(tag, lhs)), tuple(map(tag, rhs))))
    return relations


def pushout(F: Functor, G: Functor, name: str | None = None, tags: tuple | None = None,
            allow_collapse: bool = False) -> PushoutResult:
    """Pushout of the span ``B <-F- A -G-> C`` of acyclic categories.

    The apex is realized from the merged presentation: indecomposables of B
    and C as generators, their composition facts plus ``F(f) = G(f)`` as
    relations.  Objects and generators are tagged ``<tag>:<name>``; merged
    objects take the least tagged name.  With ``allow_collapse`` a leg may
    send arrows to identities, in which case the identified generators are
    contracted; the result must still be acyclic.
    """
    _require_functor(F)
    _require_functor(G)
    if F.source is not G.source:
        raise ConstructionError("span legs must share their source")
    if not allow_collapse:
        for leg in (F, G):
            if not leg.is_injective_on_objects():
                raise ConstructionError(f"{leg.name} is not injective on objects")
    A, B, C = F.source, F.target, G.target
    if tags is None:
        tags = (B.name, C.name) if B.name != C.name else (B.name + "1", C.name + "2")
    sides = (B, C)

    def tag(side):
        return lambda x: f"{tags[side]}:{x}"

    objs = DisjointSet([tag(s)(x) for s in (0, 1) for x in sides[s].objects])
    for a in A.objects:
        objs.merge(tag(0)(F.obj(a)), tag(1)(G.obj(a)))
    rep = {}
    for subset in objs.subsets():
        least = min(subset)
        rep.update({x: least for x in subset})

    generators, origin = {}, {}
    for s in (0, 1):
        cat = sides[s]
        for e in cat.indecomposables:
            gname = tag(s)(e)
            generators[gname] = Generator(gname, rep[tag(s)(cat.source(e))], rep[tag(s)(cat.target(e))])
            origin[gname] = (s, e)

    relations = _side_relations(B, tag(0)) + _side_relations(C, tag(1))
    for f in A.indecomposables:
        lhs = tuple(map(tag(0), B.factorization[F.mor(f)]))
        rhs = tuple(map(tag(1), C.factorization[G.mor(f)]))
        if lhs != rhs:
            relations.append((lhs, rhs))

    collapsed = set()
    changed = True
    while changed:
        changed = False
        kept = []
        for lhs, rhs in relations:
            lhs = tuple(g for g in lhs if g not in collapsed)
            rhs = tuple(g for g in rhs if g not in collapsed)
            if lhs == rhs:
                continue
            if lhs and rhs:
                kept.append((lhs, rhs))
                continue
            if not allow_collapse:
                raise ConstructionError("a leg sends a non-identity to an identity")
            rest = lhs or rhs
            if len(rest) != 1 or generators[rest[0]].source != generators[rest[0]].target:
                raise ConstructionError(
                    f"pushout identifies the path {'.'.join(reversed(rest))} with an identity; "
                    "the result would not be acyclic"
                )
            collapsed.add(rest[0])
            changed = True
        relations = kept
    relations = list(dict.fromkeys(relations))

    presentation = CatPresentation(
        name=name or f"{B.name}+{C.name}",
        objects=tuple(sorted(set(rep.values()))),
        generators=tuple(g for n, g in sorted(generators.items()) if n not in collapsed),
        relations=tuple(relations),
    )
    real = realize(presentation)
    P = real.category

    def leg(s):
        cat = sides[s]
        t = tag(s)
        mor = {}
        for m in cat.morphisms:
            path = [real.generator_morphism[t(e)] for e in cat.factorization[m] if t(e) not in collapsed]
            mor[m] = P.compose_path(path, rep[t(cat.source(m))])
        return Functor(f"in_{tags[s]}", cat, P, {x: rep[t(x)] for x in cat.objects}, mor)

    left, right = leg(0), leg(1)
    diff = functor_difference(left.after(F), right.after(G))
    if diff is not None:
        raise ConstructionError(f"pushout legs do not commute: {diff}")
    origin = {g: o for g, o in origin.items() if g not in collapsed}
    return PushoutResult(P, left, right, real, origin)


def pushout_mediate(result: PushoutResult, K_left: Functor, K_right: Functor, name: str = "u") -> Functor:
    """The functor out of the apex induced by a cocone ``(K_left, K_right)``."""
    X = K_left.target
    if K_right.target is not X:
        raise ConstructionError("cocone legs must share their target")
    Ks = (K_left, K_right)
    legs = (result.leg_left, result.leg_right)
    object_map = {}
    for K, leg in zip(Ks, legs):
        for x in leg.source.objects:
            y = leg.obj(x)
            if object_map.setdefault(y, K.obj(x)) != K.obj(x):
                raise ConstructionError(f"cocone disagrees on apex object {y}")
    images = {g: Ks[s].mor(m) for g, (s, m) in result.generator_origin.items()}
    H = functor_from_generators(name, result.realization, X, object_map, images)
    for K, leg in zip(Ks, legs):
        diff = functor_difference(H.after(leg), K)
        if diff is not None:
            raise ConstructionError(f"{name} does not factor the cocone: {diff}")
    return H


@dataclass(frozen=True, eq=False)
class ArrowPushout:
    source: PushoutResult
    target: PushoutResult
    functor: Functor


def arrow_pushout(square_left: tuple, square_right: tuple, base: tuple, name: str = "H",
                  tags: tuple = (None, None)) -> ArrowPushout:
    """Pushout in the arrow category of two squares over a common top arrow.

    ``square_left = (i: T -> M, G: T -> S, H_M: M -> D1)``,
    ``square_right = (k: T -> N, G: T -> S, H_N: N -> D2)``,
    ``base = (j1: S -> D1, j2: S -> D2)``.  Returns ``P = M +_T N``,
    ``Q = D1 +_S D2`` and the mediating ``H: P -> Q``.
    """
    (i, G1, H_M), (k, G2, H_N), (j1, j2) = square_left, square_right, base
    diff = functor_difference(G1, G2)
    if diff is not None:
        raise ConstructionError(f"the two squares use different top functors: {diff}")
    for label, lhs, rhs in (("left", H_M.after(i), j1.after(G1)), ("right", H_N.after(k), j2.after(G2))):
        diff = functor_difference(lhs, rhs)
        if diff is not None:
            raise ConstructionError(f"{label} square does not commute at {diff}")
    P = pushout(i, k, tags=tags[0])
    Q = pushout(j1, j2, tags=tags[1])
    H = pushout_mediate(P, Q.leg_left.after(H_M), Q.leg_right.after(H_N), name=name)
    _require_functor(H)
    return ArrowPushout(P, Q, H)
