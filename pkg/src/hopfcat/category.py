"""Finite categories given by presentations.

A presentation lists objects, generating arrows and relations between
parallel paths.  ``realize`` enumerates all generator paths (the generator
graph must be a DAG, so there are finitely many), quotients them by the
congruence generated by the relations and returns a ``FiniteCategory``
with an explicit composition table.

Paths are tuples of generator names in application order: ``("f", "t")``
is ``t . f`` in the text grammar, i.e. first ``f`` then ``t``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from graphlib import CycleError, TopologicalSorter
from itertools import product

from scipy.cluster.hierarchy import DisjointSet

Path = tuple  # tuple[str, ...]

_NAME = re.compile(r"^[^\s.=#(),]+$")


class PresentationError(ValueError):
    """Malformed presentation; ``line`` is set when the error came from text."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CyclicPresentationError(PresentationError):
    pass


class IncompleteTableError(KeyError):
    def __str__(self):
        return str(self.args[0])


def identity_name(obj: str) -> str:
    return f"id({obj})"


def path_name(path) -> str:
    """Right-to-left text form of a path: ``("f", "t")`` -> ``"t.f"``."""
    return ".".join(reversed(path))


@dataclass(frozen=True)
class Generator:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class CatPresentation:
    name: str
    objects: tuple
    generators: tuple
    relations: tuple = ()

    def __post_init__(self):
        objs = set(self.objects)
        if len(objs) != len(self.objects):
            raise PresentationError(f"duplicate object in {self.name}")
        seen = set()
        for g in self.generators:
            if g.name in seen:
                raise PresentationError(f"duplicate generator {g.name!r}")
            seen.add(g.name)
            for end in (g.source, g.target):
                if end not in objs:
                    raise PresentationError(f"generator {g.name!r} uses undeclared object {end!r}")
        for lhs, rhs in self.relations:
            ls, lt = self.path_ends(lhs)
            rs, rt = self.path_ends(rhs)
            if (ls, lt) != (rs, rt):
                raise PresentationError(
                    f"relation {path_name(lhs)} = {path_name(rhs)} is not parallel "
                    f"({ls}->{lt} vs {rs}->{rt})"
                )

    @cached_property
    def generator_table(self) -> dict:
        return {g.name: g for g in self.generators}

    def path_ends(self, path) -> tuple:
        if not path:
            raise PresentationError("relations relate nonempty paths only")
        table = self.generator_table
        for name in path:
            if name not in table:
                raise PresentationError(f"unknown generator {name!r}")
        for first, second in zip(path, path[1:]):
            if table[first].target != table[second].source:
                raise PresentationError(f"path {path_name(path)} is not composable at {first}, {second}")
        return table[path[0]].source, table[path[-1]].target


@dataclass(frozen=True, eq=False)
class FiniteCategory:
    """A finite category with an explicit composition table.

    ``composition[(g, f)]`` is ``g . f`` (first ``f``, then ``g``) and is
    defined for every composable pair, identities included.
    """

    name: str
    objects: tuple
    morphisms: dict  # name -> (source, target)
    identity: dict  # object -> identity morphism name
    composition: dict  # (g, f) -> g.f

    def source(self, m: str) -> str:
        return self.morphisms[m][0]

    def target(self, m: str) -> str:
        return self.morphisms[m][1]

    def compose(self, g: str, f: str) -> str:
        try:
            return self.composition[g, f]
        except KeyError:
            raise ValueError(f"{g} and {f} are not composable in {self.name}") from None

    def compose_path(self, path, obj: str | None = None) -> str:
        """Compose morphisms given in application order; empty path needs ``obj``."""
        if not path:
            return self.identity[obj]
        result = path[0]
        for m in path[1:]:
            result = self.compose(m, result)
        return result

    @cached_property
    def identities(self) -> frozenset:
        return frozenset(self.identity.values())

    def is_identity(self, m: str) -> bool:
        return m in self.identities

    @cached_property
    def non_identities(self) -> tuple:
        return tuple(sorted(m for m in self.morphisms if m not in self.identities))

    @cached_property
    def _hom(self) -> dict:
        hom = {}
        for m in sorted(self.morphisms):
            hom.setdefault(self.morphisms[m], []).append(m)
        return hom

    def hom(self, x: str, y: str) -> list:
        return self._hom.get((x, y), [])

    @cached_property
    def _out(self) -> dict:
        out = {x: [] for x in self.objects}
        for m in sorted(self.morphisms):
            out[self.source(m)].append(m)
        return out

    def out_of(self, x: str) -> list:
        """All morphisms with source ``x``, sorted by name."""
        return self._out[x]

    @cached_property
    def _in(self) -> dict:
        into = {x: [] for x in self.objects}
        for m in sorted(self.morphisms):
            into[self.target(m)].append(m)
        return into

    def into(self, x: str) -> list:
        return self._in[x]

    @cached_property
    def indecomposables(self) -> tuple:
        """Non-identities that are not composites of two non-identities."""
        composites = {
            h for (g, f), h in self.composition.items()
            if not self.is_identity(g) and not self.is_identity(f)
        }
        return tuple(m for m in self.non_identities if m not in composites)

    @cached_property
    def factorization(self) -> dict:
        """A path of indecomposables for each morphism (identities get ``()``).

        Only meaningful for acyclic categories, where every morphism is a
        composite of indecomposables.
        """
        indec = set(self.indecomposables)
        result = {i: () for i in self.identities}
        for m in indec:
            result[m] = (m,)

        def factor(m, stack=()):
            if m in result:
                return result[m]
            if m in stack:
                raise ValueError(f"{m} has no finite factorization in {self.name}")
            for e in self.out_of(self.source(m)):
                if e not in indec:
                    continue
                for rest in self.hom(self.target(e), self.target(m)):
                    if self.is_identity(rest) or self.compose(rest, e) != m:
                        continue
                    result[m] = (e,) + factor(rest, stack + (m,))
                    return result[m]
            raise ValueError(f"{m} has no factorization into indecomposables in {self.name}")

        for m in self.non_identities:
            factor(m)
        return result

    def problems(self) -> list:
        """Violations of the category axioms, as readable witnesses."""
        out = []
        for x in self.objects:
            i = self.identity.get(x)
            if i is None or self.morphisms.get(i) != (x, x):
                out.append(f"bad identity for {x}")
        if out:
            return out
        for f, (x, y) in self.morphisms.items():
            for g in self.out_of(y):
                if (g, f) not in self.composition:
                    out.append(f"missing composite {g}.{f}")
                    continue
                h = self.composition[g, f]
                if self.morphisms.get(h) != (x, self.target(g)):
                    out.append(f"{g}.{f} = {h} has wrong endpoints")
            if self.composition.get((self.identity[y], f)) != f:
                out.append(f"left unit law fails at {f}")
            if self.composition.get((f, self.identity[x])) != f:
                out.append(f"right unit law fails at {f}")
        if out:
            return out
        for f, (_, y) in self.morphisms.items():
            for g in self.out_of(y):
                for h in self.out_of(self.target(g)):
                    if self.compose(h, self.compose(g, f)) != self.compose(self.compose(h, g), f):
                        out.append(f"associativity fails at ({h}, {g}, {f})")
        return out

    def to_dict(self) -> dict:
        return {
            "kind": "category",
            "name": self.name,
            "objects": sorted(self.objects),
            "morphisms": [
                {"id": m, "source": s, "target": t} for m, (s, t) in sorted(self.morphisms.items())
            ],
            "identities": dict(sorted(self.identity.items())),
            "composition": sorted([g, f, h] for (g, f), h in self.composition.items()),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=1)

    @classmethod
    def from_dict(cls, data: dict) -> FiniteCategory:
        return cls(
            name=data["name"],
            objects=tuple(sorted(data["objects"])),
            morphisms={m["id"]: (m["source"], m["target"]) for m in data["morphisms"]},
            identity=dict(data["identities"]),
            composition={(g, f): h for g, f, h in data["composition"]},
        )

    def relabel_objects(self, mapping: dict, name: str | None = None) -> FiniteCategory:
        """Rename objects (and their identities); other morphism names are kept."""
        ren = {x: mapping.get(x, x) for x in self.objects}
        if len(set(ren.values())) != len(ren):
            raise ValueError("object relabelling is not injective")
        mor_ren = {self.identity[x]: identity_name(ren[x]) for x in self.objects}
        mor = lambda m: mor_ren.get(m, m)  # noqa: E731
        return FiniteCategory(
            name=name or self.name,
            objects=tuple(sorted(ren.values())),
            morphisms={mor(m): (ren[s], ren[t]) for m, (s, t) in self.morphisms.items()},
            identity={ren[x]: identity_name(ren[x]) for x in self.objects},
            composition={(mor(g), mor(f)): mor(h) for (g, f), h in self.composition.items()},
        )


@dataclass(frozen=True, eq=False)
class Realization:
    """A realized presentation: the category plus path bookkeeping."""

    presentation: CatPresentation
    category: FiniteCategory
    generator_morphism: dict  # generator name -> morphism
    representative: dict  # morphism -> canonical path (identities: ())

    def evaluate(self, path, obj: str | None = None) -> str:
        return self.category.compose_path([self.generator_morphism[g] for g in path], obj)


def _enumerate_paths(p: CatPresentation) -> tuple:
    by_source = {x: [] for x in p.objects}
    for g in p.generators:
        by_source[g.source].append(g)
    paths = []
    stack = [((g.name,), g.target) for g in p.generators]
    while stack:
        path, end = stack.pop()
        paths.append(path)
        stack.extend((path + (g.name,), g.target) for g in by_source[end])
    return paths


def check_generator_graph(p: CatPresentation) -> None:
    graph = {x: set() for x in p.objects}
    for g in p.generators:
        if g.source == g.target:
            raise CyclicPresentationError(f"generator {g.name!r} is a loop at {g.source}")
        graph[g.target].add(g.source)
    try:
        tuple(TopologicalSorter(graph).static_order())
    except CycleError as exc:
        raise CyclicPresentationError(f"generator graph has a directed cycle through {exc.args[1]}") from None


def realize(p: CatPresentation) -> Realization:
    """Realize a presentation by path enumeration and congruence closure."""
    check_generator_graph(p)
    table = p.generator_table
    paths = _enumerate_paths(p)
    ends = {path: (table[path[0]].source, table[path[-1]].target) for path in paths}
    into = {x: [()] for x in p.objects}
    out_of = {x: [()] for x in p.objects}
    for path, (s, t) in ends.items():
        into[t].append(path)
        out_of[s].append(path)

    classes = DisjointSet(paths)
    for lhs, rhs in p.relations:
        s, t = p.path_ends(lhs)
        for before, after in product(into[s], out_of[t]):
            classes.merge(before + lhs + after, before + rhs + after)

    rep_of = {}
    for subset in classes.subsets():
        rep = min(subset, key=lambda q: (len(q), q))
        for path in subset:
            rep_of[path] = rep

    morphisms = {}
    representative = {}
    for x in p.objects:
        morphisms[identity_name(x)] = (x, x)
        representative[identity_name(x)] = ()
    name_of = {}
    for rep in sorted(set(rep_of.values())):
        name = path_name(rep)
        if name in morphisms:
            raise PresentationError(f"morphism name {name!r} is ambiguous; generator names must not contain '.'")
        morphisms[name] = ends[rep]
        representative[name] = rep
        name_of[rep] = name

    def morphism_of(path):
        return name_of[rep_of[path]]

    composition = {}
    for f, (x, y) in morphisms.items():
        for g, (y2, z) in morphisms.items():
            if y2 != y:
                continue
            joined = representative[f] + representative[g]
            composition[g, f] = morphism_of(joined) if joined else identity_name(x)

    category = FiniteCategory(
        name=p.name,
        objects=tuple(sorted(p.objects)),
        morphisms=morphisms,
        identity={x: identity_name(x) for x in p.objects},
        composition=composition,
    )
    return Realization(
        presentation=p,
        category=category,
        generator_morphism={g.name: morphism_of((g.name,)) for g in p.generators},
        representative=representative,
    )


def realize_category(p: CatPresentation) -> FiniteCategory:
    return realize(p).category


def ordinal(n: int) -> FiniteCategory:
    """The total order 0 -> 1 -> ... -> n as a category."""
    objs = [str(i) for i in range(n + 1)]

    def arrow(i, j):
        if i == j:
            return identity_name(objs[i])
        return f"({i}{j})" if n < 10 else f"({i},{j})"

    morphisms = {arrow(i, j): (objs[i], objs[j]) for i in range(n + 1) for j in range(i, n + 1)}
    composition = {
        (arrow(j, k), arrow(i, j)): arrow(i, k)
        for i in range(n + 1) for j in range(i, n + 1) for k in range(j, n + 1)
    }
    return FiniteCategory(
        name=f"ordinal({n})",
        objects=tuple(objs),
        morphisms=morphisms,
        identity={x: identity_name(x) for x in objs},
        composition=composition,
    )


def is_skeletal(C: FiniteCategory) -> bool:
    return skeletal_witness(C) is None


def skeletal_witness(C: FiniteCategory):
    """An isomorphism between distinct objects, as ``(f, inverse)``, or None."""
    for f, (x, y) in sorted(C.morphisms.items()):
        if x == y:
            continue
        for g in C.hom(y, x):
            if C.compose(g, f) == C.identity[x] and C.compose(f, g) == C.identity[y]:
                return f, g
    return None


def is_progressive(C: FiniteCategory) -> bool:
    return progressive_witness(C) is None


def progressive_witness(C: FiniteCategory):
    for x in C.objects:
        for m in C.hom(x, x):
            if m != C.identity[x]:
                return m
    return None


def is_acyclic(C: FiniteCategory) -> bool:
    return is_skeletal(C) and is_progressive(C)


def acyclicity_witness(C: FiniteCategory) -> str | None:
    iso = skeletal_witness(C)
    if iso is not None:
        return f"{iso[0]} is an isomorphism with inverse {iso[1]}"
    endo = progressive_witness(C)
    if endo is not None:
        return f"{endo} is a non-identity endomorphism"
    return None


@dataclass(frozen=True, eq=False)
class Functor:
    name: str
    source: FiniteCategory
    target: FiniteCategory
    object_map: dict
    morphism_map: dict

    def obj(self, x: str) -> str:
        try:
            return self.object_map[x]
        except KeyError:
            raise IncompleteTableError(f"{self.name}: no image for object {x!r}") from None

    def mor(self, m: str) -> str:
        try:
            return self.morphism_map[m]
        except KeyError:
            raise IncompleteTableError(f"{self.name}: no image for morphism {m!r}") from None

    def after(self, other: Functor, name: str | None = None) -> Functor:
        """``self . other``."""
        return Functor(
            name=name or f"{self.name}.{other.name}",
            source=other.source,
            target=self.target,
            object_map={x: self.obj(y) for x, y in other.object_map.items()},
            morphism_map={m: self.mor(n) for m, n in other.morphism_map.items()},
        )

    def problems(self) -> list:
        A, B = self.source, self.target
        for x in A.objects:
            self.obj(x)
        for m in A.morphisms:
            self.mor(m)
        out = []
        for x in A.objects:
            if self.obj(x) not in B.identity:
                out.append(f"object {x} maps outside {B.name}")
        for m, (s, t) in sorted(A.morphisms.items()):
            img = self.mor(m)
            if img not in B.morphisms:
                out.append(f"{m} maps to unknown morphism {img}")
            elif B.morphisms[img] != (self.obj(s), self.obj(t)):
                out.append(f"{m}: {s}->{t} maps to {img}: {B.source(img)}->{B.target(img)}")
        if out:
            return out
        for x in A.objects:
            if self.mor(A.identity[x]) != B.identity[self.obj(x)]:
                out.append(f"identity of {x} not preserved")
        for (g, f), h in sorted(A.composition.items()):
            if B.compose(self.mor(g), self.mor(f)) != self.mor(h):
                out.append(
                    f"{self.name}({g}.{f}) = {self.mor(h)} but "
                    f"{self.name}({g}).{self.name}({f}) = {B.compose(self.mor(g), self.mor(f))}"
                )
        return out

    def is_injective_on_objects(self) -> bool:
        return len(set(self.object_map.values())) == len(self.object_map)

    def to_dict(self) -> dict:
        return {
            "kind": "functor",
            "name": self.name,
            "source": self.source.to_dict(),
            "target": self.target.to_dict(),
            "objects": dict(sorted(self.object_map.items())),
            "morphisms": dict(sorted(self.morphism_map.items())),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=1)

    @classmethod
    def from_dict(cls, data: dict) -> Functor:
        return cls(
            name=data["name"],
            source=FiniteCategory.from_dict(data["source"]),
            target=FiniteCategory.from_dict(data["target"]),
            object_map=dict(data["objects"]),
            morphism_map=dict(data["morphisms"]),
        )


def check_functor(F: Functor) -> bool:
    return not F.problems()


def identity_functor(C: FiniteCategory, name: str | None = None) -> Functor:
    return Functor(
        name=name or f"id[{C.name}]",
        source=C,
        target=C,
        object_map={x: x for x in C.objects},
        morphism_map={m: m for m in C.morphisms},
    )


def functor_from_generators(name: str, source: Realization, target: FiniteCategory,
                            object_map: dict, generator_images: dict) -> Functor:
    """Extend generator images along canonical paths.

    The result is not checked; call ``check_functor`` to see whether the
    images respect the relations.
    """
    object_map = dict(object_map)
    for g in source.presentation.generators:
        if g.name not in generator_images:
            raise IncompleteTableError(f"{name}: no image for generator {g.name!r}")
        img = generator_images[g.name]
        if img in target.morphisms:
            object_map.setdefault(g.source, target.source(img))
            object_map.setdefault(g.target, target.target(img))
    for x in source.category.objects:
        if x not in object_map:
            raise IncompleteTableError(f"{name}: no image for object {x!r}")
    morphism_map = {}
    for m, path in source.representative.items():
        if not path:
            morphism_map[m] = target.identity[object_map[source.category.source(m)]]
            continue
        result = generator_images[path[0]]
        for g in path[1:]:
            nxt = generator_images[g]
            if (nxt, result) not in target.composition:
                raise ValueError(f"{name}: images of {path_name(path)} are not composable")
            result = target.composition[nxt, result]
        morphism_map[m] = result
    return Functor(name, source.category, target, object_map, morphism_map)


@dataclass(frozen=True, eq=False)
class NaturalTransformation:
    """Components ``a[x]: F(x) -> G(x)`` for a pair of parallel functors."""

    name: str
    source: Functor
    target: Functor
    components: dict

    def problems(self) -> list:
        F, G = self.source, self.target
        if F.source is not G.source or F.target is not G.target:
            return ["functors are not parallel"]
        C, D = F.source, F.target
        out = []
        for x in C.objects:
            if x not in self.components:
                raise IncompleteTableError(f"{self.name}: no component at {x!r}")
            a = self.components[x]
            if D.morphisms.get(a) != (F.obj(x), G.obj(x)):
                out.append(f"component at {x} is not a morphism {F.obj(x)} -> {G.obj(x)}")
        if out:
            return out
        for f, (x, y) in sorted(C.morphisms.items()):
            lhs = D.compose(G.mor(f), self.components[x])
            rhs = D.compose(self.components[y], F.mor(f))
            if lhs != rhs:
                out.append(f"naturality square at {f} fails: {lhs} != {rhs}")
        return out


def check_natural(a: NaturalTransformation) -> bool:
    return not a.problems()


# --- text grammar -----------------------------------------------------------


@dataclass
class FunctorSpec:
    name: str
    source: str
    target: str
    objects: dict = field(default_factory=dict)
    arrows: dict = field(default_factory=dict)  # generator -> path (tuple) or ("id", obj)
    line: int = 0


@dataclass
class Document:
    categories: dict  # name -> CatPresentation
    functors: list  # FunctorSpec


def _parse_path(text: str, lineno: int):
    parts = [p.strip() for p in text.split(".")]
    if not parts or any(not p for p in parts):
        raise PresentationError(f"malformed path {text!r}", lineno)
    return tuple(reversed(parts))


def parse_document(text: str) -> Document:
    """Parse any number of ``category`` and ``functor`` blocks."""
    categories = {}
    functors = []
    current = None  # ("category", dict) | ("functor", FunctorSpec)

    def close():
        if current and current[0] == "category":
            data = current[1]
            try:
                categories[data["name"]] = CatPresentation(
                    name=data["name"],
                    objects=tuple(data["objects"]),
                    generators=tuple(data["generators"]),
                    relations=tuple(data["relations"]),
                )
            except PresentationError as exc:
                raise PresentationError(str(exc), data["line"]) from None

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word, _, rest = line.partition(" ")
        rest = rest.strip()
        if word == "category":
            close()
            if not _NAME.match(rest):
                raise PresentationError(f"bad category name {rest!r}", lineno)
            current = ("category", {"name": rest, "objects": [], "generators": [],
                                    "relations": [], "line": lineno})
        elif word == "functor":
            close()
            m = re.fullmatch(r"(\S+)\s*:\s*(\S+)\s*->\s*(\S+)", rest)
            if not m:
                raise PresentationError("expected 'functor <name> : <A> -> <B>'", lineno)
            current = ("functor", FunctorSpec(*m.groups(), line=lineno))
            functors.append(current[1])
        elif current is None:
            raise PresentationError(f"{word!r} outside a category or functor block", lineno)
        elif current[0] == "category":
            data = current[1]
            if word == "objects":
                for x in rest.split():
                    if x in data["objects"]:
                        raise PresentationError(f"duplicate object {x!r}", lineno)
                    data["objects"].append(x)
            elif word == "arrow":
                m = re.fullmatch(r"(\S+)\s*:\s*(\S+)\s*->\s*(\S+)", rest)
                if not m:
                    raise PresentationError("expected 'arrow <name> : <src> -> <tgt>'", lineno)
                name, src, tgt = m.groups()
                if not _NAME.match(name):
                    raise PresentationError(f"bad generator name {name!r}", lineno)
                for end in (src, tgt):
                    if end not in data["objects"]:
                        raise PresentationError(f"undeclared object {end!r}", lineno)
                if any(g.name == name for g in data["generators"]):
                    raise PresentationError(f"duplicate generator {name!r}", lineno)
                data["generators"].append(Generator(name, src, tgt))
            elif word == "relation":
                lhs, eq, rhs = rest.partition("=")
                if not eq:
                    raise PresentationError("expected 'relation <path> = <path>'", lineno)
                rel = (_parse_path(lhs, lineno), _parse_path(rhs, lineno))
                probe = CatPresentation(data["name"], tuple(data["objects"]), tuple(data["generators"]))
                try:
                    ends = [probe.path_ends(q) for q in rel]
                except PresentationError as exc:
                    raise PresentationError(str(exc), lineno) from None
                if ends[0] != ends[1]:
                    raise PresentationError(
                        f"relation is not parallel ({ends[0][0]}->{ends[0][1]} vs {ends[1][0]}->{ends[1][1]})",
                        lineno,
                    )
                data["relations"].append(rel)
            else:
                raise PresentationError(f"unknown keyword {word!r}", lineno)
        else:
            spec = current[1]
            m = re.fullmatch(r"(\S+)\s*->\s*(.+)", rest)
            if not m:
                raise PresentationError(f"expected '{word} <x> -> <y>'", lineno)
            lhs, rhs = m.group(1), m.group(2).strip()
            if word == "object":
                spec.objects[lhs] = rhs
            elif word == "arrow":
                id_match = re.fullmatch(r"id\s+(\S+)", rhs)
                spec.arrows[lhs] = ("id", id_match.group(1)) if id_match else ("path", _parse_path(rhs, lineno))
            else:
                raise PresentationError(f"unknown keyword {word!r} in functor block", lineno)
    close()
    return Document(categories, functors)


def parse_presentation(text: str) -> CatPresentation:
    doc = parse_document(text)
    if len(doc.categories) != 1:
        raise PresentationError(f"expected exactly one category, found {len(doc.categories)}")
    return next(iter(doc.categories.values()))


def build_functor(spec: FunctorSpec, source: Realization, target: Realization) -> Functor:
    """Turn a parsed functor block into a (possibly invalid) functor."""
    images = {}
    object_map = dict(spec.objects)
    for g, (kind, value) in spec.arrows.items():
        if g not in source.presentation.generator_table:
            raise PresentationError(f"functor {spec.name}: {g!r} is not a generator of {spec.source}", spec.line)
        if kind == "id":
            if value not in target.category.identity:
                raise PresentationError(f"functor {spec.name}: unknown object {value!r}", spec.line)
            images[g] = target.category.identity[value]
        else:
            try:
                target.presentation.path_ends(value)
            except PresentationError as exc:
                raise PresentationError(f"functor {spec.name}: {exc}", spec.line) from None
            images[g] = target.evaluate(value)
    return functor_from_generators(spec.name, source, target.category, object_map, images)


def load_document(text: str) -> tuple:
    """Realize every category of a document and build its functors."""
    doc = parse_document(text)
    realized = {name: realize(p) for name, p in doc.categories.items()}
    functors = []
    for spec in doc.functors:
        for side in (spec.source, spec.target):
            if side not in realized:
                raise PresentationError(f"functor {spec.name} refers to unknown category {side!r}", spec.line)
        functors.append(build_functor(spec, realized[spec.source], realized[spec.target]))
    return realized, functors
