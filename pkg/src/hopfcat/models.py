"""The concrete categories and functors of the Hopf map model.

S is a circle, D a disk, T a torus with six objects.  The squares of T are
the six faces of its grid picture; F_M, F_N and G project the torus onto
S.  M and N are the mapping cylinders of F_M and F_N (two solid tori),
P = M +_T N and Q = D +_S D, and H: P -> Q is induced by the extensions
H_M, H_N of G.
"""
from __future__ import annotations

from functools import cached_property

from .category import (
    Functor,
    NaturalTransformation,
    functor_from_generators,
    identity_functor,
    load_document,
    ordinal,
)
from .constructions import (
    ArrowPushout,
    arrow_pushout,
    cone,
    cylinder_factorize,
    mapping_cylinder,
    pushout,
)
from .nerve import nerve_map, simplicial_pushout

SOURCE = """
category S
objects A B
arrow f : A -> B
arrow g : A -> B

category D
objects A B X
arrow f : A -> B
arrow g : A -> B
arrow t : B -> X
relation t.f = t.g

category T
objects A_0 A_1 B_0 B_1 B_2 B_3
arrow f_0 : A_0 -> B_0
arrow g_0 : A_0 -> B_0
arrow p_A : A_0 -> A_1
arrow q_A : A_0 -> A_1
arrow f_2 : A_0 -> B_2
arrow g_2 : A_0 -> B_2
arrow p_B1 : B_0 -> B_1
arrow q_B3 : B_0 -> B_3
arrow q_B1 : B_2 -> B_1
arrow p_B3 : B_2 -> B_3
arrow f_3 : A_1 -> B_3
arrow g_1 : A_1 -> B_1
# one relation per face of the grid picture
relation p_B1 . f_0 = q_B1 . f_2
relation p_B1 . g_0 = g_1 . p_A
relation f_3 . p_A = p_B3 . f_2
relation f_3 . q_A = q_B3 . f_0
relation q_B1 . g_2 = g_1 . q_A
relation p_B3 . g_2 = q_B3 . g_0

# vertical projection; f_2 and g_2 are forced by the squares they bound
functor F_M : T -> S
object A_0 -> A
object B_0 -> A
object A_1 -> B
object B_1 -> B
object B_2 -> B
object B_3 -> B
arrow f_0 -> id A
arrow g_0 -> id A
arrow f_3 -> id B
arrow p_B3 -> id B
arrow q_B1 -> id B
arrow g_1 -> id B
arrow q_A -> f
arrow q_B3 -> f
arrow p_A -> g
arrow p_B1 -> g
arrow f_2 -> g
arrow g_2 -> f

# horizontal projection
functor F_N : T -> S
object A_0 -> A
object A_1 -> A
object B_0 -> B
object B_1 -> B
object B_2 -> B
object B_3 -> B
arrow p_A -> id A
arrow q_A -> id A
arrow p_B1 -> id B
arrow q_B1 -> id B
arrow p_B3 -> id B
arrow q_B3 -> id B
arrow f_0 -> f
arrow f_2 -> f
arrow f_3 -> f
arrow g_0 -> g
arrow g_1 -> g
arrow g_2 -> g

# diagonal projection
functor G : T -> S
object A_0 -> A
object B_2 -> A
object A_1 -> B
object B_3 -> B
object B_0 -> B
object B_1 -> B
arrow f_3 -> id B
arrow q_B3 -> id B
arrow f_2 -> id A
arrow g_2 -> id A
arrow p_B1 -> id B
arrow g_1 -> id B
arrow q_A -> f
arrow f_0 -> f
arrow q_B1 -> f
arrow p_A -> g
arrow p_B3 -> g
arrow g_0 -> g

functor incl : S -> D
arrow f -> f
arrow g -> g

# collapses the circle onto the cone point of D
functor K : S -> D
object A -> X
object B -> X
arrow f -> id X
arrow g -> id X
"""

CATEGORY_NAMES = ("S", "D", "T", "M", "N", "P", "Q", "cone_P", "R")
FUNCTOR_NAMES = ("F_M", "F_N", "G", "H_M", "H_N", "H", "counterexample")
MODEL_NAMES = CATEGORY_NAMES + FUNCTOR_NAMES


class ModelRegistry:
    """Lazily built models; ``overrides`` replaces named functors (fault injection)."""

    def __init__(self, overrides: dict | None = None):
        self.overrides = dict(overrides or {})

    @cached_property
    def _document(self):
        return load_document(SOURCE)

    @property
    def realizations(self) -> dict:
        return self._document[0]

    @cached_property
    def _functors(self) -> dict:
        fs = {F.name: F for F in self._document[1]}
        fs.update(self.overrides)
        return fs

    def functor(self, name: str) -> Functor:
        return self._functors[name]

    def build(self, name: str):
        if name not in MODEL_NAMES:
            raise KeyError(f"unknown model {name!r}; known: {', '.join(MODEL_NAMES)}")
        return getattr(self, name)

    # categories

    @property
    def S(self):
        return self.realizations["S"].category

    @property
    def D(self):
        return self.realizations["D"].category

    @property
    def T(self):
        return self.realizations["T"].category

    @property
    def F_M(self):
        return self.functor("F_M")

    @property
    def F_N(self):
        return self.functor("F_N")

    @property
    def G(self):
        return self.functor("G")

    @cached_property
    def cylinder_M(self):
        return mapping_cylinder(self.F_M, name="M", rename={"A": "Z_0", "B": "Z_1"})

    @cached_property
    def cylinder_N(self):
        return mapping_cylinder(self.F_N, name="N", rename={"A": "Y_0", "B": "Y_1"})

    @property
    def M(self):
        return self.cylinder_M.cylinder

    @property
    def N(self):
        return self.cylinder_N.cylinder

    def _extension(self, cyl, name):
        """Extend ``incl . G`` over a solid torus, collapsing its core to X."""
        incl, K = self.functor("incl"), self.functor("K")
        D = self.D
        H = incl.after(self.G, name="incl.G")
        r = {}
        for x in self.T.objects:
            r[x] = D.compose("t", "f") if self.G.obj(x) == "A" else "t"
        seam = NaturalTransformation("r", H, K.after(cyl.functor), r)
        return cylinder_factorize(cyl, H, K, seam, name=name)

    @cached_property
    def H_M(self):
        return self._extension(self.cylinder_M, "H_M")

    @cached_property
    def H_N(self):
        return self._extension(self.cylinder_N, "H_N")

    @cached_property
    def hopf(self) -> ArrowPushout:
        incl = self.functor("incl")
        return arrow_pushout(
            (self.cylinder_M.include_source, self.G, self.H_M),
            (self.cylinder_N.include_source, self.G, self.H_N),
            (incl, incl),
            name="H",
            tags=(("M", "N"), ("D1", "D2")),
        )

    @property
    def P(self):
        return self.hopf.source.apex

    @property
    def Q(self):
        return self.hopf.target.apex

    @property
    def H(self):
        return self.hopf.functor

    @cached_property
    def cone_cylinder(self):
        return cone(self.P, name="cone_P")

    @property
    def cone_P(self):
        return self.cone_cylinder.cylinder

    @cached_property
    def categorical_cp2(self):
        """Pushout of ``cone(P) <- P -> Q`` computed in Cat."""
        return pushout(self.cone_cylinder.include_source, self.H, name="R",
                       tags=("C", "Q"), allow_collapse=True)

    @property
    def R(self):
        return self.categorical_cp2.apex

    @cached_property
    def mapping_cone(self):
        """Simplicial mapping cone of ``N H``: ``N cone(P) +_{NP} NQ``."""
        return simplicial_pushout(
            nerve_map(self.cone_cylinder.include_source), nerve_map(self.H), name="C[NH]"
        ).complex

    @cached_property
    def counterexample(self):
        """The point included at the start of the arrow ``0 -> 1``."""
        A, B = ordinal(0), ordinal(1)
        return Functor("counterexample", A, B, {"0": "0"}, {"id(0)": "id(0)"})

    @cached_property
    def constant_cone(self):
        """Mapping cone of a constant functor P -> Q (a wedge S^2 v S^4)."""
        P, Q = self.P, self.Q
        y = sorted(Q.objects)[0]
        const = Functor("const", P, Q, {x: y for x in P.objects}, {m: Q.identity[y] for m in P.morphisms})
        return simplicial_pushout(
            nerve_map(self.cone_cylinder.include_source), nerve_map(const), name="C[const]"
        ).complex


def perturbed(registry: ModelRegistry, name: str, generator: str, image: str) -> Functor:
    """Functor ``name`` with the image of one generator replaced."""
    F = registry.functor(name)
    real = registry.realizations[F.source.name]
    target = F.target
    images = {g: F.mor(real.generator_morphism[g]) for g in real.presentation.generator_table}
    images[generator] = image
    objects = dict(F.object_map)
    return functor_from_generators(name, real, target, objects, images)


_default = ModelRegistry()


def build(name: str):
    return _default.build(name)


def default_registry() -> ModelRegistry:
    return _default


__all__ = ["ModelRegistry", "build", "default_registry", "perturbed", "identity_functor", "MODEL_NAMES"]
