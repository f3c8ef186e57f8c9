import random

import pytest

from corpus import random_functor
from hopfcat.category import (
    Functor,
    NaturalTransformation,
    check_functor,
    check_natural,
    identity_functor,
    is_acyclic,
    ordinal,
)
from hopfcat.constructions import (
    ConstructionError,
    arrow_end_inclusion,
    arrow_pushout,
    cone,
    cylinder_factorize,
    functor_difference,
    mapping_cylinder,
    product_with_arrow,
    pushout,
    pushout_mediate,
    terminal_functor,
)
from hopfcat.models import ModelRegistry
from hopfcat.nerve import collapse_functor

REG = ModelRegistry()


def _non_identity(C):
    return sorted(C.non_identities)


def test_cylinder_of_identity_on_point_is_interval():
    cyl = mapping_cylinder(identity_functor(ordinal(0)), rename={"0": "1"})
    C = cyl.cylinder
    assert len(C.objects) == 2 and _non_identity(C) == ["a[0]"]


def test_counterexample_cylinder():
    cyl = mapping_cylinder(REG.counterexample, rename={"0": "F0", "1": "1"})
    C = cyl.cylinder
    assert sorted(C.objects) == ["0", "1", "F0"]
    assert _non_identity(C) == ["(01)", "(01).a[0]", "a[0]"]
    assert C.compose("(01)", "a[0]") == "(01).a[0]"


def test_cylinder_M_shape():
    cyl = REG.cylinder_M
    M = cyl.cylinder
    assert len(M.objects) == 8 and {"Z_0", "Z_1"} <= set(M.objects)
    assert not M.problems() and is_acyclic(M)
    for F in (cyl.include_source, cyl.include_target):
        assert check_functor(F) and F.is_injective_on_objects()
    assert check_natural(cyl.seam)
    assert set(cyl.seam.components) == set(REG.T.objects)


def test_cylinder_needs_rename_on_clash():
    with pytest.raises(ConstructionError):
        mapping_cylinder(identity_functor(ordinal(1)))


def _iso_via_mediator(F):
    """pushout(i1, F) and the collage agree: the mediating functor is bijective."""
    cyl = mapping_cylinder(F, rename={y: "F" + y for y in F.target.objects})
    A2 = product_with_arrow(F.source)
    i1 = arrow_end_inclusion(F.source, A2, 1)
    po = pushout(i1, F, allow_collapse=True)
    i_B = cyl.include_target
    u = pushout_mediate(po, collapse_functor(cyl, A2), i_B)
    assert check_functor(u)
    assert len(set(u.object_map.values())) == len(po.apex.objects) == len(cyl.cylinder.objects)
    assert len(set(u.morphism_map.values())) == len(po.apex.morphisms) == len(cyl.cylinder.morphisms)


@pytest.mark.parametrize("name", ["F_M", "F_N", "G", "counterexample"])
def test_collage_is_pushout_models(name):
    _iso_via_mediator(REG.counterexample if name == "counterexample" else REG.functor(name))


def test_collage_is_pushout_random():
    rng = random.Random(7)
    for _ in range(40):
        _iso_via_mediator(random_functor(rng))


def test_factorize_inclusions_gives_identity():
    for cyl in (REG.cylinder_M, mapping_cylinder(REG.counterexample, rename={"0": "F0"})):
        G = cylinder_factorize(cyl, cyl.include_source, cyl.include_target, cyl.seam)
        assert functor_difference(G, identity_functor(cyl.cylinder)) is None


def test_extensions_restrict_correctly():
    incl = REG.functor("incl")
    for cyl, H in ((REG.cylinder_M, REG.H_M), (REG.cylinder_N, REG.H_N)):
        assert check_functor(H)
        assert functor_difference(H.after(cyl.include_source), incl.after(REG.G)) is None
        assert functor_difference(H.after(cyl.include_target), REG.functor("K")) is None


def test_factorize_rejects_unnatural_seam():
    cyl = REG.cylinder_M
    bad = dict(cyl.seam.components)
    x = sorted(bad)[0]
    bad[x] = "id(" + x + ")"
    seam = NaturalTransformation("bad", cyl.include_source, cyl.include_target.after(cyl.functor), bad)
    with pytest.raises(ConstructionError):
        cylinder_factorize(cyl, cyl.include_source, cyl.include_target, seam)


def test_product_with_arrow_counts():
    assert len(product_with_arrow(ordinal(0)).morphisms) == len(ordinal(1).morphisms)
    S2 = product_with_arrow(REG.S)
    assert len(S2.objects) == 4
    assert len(S2.morphisms) == 12  # 4 morphisms of S times 3 of the arrow
    T2 = product_with_arrow(REG.T)
    assert len(T2.objects) == 12 and not T2.problems()


def test_cones():
    c0 = cone(ordinal(0)).cylinder
    assert len(c0.objects) == 2 and len(c0.morphisms) == 3
    cS = cone(REG.S).cylinder
    assert len(cS.objects) == 3
    assert len(REG.cone_P.objects) == 11
    C = REG.cone_P
    for x in C.objects:
        assert len(C.hom(x, "*")) == 1


def test_pushout_Q_and_P():
    assert len(REG.Q.objects) == 4 and len(REG.P.objects) == 10
    assert is_acyclic(REG.P) and is_acyclic(REG.Q)
    po = REG.hopf.source
    assert check_functor(po.leg_left) and check_functor(po.leg_right)
    assert functor_difference(po.leg_left.after(REG.cylinder_M.include_source),
                              po.leg_right.after(REG.cylinder_N.include_source)) is None


def test_pushout_along_identities():
    C = REG.D
    po = pushout(identity_functor(C), identity_functor(C), tags=("l", "r"))
    assert len(po.apex.objects) == len(C.objects)
    assert len(po.apex.morphisms) == len(C.morphisms)


def test_pushout_rejects_non_injective_leg():
    with pytest.raises(ConstructionError):
        pushout(identity_functor(REG.S), REG.functor("K"))


def test_H_object_map():
    H = REG.H
    assert check_functor(H)
    assert len(H.source.objects) == 10 and len(H.target.objects) == 4
    # the cores Z_0, Z_1, Y_0, Y_1 land on the two cone points
    cores = {H.obj(x) for x in H.source.objects if x.split(":")[1][0] in "YZ"}
    assert cores == {"D1:X", "D2:X"}


def test_arrow_pushout_of_identities():
    C = REG.S
    I = identity_functor(C)
    ap = arrow_pushout((I, I, I), (I, I, I), (I, I), tags=(("a", "b"), ("c", "d")))
    H = ap.functor
    assert len(set(H.object_map.values())) == len(H.source.objects) == len(C.objects)
    assert len(set(H.morphism_map.values())) == len(H.source.morphisms) == len(C.morphisms)


def test_arrow_pushout_rejects_non_commuting_square():
    I = identity_functor(REG.S)
    swap = Functor("swap", REG.S, REG.S, {"A": "A", "B": "B"},
                   {"id(A)": "id(A)", "id(B)": "id(B)", "f": "g", "g": "f"})
    with pytest.raises(ConstructionError):
        arrow_pushout((I, I, swap), (I, I, I), (I, I))


def _random_monotone(rng, C, height=3):
    """A random functor from an acyclic category to the ordinal ``height``."""
    target = ordinal(height)
    level = {x: rng.randrange(height + 1) for x in C.objects}
    changed = True
    while changed:
        changed = False
        for m in C.non_identities:
            s, t = C.source(m), C.target(m)
            if level[t] < level[s]:
                level[t] = level[s]
                changed = True

    def arrow(i, j):
        return target.identity[str(i)] if i == j else f"({i}{j})"
    obj = {x: str(level[x]) for x in C.objects}
    mor = {m: arrow(level[C.source(m)], level[C.target(m)]) for m in C.morphisms}
    return Functor("K", C, target, obj, mor)


def test_pushout_universal_property_random():
    rng = random.Random(11)
    tested = 0
    while tested < 30:
        F = random_functor(rng, max_objects=4)
        if len(F.source.objects) > 4:
            continue
        A2 = product_with_arrow(F.source)
        i1 = arrow_end_inclusion(F.source, A2, 1)
        po = pushout(i1, F, allow_collapse=True)
        # cocones obtained by composing the legs with a functor out of the apex
        for K in (identity_functor(po.apex), terminal_functor(po.apex), _random_monotone(rng, po.apex)):
            assert check_functor(K)
            u = pushout_mediate(po, K.after(po.leg_left), K.after(po.leg_right))
            assert functor_difference(u, K) is None  # uniqueness
            assert functor_difference(u.after(po.leg_left), K.after(po.leg_left)) is None
            assert functor_difference(u.after(po.leg_right), K.after(po.leg_right)) is None
        tested += 1


def test_mediator_rejects_non_cocone():
    D = REG.D
    crush = Functor("crush", D, D, {x: "X" for x in D.objects}, {m: "id(X)" for m in D.morphisms})
    with pytest.raises(ConstructionError):
        pushout_mediate(REG.hopf.target, identity_functor(D), crush)
