import random

import pytest
from hypothesis import given, settings, strategies as st

from corpus import closure_count, random_presentation
from hopfcat.category import (
    CatPresentation,
    CyclicPresentationError,
    FiniteCategory,
    Functor,
    IncompleteTableError,
    Generator,
    NaturalTransformation,
    PresentationError,
    check_functor,
    check_natural,
    identity_functor,
    is_acyclic,
    is_progressive,
    is_skeletal,
    load_document,
    ordinal,
    parse_presentation,
    realize,
    realize_category,
)
from hopfcat.models import ModelRegistry, perturbed

S_TEXT = """
category S
objects A B
arrow f : A -> B
arrow g : A -> B
"""

D_TEXT = """
category D
objects A B X
arrow f : A -> B
arrow g : A -> B
arrow t : B -> X
relation t.f = t.g
"""


def test_parse_s():
    p = parse_presentation(S_TEXT)
    assert (len(p.objects), len(p.generators), len(p.relations)) == (2, 2, 0)


def test_parse_d_relation_is_right_to_left():
    p = parse_presentation(D_TEXT)
    assert (len(p.objects), len(p.generators), len(p.relations)) == (3, 3, 1)
    assert p.relations[0] == (("f", "t"), ("g", "t"))


def test_non_parallel_relation_rejected():
    with pytest.raises(PresentationError):
        parse_presentation(D_TEXT.replace("relation t.f = t.g", "relation t.f = g"))


def test_syntax_error_carries_line_number():
    with pytest.raises(PresentationError) as info:
        parse_presentation("category C\nobjects A\nwibble\n")
    assert info.value.line == 3


@pytest.mark.parametrize("text", [
    "category C\nobjects A\narrow f : A -> Z\n",
    "category C\nobjects A B\narrow f : A -> B\narrow f : A -> B\n",
])
def test_undeclared_object_and_duplicate_generator(text):
    with pytest.raises(PresentationError):
        parse_presentation(text)


def test_loop_generator_rejected():
    p = parse_presentation("category L\nobjects X\narrow e : X -> X\n")
    with pytest.raises(CyclicPresentationError):
        realize(p)


def test_directed_cycle_rejected():
    p = parse_presentation("category L\nobjects X Y\narrow u : X -> Y\narrow v : Y -> X\n")
    with pytest.raises(CyclicPresentationError):
        realize(p)


def test_realized_counts():
    assert len(realize_category(parse_presentation(S_TEXT)).morphisms) == 4
    D = realize_category(parse_presentation(D_TEXT))
    assert len(D.objects) == 3 and len(D.morphisms) == 7
    assert D.compose("t", "f") == D.compose("t", "g")


@pytest.mark.parametrize("n,count", [(0, 1), (1, 3), (2, 6), (4, 15)])
def test_ordinal(n, count):
    C = ordinal(n)
    assert len(C.objects) == n + 1 and len(C.morphisms) == count
    assert not C.problems() and is_acyclic(C)


def _iso_pair():
    return FiniteCategory(
        "iso", ("x", "y"),
        {"id(x)": ("x", "x"), "id(y)": ("y", "y"), "u": ("x", "y"), "v": ("y", "x")},
        {"x": "id(x)", "y": "id(y)"},
        {("v", "u"): "id(x)", ("u", "v"): "id(y)",
         ("u", "id(x)"): "u", ("id(y)", "u"): "u", ("v", "id(y)"): "v", ("id(x)", "v"): "v",
         ("id(x)", "id(x)"): "id(x)", ("id(y)", "id(y)"): "id(y)"},
    )


def _idempotent_monoid():
    return FiniteCategory(
        "idem", ("*",), {"id(*)": ("*", "*"), "e": ("*", "*")}, {"*": "id(*)"},
        {("id(*)", "id(*)"): "id(*)", ("e", "id(*)"): "e", ("id(*)", "e"): "e", ("e", "e"): "e"},
    )


def test_acyclicity_checks():
    iso = _iso_pair()
    assert not iso.problems()
    assert not is_skeletal(iso) and not is_acyclic(iso)
    mono = _idempotent_monoid()
    assert is_skeletal(mono) and not is_progressive(mono)
    assert is_acyclic(ordinal(0)) and is_progressive(ordinal(3))


def test_models_acyclic():
    reg = ModelRegistry()
    for name in ("S", "D", "T", "M", "N", "P", "Q", "R", "cone_P"):
        assert is_acyclic(reg.build(name)), name


def test_composites_of_non_identities_are_non_identities():
    reg = ModelRegistry()
    for name in ("T", "M", "P", "Q"):
        C = reg.build(name)
        for (g, f), h in C.composition.items():
            if not C.is_identity(g) and not C.is_identity(f):
                assert not C.is_identity(h)


def test_functor_checks():
    reg = ModelRegistry()
    for name in ("F_M", "F_N", "G", "H_M", "H_N", "H"):
        assert check_functor(reg.build(name)), name
    assert check_functor(identity_functor(reg.T))


def test_remapped_generator_breaks_functoriality():
    bad = perturbed(ModelRegistry(), "F_M", "q_A", "g")
    problems = bad.problems()
    assert problems and not check_functor(bad)


def test_missing_table_entry_is_reported():
    S = ModelRegistry().S
    F = Functor("partial", S, S, {"A": "A", "B": "B"}, {m: m for m in S.morphisms if m != "g"})
    with pytest.raises(IncompleteTableError, match="'g'"):
        F.problems()


def test_natural_transformation_check():
    C = ordinal(1)
    I = identity_functor(C)
    ok = NaturalTransformation("one", I, I, {x: C.identity[x] for x in C.objects})
    assert check_natural(ok)
    const0 = Functor("c0", C, C, {"0": "0", "1": "0"}, {m: "id(0)" for m in C.morphisms})
    bad = NaturalTransformation("bad", I, const0, {"0": "id(0)", "1": "id(0)"})
    assert not check_natural(bad)


def test_json_round_trip():
    T = ModelRegistry().T
    again = FiniteCategory.from_dict(T.to_dict())
    assert again.to_json() == T.to_json()
    F = ModelRegistry().F_M
    assert Functor.from_dict(F.to_dict()).to_dict() == F.to_dict()


def test_document_with_functor():
    text = S_TEXT + D_TEXT + "functor i : S -> D\narrow f -> f\narrow g -> g\n"
    cats, functors = load_document(text)
    assert set(cats) == {"S", "D"} and functors[0].obj("A") == "A"
    assert check_functor(functors[0])


def represent(C: FiniteCategory) -> CatPresentation:
    """Every non-identity morphism as a generator, every composite as a relation."""
    gens = tuple(Generator(m, C.source(m), C.target(m)) for m in sorted(C.non_identities))
    rels = []
    for (g, f), h in sorted(C.composition.items()):
        if not (C.is_identity(g) or C.is_identity(f)):
            rels.append(((f, g), (h,)))
    return CatPresentation(C.name, tuple(sorted(C.objects)), gens, tuple(rels))


def _shape(C):
    homs = sorted(len(C.hom(x, y)) for x in C.objects for y in C.objects)
    return len(C.objects), len(C.morphisms), homs


def test_re_presentation_idempotent_on_models():
    reg = ModelRegistry()
    for name in ("S", "D", "T", "M", "Q"):
        C = reg.build(name)
        again = realize_category(represent(C))
        assert _shape(again) == _shape(C)
        # composite names agree, so the identity-on-names functor is an isomorphism
        ren = {m: m for m in C.non_identities}
        for x in C.objects:
            ren[C.identity[x]] = again.identity[x]
        for (g, f), h in C.composition.items():
            assert again.compose(ren[g], ren[f]) == ren[h]


def test_congruence_closure_matches_oracle():
    rng = random.Random(20240601)
    checked = 0
    for _ in range(150):
        p = random_presentation(rng, max_objects=5, max_generators=8)
        C = realize_category(p)
        assert not C.problems()
        assert len(C.morphisms) == closure_count(p), p
        checked += 1
    assert checked >= 100


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=2**31))
def test_realized_categories_are_valid_and_acyclic(seed):
    p = random_presentation(random.Random(seed))
    C = realize_category(p)
    assert not C.problems()
    assert is_acyclic(C)
    again = realize_category(represent(C))
    assert _shape(again) == _shape(C)
