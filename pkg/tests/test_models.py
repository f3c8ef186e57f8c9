import json

import pytest

from hopfcat.category import check_functor, is_acyclic
from hopfcat.homology import homology
from hopfcat.models import CATEGORY_NAMES, FUNCTOR_NAMES, ModelRegistry, build, perturbed
from hopfcat.nerve import nerve
from hopfcat.verify import verify_cylinder, verify_hopf

REG = ModelRegistry()


def test_T_presentation():
    pres = REG.realizations["T"].presentation
    assert sorted(pres.objects) == ["A_0", "A_1", "B_0", "B_1", "B_2", "B_3"]
    assert len(pres.generators) == 12 and len(pres.relations) == 6


def test_object_counts():
    assert len(build("P").objects) == 10
    assert len(build("Q").objects) == 4
    H = build("H")
    assert check_functor(H) and len(H.source.objects) == 10 and len(H.target.objects) == 4


def test_every_model_is_valid():
    for name in CATEGORY_NAMES:
        assert is_acyclic(REG.build(name)), name
    for name in FUNCTOR_NAMES:
        assert check_functor(REG.build(name)), name


def test_unknown_model():
    with pytest.raises(KeyError):
        build("nosuch")


def test_build_is_deterministic():
    a, b = ModelRegistry(), ModelRegistry()
    for name in ("T", "M", "P", "Q", "H", "R"):
        assert a.build(name).to_json() == b.build(name).to_json()


def test_no_torsion_anywhere():
    for name in ("S", "D", "T", "M", "N", "P", "Q", "cone_P", "R"):
        assert all(not g.torsion for g in homology(nerve(REG.build(name))))
    assert all(not g.torsion for g in homology(REG.mapping_cone))


def test_vertex_counts():
    assert nerve(REG.M).count(0) == len(REG.T.objects) + len(REG.S.objects) == 8
    assert nerve(REG.P).count(0) == 10


def test_categorical_cp2_shape():
    R = REG.R
    assert len(R.objects) == 5 and is_acyclic(R)


@pytest.fixture(scope="module")
def report():
    return verify_hopf(REG)


def test_report_steps(report):
    status = {s.number: s.passed for s in report.steps}
    assert status[1] and status[3] and status[4] and status[5] and status[6]
    assert report.steps[-1].informational
    assert [s.number for s in report.steps] == list(range(1, 8))
    assert json.loads(report.to_json())["steps"][0]["number"] == 1
    assert report.to_text().splitlines()[-1].startswith("overall:")


def test_step_two_details(report):
    # the lifting condition holds and k is a surjective homology isomorphism;
    # injectivity fails because each functor sends two arrows out of an
    # object to the same arrow
    step = report.steps[1]
    for name in ("F_M", "F_N", "G"):
        info = step.details[name]
        assert info["condition"] and info["k_surjective"] and info["k_homology_iso"]
        assert info["k_problems"] == []
        assert not info["unique_lifts"] and not info["k_injective"]
    assert not step.passed and "share the image" in step.witness


def test_injected_fault_is_caught():
    bad = ModelRegistry({"F_M": perturbed(REG, "F_M", "q_A", "g")})
    rep = verify_hopf(bad)
    step1 = rep.steps[0]
    assert not step1.passed and "F_M" in step1.witness
    assert not rep.passed


def test_counterexample_promoted_to_step_two():
    rep = verify_hopf(REG, cylinder_functors=("counterexample",))
    step = rep.steps[1]
    assert not step.passed and "condition fails" in step.witness


def test_verify_cylinder_counterexample_names_missing_simplex():
    rep = verify_cylinder(REG.counterexample)
    assert not rep.passed
    assert "(a[0],(01))" in rep.steps[0].witness
