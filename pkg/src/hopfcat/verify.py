"""End-to-end verification of the categorical Hopf map model.

Each step returns a :class:`StepResult` with a pass flag, a details mapping
and, on failure, a human-readable witness.  Exceptions raised while building
a model are caught and turned into failures, so a broken model never aborts
the report.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from .category import acyclicity_witness
from .homology import HopfInvariantError, homology, hopf_invariant, induced_map
from .models import CATEGORY_NAMES, FUNCTOR_NAMES, ModelRegistry, default_registry
from .snf import int_matrix, invariant_factors
from .nerve import (
    comparison_k,
    cylinder_condition_witness,
    is_simplicial_iso,
    label_str,
    lift_uniqueness_witness,
    nerve,
    pushout_comparison,
)

# Betti numbers by degree; all torsion is expected to vanish.
EXPECTED_HOMOLOGY = {
    "S": (1, 1),  # circle
    "D": (1,),  # disk
    "T": (1, 2, 1),  # torus
    "M": (1, 1),  # solid torus
    "N": (1, 1),
    "P": (1, 0, 0, 1),  # 3-sphere
    "Q": (1, 0, 1),  # 2-sphere
}
EXPECTED_CONE = (1, 0, 1, 0, 1)  # complex projective plane
CYLINDER_FUNCTORS = ("F_M", "F_N", "G")


@dataclass
class StepResult:
    number: int
    title: str
    passed: bool
    details: dict = field(default_factory=dict)
    witness: str | None = None
    informational: bool = False

    def line(self) -> str:
        status = "info" if self.informational else ("PASS" if self.passed else "FAIL")
        text = f"[{status}] step {self.number}: {self.title}"
        if self.witness:
            text += f" -- {self.witness}"
        return text


@dataclass
class Report:
    steps: list

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.steps if not s.informational)

    def failures(self) -> list:
        return [s for s in self.steps if not s.informational and not s.passed]

    def to_dict(self) -> dict:
        return {"passed": self.passed, "steps": [asdict(s) for s in self.steps]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, default=str)

    def to_text(self) -> str:
        lines = [s.line() for s in self.steps]
        lines.append("overall: " + ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines)


def _guard(number, title, body):
    try:
        return body()
    except Exception as exc:  # a broken model is a failed step, not a crash
        return StepResult(number, title, False, {"error": type(exc).__name__},
                          witness=f"{type(exc).__name__}: {exc}")


def _betti(X) -> tuple:
    groups = homology(X)
    betti = [g.rank for g in groups]
    torsion = [list(g.torsion) for g in groups if g.torsion]
    return tuple(betti), torsion


def _matches(betti: tuple, expected: tuple) -> bool:
    n = max(len(betti), len(expected))
    pad = lambda t: tuple(t) + (0,) * (n - len(t))
    return pad(betti) == pad(expected)


def describe_injectivity(k) -> str | None:
    w = k.injectivity_witness()
    if w is None:
        return None
    n, s, t = w
    if t is None:
        return f"{label_str(s)} (dim {n}) maps to a degenerate simplex {k.image(n, s)}"
    return f"{label_str(s)} and {label_str(t)} (dim {n}) share the image {label_str(k.image(n, s).simplex)}"


def describe_missed(k) -> str | None:
    missed = k.missed()
    if not missed:
        return None
    parts = [f"dim {n}: " + ", ".join(label_str(s) for s in ss) for n, ss in sorted(missed.items())]
    return "no preimage for " + "; ".join(parts)


def cylinder_check(F) -> dict:
    """Condition, comparison map and the witnesses for one functor."""
    cw = cylinder_condition_witness(F)
    k = comparison_k(F)
    info = {
        "functor": F.name,
        "condition": cw is None,
        "condition_witness": None if cw is None else f"{cw[1]} out of {F.obj(cw[0])} has no lift at {cw[0]}",
        "k_problems": k.problems(),
        "k_source_counts": k.source.counts(),
        "k_target_counts": k.target.counts(),
        "k_surjective": not k.missed(),
        "k_injective": k.is_injective(),
        "k_iso": is_simplicial_iso(k),
        "injectivity_witness": describe_injectivity(k),
        "missed": {n: [label_str(s) for s in ss] for n, ss in k.missed().items()},
        "missed_witness": describe_missed(k),
    }
    lw = lift_uniqueness_witness(F)
    info["unique_lifts"] = lw is None
    if lw is not None:
        info["lift_witness"] = f"{lw[1]} and {lw[2]} out of {lw[0]} both map to {F.mor(lw[1])}"
    # homology comparison: k is a weak equivalence even when not an iso
    info["k_homology_iso"] = all(
        _is_unimodular(induced_map(k, n)) for n in range(k.source.dimension + 1)
    )
    return info


def _is_unimodular(matrix) -> bool:
    if not matrix:
        return True
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        return False
    return invariant_factors(int_matrix(matrix)) == [1] * n


def step_acyclicity(reg: ModelRegistry) -> StepResult:
    details, bad = {}, []
    for name in CATEGORY_NAMES:
        try:
            w = acyclicity_witness(reg.build(name))
        except Exception as exc:
            w = f"{type(exc).__name__}: {exc}"
        details[name] = w is None
        if w is not None:
            bad.append(f"{name}: {w}")
    for name in FUNCTOR_NAMES:
        try:
            problems = reg.build(name).problems()
        except Exception as exc:
            problems = [f"{type(exc).__name__}: {exc}"]
        details[name] = not problems
        if problems:
            bad.append(f"{name}: {problems[0]}")
    return StepResult(1, "acyclic categories and valid functors", not bad, details,
                      "; ".join(bad) or None)


def step_cylinders(reg: ModelRegistry, names=CYLINDER_FUNCTORS) -> StepResult:
    details, bad = {}, []
    for name in names:
        info = cylinder_check(reg.functor(name) if name != "counterexample" else reg.counterexample)
        details[name] = info
        if not info["condition"]:
            bad.append(f"{name}: condition fails, {info['condition_witness']}")
        elif not info["k_iso"]:
            why = info["injectivity_witness"] or info["missed_witness"] or "counts differ"
            bad.append(f"{name}: k is not an isomorphism, {why}")
    return StepResult(2, "cylinder condition and comparison isomorphism", not bad, details,
                      "; ".join(bad) or None)


def step_pushouts(reg: ModelRegistry) -> StepResult:
    spans = {
        "P": (reg.cylinder_M.include_source, reg.cylinder_N.include_source, reg.hopf.source),
        "Q": (reg.functor("incl"), reg.functor("incl"), reg.hopf.target),
    }
    details, bad = {}, []
    for name, (f, g, result) in spans.items():
        m = pushout_comparison(f, g, result)
        iso = not m.problems() and is_simplicial_iso(m)
        details[name] = {"iso": iso, "source_counts": m.source.counts(), "target_counts": m.target.counts()}
        if not iso:
            why = (m.problems() or [None])[0] or describe_injectivity(m) or describe_missed(m)
            bad.append(f"{name}: {why}")
    return StepResult(3, "nerve preserves the pushouts P and Q", not bad, details, "; ".join(bad) or None)


def step_homology(reg: ModelRegistry) -> StepResult:
    details, bad = {}, []
    for name, expected in EXPECTED_HOMOLOGY.items():
        betti, torsion = _betti(nerve(reg.build(name)))
        ok = _matches(betti, expected) and not torsion
        details[name] = {"betti": list(betti), "expected": list(expected), "torsion": torsion}
        if not ok:
            bad.append(f"{name}: betti {list(betti)}, expected {list(expected)}"
                       + (f", torsion {torsion}" if torsion else ""))
    return StepResult(4, "homology of S, D, T, M, N, P, Q", not bad, details, "; ".join(bad) or None)


def step_counterexample(reg: ModelRegistry) -> StepResult:
    info = cylinder_check(reg.counterexample)
    ok = not info["condition"] and not info["k_surjective"]
    witness = None if ok else "expected the condition to fail and k to miss a simplex"
    if ok:
        witness = info["missed_witness"]
    return StepResult(5, "counterexample: no lift, k not surjective", ok, info, witness)


def step_hopf(reg: ModelRegistry) -> StepResult:
    X = reg.mapping_cone
    betti, torsion = _betti(X)
    details = {"counts": X.counts(), "betti": list(betti), "torsion": torsion}
    if not _matches(betti, EXPECTED_CONE) or torsion:
        return StepResult(6, "Hopf invariant of the mapping cone", False, details,
                          f"cone homology betti {list(betti)}, expected {list(EXPECTED_CONE)}")
    try:
        h = hopf_invariant(X)
    except HopfInvariantError as exc:
        return StepResult(6, "Hopf invariant of the mapping cone", False, details, str(exc))
    details["hopf_invariant"] = h
    ok = abs(h) == 1
    return StepResult(6, "Hopf invariant of the mapping cone", ok, details,
                      None if ok else f"x.x = {h} times the generator of H^4")


def step_categorical_cone(reg: ModelRegistry) -> StepResult:
    R, C = nerve(reg.R), reg.mapping_cone
    rb, _ = _betti(R)
    cb, _ = _betti(C)
    details = {
        "R_objects": len(reg.R.objects),
        "R_morphisms": len(reg.R.morphisms),
        "R_counts": R.counts(),
        "R_betti": list(rb),
        "cone_counts": C.counts(),
        "cone_betti": list(cb),
        "same_homology": _matches(rb, cb),
    }
    m = pushout_comparison(reg.cone_cylinder.include_source, reg.H, reg.categorical_cp2)
    details["comparison_problems"] = len(m.problems())
    details["comparison_iso"] = not m.problems() and is_simplicial_iso(m)
    note = None if details["same_homology"] else (
        f"Cat pushout R has betti {list(rb)}, the simplicial cone {list(cb)}")
    return StepResult(7, "categorical pushout R against the simplicial cone",
                      details["same_homology"], details, note, informational=True)


def verify_hopf(registry: ModelRegistry | None = None, cylinder_functors=CYLINDER_FUNCTORS) -> Report:
    reg = registry or default_registry()
    steps = [
        _guard(1, "acyclic categories and valid functors", lambda: step_acyclicity(reg)),
        _guard(2, "cylinder condition and comparison isomorphism",
               lambda: step_cylinders(reg, cylinder_functors)),
        _guard(3, "nerve preserves the pushouts P and Q", lambda: step_pushouts(reg)),
        _guard(4, "homology of S, D, T, M, N, P, Q", lambda: step_homology(reg)),
        _guard(5, "counterexample: no lift, k not surjective", lambda: step_counterexample(reg)),
        _guard(6, "Hopf invariant of the mapping cone", lambda: step_hopf(reg)),
        _guard(7, "categorical pushout R against the simplicial cone", lambda: step_categorical_cone(reg)),
    ]
    steps[-1].informational = True
    return Report(steps)


def verify_cylinder(F) -> Report:
    """Condition and comparison isomorphism for a single functor."""
    def body():
        problems = F.problems()
        if problems:
            return StepResult(1, f"{F.name} is a functor", False, {}, problems[0])
        info = cylinder_check(F)
        ok = info["condition"] and info["k_iso"]
        witness = None
        if not ok:
            witness = info["condition_witness"] or ""
            extra = info["missed_witness"] or info["injectivity_witness"]
            witness = "; ".join(w for w in (witness, extra) if w)
        return StepResult(1, f"cylinder condition and k iso for {F.name}", ok, info, witness)

    return Report([_guard(1, f"cylinder check for {F.name}", body)])
