"""Command-line front end.

Inputs are either ``model:NAME`` (a built-in model), a presentation file in
the text grammar, or a JSON file written by ``build``/``realize``/``nerve``.
Exit status: 0 success, 1 verification failure, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .category import FiniteCategory, Functor, PresentationError, load_document
from .homology import HopfInvariantError, cohomology, cup_table, homology, homology_report, hopf_invariant
from .models import MODEL_NAMES, default_registry
from .nerve import NonAcyclicError, SemiSimplicialSet, label_str, nerve, to_off
from .verify import verify_cylinder, verify_hopf

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
COMPLEX_MODELS = ("mapping_cone", "constant_cone")
FORMATS = {
    "build": ("json",),
    "realize": ("json", "text"),
    "nerve": ("json", "text"),
    "homology": ("text", "json"),
    "cohomology": ("text", "json"),
    "cup": ("text", "json"),
    "verify": ("text", "json"),
    "export": ("off", "json"),
}


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    command: str
    inputs: list
    out: str | None
    format: str
    max_dim: int | None
    quiet: bool


def load_input(spec: str, name: str | None = None):
    """Resolve an input to a FiniteCategory, Functor or SemiSimplicialSet."""
    if spec.startswith("model:"):
        model = spec[len("model:"):]
        reg = default_registry()
        if model in COMPLEX_MODELS:
            return getattr(reg, model)
        try:
            return reg.build(model)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    path = Path(spec)
    try:
        text = path.read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {spec}: {exc.strerror}") from None
    if text.lstrip().startswith("{"):
        return _from_json(json.loads(text), spec)
    realized, functors = load_document(text)
    if name is not None:
        if name in realized:
            return realized[name].category
        for F in functors:
            if F.name == name:
                return F
        raise UsageError(f"{spec}: no category or functor named {name!r}")
    if functors:
        return functors[-1]
    if len(realized) == 1:
        return next(iter(realized.values())).category
    raise UsageError(f"{spec}: several categories, choose one with --name")


def _from_json(data: dict, spec: str):
    kind = data.get("kind")
    if kind == "category":
        return FiniteCategory.from_dict(data)
    if kind == "functor":
        return Functor.from_dict(data)
    if kind == "complex":
        return SemiSimplicialSet.from_dict(data)
    raise UsageError(f"{spec}: unknown JSON kind {kind!r}")


def as_complex(obj) -> SemiSimplicialSet:
    if isinstance(obj, SemiSimplicialSet):
        return obj
    if isinstance(obj, FiniteCategory):
        return nerve(obj)
    raise UsageError(f"expected a category or a complex, got a {type(obj).__name__.lower()}")


def as_category(obj) -> FiniteCategory:
    if not isinstance(obj, FiniteCategory):
        raise UsageError(f"expected a category, got a {type(obj).__name__.lower()}")
    return obj


def emit(cfg: CliConfig, text: str) -> None:
    if cfg.out:
        Path(cfg.out).write_text(text if text.endswith("\n") else text + "\n")
    elif not cfg.quiet:
        print(text.rstrip("\n"))


def _json(data) -> str:
    return json.dumps(data, indent=1, sort_keys=True)


def cmd_build(cfg: CliConfig) -> int:
    name = cfg.inputs[0]
    if name not in MODEL_NAMES:
        raise UsageError(f"unknown model {name!r}; known: {', '.join(MODEL_NAMES)}")
    emit(cfg, default_registry().build(name).to_json())
    return EXIT_OK


def cmd_realize(cfg: CliConfig, name=None) -> int:
    C = as_category(load_input(cfg.inputs[0], name))
    if cfg.format == "json":
        emit(cfg, C.to_json())
    else:
        lines = [f"category {C.name}: {len(C.objects)} objects, {len(C.morphisms)} morphisms"]
        for m, (s, t) in sorted(C.morphisms.items()):
            if not C.is_identity(m):
                lines.append(f"  {m} : {s} -> {t}")
        emit(cfg, "\n".join(lines))
    return EXIT_OK


def cmd_nerve(cfg: CliConfig, name=None) -> int:
    X = as_complex(load_input(cfg.inputs[0], name))
    if cfg.format == "json":
        emit(cfg, X.to_json())
    else:
        emit(cfg, f"{X.name}: simplices per dimension {X.counts()}, euler characteristic {X.euler_characteristic()}")
    return EXIT_OK


def cmd_homology(cfg: CliConfig, name=None) -> int:
    X = as_complex(load_input(cfg.inputs[0], name))
    if cfg.format == "json":
        emit(cfg, _json(homology_report(X, cfg.max_dim)))
    else:
        emit(cfg, "\n".join(f"H_{g.degree} = {g}" for g in homology(X, cfg.max_dim)))
    return EXIT_OK


def cmd_cohomology(cfg: CliConfig, name=None) -> int:
    X = as_complex(load_input(cfg.inputs[0], name))
    groups, classes = cohomology(X, cfg.max_dim)
    if cfg.format == "json":
        emit(cfg, _json({
            "complex": X.name,
            "cohomology": [
                {"degree": g.degree, "rank": g.rank, "torsion": list(g.torsion),
                 "generators": [list(c.cocycle) for c in classes[g.degree]]}
                for g in groups
            ],
        }))
        return EXIT_OK
    lines = []
    for g in groups:
        lines.append(f"H^{g.degree} = {g}")
        for c in classes[g.degree]:
            support = [f"{v:+d} {label_str(s)}" for s, v in zip(X.simplices[g.degree], c.cocycle) if v]
            lines.append("  generator: " + " ".join(support))
    emit(cfg, "\n".join(lines))
    return EXIT_OK


def cmd_cup(cfg: CliConfig, name=None) -> int:
    X = as_complex(load_input(cfg.inputs[0], name))
    rows = cup_table(X)
    try:
        h = hopf_invariant(X)
    except HopfInvariantError:
        h = None
    if cfg.format == "json":
        emit(cfg, _json({
            "complex": X.name,
            "products": [{"p": p, "i": i, "q": q, "j": j, "coordinates": list(c)} for p, i, q, j, c in rows],
            "hopf_invariant": h,
        }))
        return EXIT_OK
    lines = [f"x{p}_{i} . x{q}_{j} = {list(c)}" for p, i, q, j, c in rows]
    if h is not None:
        lines.append(f"hopf invariant: {h}")
    emit(cfg, "\n".join(lines) or "no products in positive degrees")
    return EXIT_OK


def cmd_verify(cfg: CliConfig, name=None) -> int:
    suite = cfg.inputs[0]
    if suite == "hopf":
        report = verify_hopf()
    elif suite == "cylinder":
        if len(cfg.inputs) < 2:
            raise UsageError("verify cylinder needs a functor input")
        F = load_input(cfg.inputs[1], name)
        if not isinstance(F, Functor):
            raise UsageError("verify cylinder needs a functor input")
        report = verify_cylinder(F)
    else:
        raise UsageError(f"unknown suite {suite!r}; choose hopf or cylinder")
    emit(cfg, report.to_json() if cfg.format == "json" else report.to_text())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_export(cfg: CliConfig, name=None) -> int:
    X = as_complex(load_input(cfg.inputs[0], name))
    emit(cfg, to_off(X) if cfg.format == "off" else X.to_json())
    return EXIT_OK


COMMANDS = {
    "build": cmd_build,
    "realize": cmd_realize,
    "nerve": cmd_nerve,
    "homology": cmd_homology,
    "cohomology": cmd_cohomology,
    "cup": cmd_cup,
    "verify": cmd_verify,
    "export": cmd_export,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hopfcat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_, inputs):
        p = sub.add_parser(name, help=help_)
        for arg, kw in inputs:
            p.add_argument(arg, **kw)
        p.add_argument("--out", help="write the result to this file")
        p.add_argument("--format", choices=FORMATS[name], default=FORMATS[name][0])
        p.add_argument("--quiet", action="store_true", help="print nothing; rely on the exit status")
        if name not in ("build", "verify"):
            p.add_argument("--name", help="category or functor to pick from a multi-block file")
        return p

    src = ("input", {"help": "model:NAME, a presentation file or a JSON file"})
    add("build", "serialize a built-in model", [("name", {"help": "model name"})])
    add("realize", "realize a presentation as a finite category", [src])
    add("nerve", "nerve of a category", [src])
    for name, help_ in (("homology", "integer homology"), ("cohomology", "integer cohomology")):
        add(name, help_, [src]).add_argument("--max-dim", type=int, dest="max_dim")
    add("cup", "cup products of cohomology generators", [src])
    v = add("verify", "run a verification suite", [("suite", {"help": "hopf or cylinder"})])
    v.add_argument("functor", nargs="?", help="functor input for the cylinder suite")
    v.add_argument("--name", help="functor to pick from a multi-block file")
    add("export", "export a complex (OFF mesh of the 2-skeleton, or JSON)", [src])
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command == "build":
        inputs = [args.name]
    elif args.command == "verify":
        inputs = [args.suite] + ([args.functor] if args.functor else [])
    else:
        inputs = [args.input]
    cfg = CliConfig(args.command, inputs, args.out, args.format, getattr(args, "max_dim", None), args.quiet)
    handler = COMMANDS[args.command]
    try:
        if args.command == "build":
            return handler(cfg)
        return handler(cfg, getattr(args, "name", None))
    except (UsageError, PresentationError, NonAcyclicError, json.JSONDecodeError, KeyError, ValueError) as exc:
        message = exc.args[0] if exc.args else type(exc).__name__
        print(f"hopfcat: error: {message}", file=sys.stderr)
        return EXIT_USAGE
