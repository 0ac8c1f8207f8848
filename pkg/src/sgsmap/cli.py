"""Command-line front end.

Exit status: 0 when every check passes, 1 when a check fails or a
hypothesis is violated, 2 for unreadable or invalid input, 3 when a
requested computation exceeds the simplex budget.
"""

from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import catalog
from .complexes import BudgetExceeded, SimplicialComplex, from_text
from .exactalg import Ring
from .oracle import DEFAULT_BUDGET, build_total_space, export_text, verify
from .report import ReportDocument, as_plain, render_data, render_text
from .sgsmodel import (
    HypothesisError,
    SGSMapSpec,
    SpecError,
    TargetMeta,
    decompose_nonsurjective,
    make_spec,
    predict_special_generic,
    predict_submodules,
    total_dimension,
    validate,
)

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

KEYS = ("base", "boundary_order", "fiber", "assignment", "coefficients", "target")


class SpecFileError(ValueError):
    def __init__(self, diagnostics: list[str]):
        super().__init__("\n".join(diagnostics))
        self.diagnostics = diagnostics


@dataclass
class SpecFile:
    base: str
    fiber: list[int]
    assignment: list[int]
    boundary_order: list[str] | None = None
    coefficients: list[Ring] | None = None
    target: str = ""
    origin: Path | None = None
    lines: dict[str, int] = field(default_factory=dict)

    def load_base(self) -> SimplicialComplex:
        try:
            return catalog.build(self.base)
        except ValueError as e:
            if "(" in self.base:
                raise SpecFileError([f"line {self.lines.get('base', 0)}: {e}"]) from None
        path = Path(self.base)
        if not path.is_absolute() and self.origin is not None:
            path = self.origin.parent / path
        try:
            return from_text(path.read_text())
        except OSError as e:
            raise SpecFileError([f"line {self.lines.get('base', 0)}: cannot read base complex {path}: {e.strerror}"]) from None
        except ValueError as e:
            raise SpecFileError([f"{path}: {e}"]) from None

    def to_spec(self, c0: str | None = None) -> SGSMapSpec:
        W = self.load_base()
        spec = make_spec(
            W,
            self.fiber,
            self.assignment,
            order=self.boundary_order,
            c0=c0,
            base_name=self.base,
            target=TargetMeta(self.target, W.dim) if self.target else None,
        )
        diags = validate(spec)
        if diags:
            raise SpecError(diags)
        return spec


_LIST = re.compile(r"^\[(.*)\]$")


def _parse_list(value: str, lineno: int, col: int) -> list[str]:
    m = _LIST.match(value)
    if not m:
        raise SpecFileError([f"line {lineno}, column {col}: expected a list like [1, 2], got {value!r}"])
    inner = m.group(1).strip()
    if not inner:
        return []
    items = [x.strip() for x in inner.split(",")]
    if any(not x for x in items):
        raise SpecFileError([f"line {lineno}, column {col}: empty list item in {value!r}"])
    return items


def _ints(items: list[str], lineno: int, col: int) -> list[int]:
    try:
        return [int(x) for x in items]
    except ValueError:
        raise SpecFileError([f"line {lineno}, column {col}: list items must be integers, got {items}"]) from None


def parse_spec_text(text: str, origin: Path | None = None) -> SpecFile:
    """Flat ``key = value`` lines; ``#`` starts a comment line."""
    values: dict[str, tuple[str, int, int]] = {}
    diags = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        # 1-based column where the value starts
        col = len(raw) - len(raw[raw.index("=") + 1 :].lstrip()) + 1 if sep else 1
        if not sep:
            diags.append(f"line {lineno}, column 1: expected 'key = value'")
            continue
        if key not in KEYS:
            diags.append(f"line {lineno}, column 1: unknown key {key!r}; allowed: {', '.join(KEYS)}")
            continue
        if key in values:
            diags.append(f"line {lineno}, column 1: duplicate key {key!r} (first on line {values[key][1]})")
            continue
        if not value:
            diags.append(f"line {lineno}, column {col}: missing value for {key!r}")
            continue
        values[key] = (value, lineno, col)
    for key in ("base", "fiber", "assignment"):
        if key not in values:
            diags.append(f"missing required key {key!r}")
    if diags:
        raise SpecFileError(diags)

    def field_list(key):
        v, ln, col = values[key]
        return _parse_list(v, ln, col), ln, col

    out_diags = []
    parsed = {}
    for key in ("fiber", "assignment"):
        try:
            items, ln, col = field_list(key)
            parsed[key] = _ints(items, ln, col)
        except SpecFileError as e:
            out_diags += e.diagnostics
    order = None
    if "boundary_order" in values:
        try:
            order, _, _ = field_list("boundary_order")
        except SpecFileError as e:
            out_diags += e.diagnostics
    coeffs = None
    if "coefficients" in values:
        try:
            items, ln, col = field_list("coefficients")
            coeffs = []
            for x in items:
                try:
                    coeffs.append(Ring.parse(x))
                except ValueError as e:
                    out_diags.append(f"line {ln}, column {col}: {e}")
        except SpecFileError as e:
            out_diags += e.diagnostics
    if out_diags:
        raise SpecFileError(out_diags)
    return SpecFile(
        base=values["base"][0],
        fiber=parsed["fiber"],
        assignment=parsed["assignment"],
        boundary_order=order,
        coefficients=coeffs,
        target=values.get("target", ("", 0, 0))[0],
        origin=origin,
        lines={k: v[1] for k, v in values.items()},
    )


def parse_spec(path: str | Path) -> SpecFile:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise SpecFileError([f"cannot read {path}: {e.strerror}"]) from None
    return parse_spec_text(text, origin=path)


# -- commands -------------------------------------------------------------


def _coeff_plan(arg: str | None, sf: SpecFile | None) -> tuple[list[Ring], bool]:
    """Coefficient rings to run and whether Z is optional (skipped when over budget)."""
    if arg == "z":
        return [Ring.Z], False
    if arg == "z2":
        return [Ring.Z2], False
    if arg == "both":
        return [Ring.Z2, Ring.Z], False
    if sf is not None and sf.coefficients:
        return sorted(set(sf.coefficients), key=lambda r: r is Ring.Z), False
    return [Ring.Z2, Ring.Z], True


def _spec_fields(spec: SGSMapSpec) -> dict:
    return {
        "base": spec.base_name,
        "n": spec.n,
        "m": total_dimension(spec),
        "l1": spec.l1,
        "l2": spec.l2,
        "fiber": list(spec.fiber.dims),
        "components": [c.name for c in spec.components],
        "assignment": [spec.factor_of(j) for j in range(spec.l2)],
    }


def cmd_catalog(args) -> tuple[ReportDocument, int]:
    doc = ReportDocument("catalog")
    doc.sections.append(("entries", {e.name: e.summary for e in catalog.CATALOG.values()}))
    return doc, EXIT_OK


def cmd_predict(args, sf: SpecFile, spec: SGSMapSpec) -> tuple[ReportDocument, int]:
    doc = ReportDocument("predict", _spec_fields(spec))
    rings, _ = _coeff_plan(args.coeff, sf)
    status = EXIT_OK
    for R in rings:
        body: dict = {}
        try:
            certs = predict_submodules(spec, R)
        except HypothesisError as e:
            body["hypothesis"] = str(e)
            doc.sections.append((str(R), body))
            status = EXIT_FAILED
            continue
        if spec.l1 == 1 and spec.l2 >= 1:
            body["homology"] = list(predict_special_generic(spec, R).betti)
        else:
            body["homology"] = "not predicted for l1 > 1 or closed base; run verify"
        for fam in ("base", "relative-dual", "boundary-product"):
            body[fam] = [
                {"degree": c.degree, "rank": c.rank, "generators": [g.label() for g in c.generators]}
                for c in certs.family(fam)
            ]
        body["disjoint"] = [{"degree": c.degree, "families": list(c.families)} for c in certs.claims]
        doc.sections.append((str(R), body))
    dec = decompose_nonsurjective(spec)
    doc.fields["decomposition"] = "assignment surjective" if dec is None else dec.describe()
    return doc, status


def cmd_build(args, sf: SpecFile, spec: SGSMapSpec) -> tuple[ReportDocument, int]:
    model = build_total_space(spec)
    M = model.complex
    text = export_text(model)
    args.export = text
    doc = ReportDocument("build", _spec_fields(spec))
    body = {
        "f_vector": list(M.f_vector()),
        "euler_characteristic": M.euler_characteristic(),
        "pieces": {k: p.count(p.dim) for k, p in model.pieces.items()},
        "seams": {k: s.count(s.dim) for k, s in model.seams.items()},
    }
    if args.complex_out:
        Path(args.complex_out).write_text(text)
        body["complex_file"] = str(args.complex_out)
    doc.sections.append(("complex", body))
    return doc, EXIT_OK


def cmd_verify(args, sf: SpecFile, spec: SGSMapSpec) -> tuple[ReportDocument, int]:
    doc = ReportDocument("verify", _spec_fields(spec))
    rings, z_optional = _coeff_plan(args.coeff, sf)
    status = EXIT_OK
    timings = {}
    for R in rings:
        budget = args.budget
        rep = verify(spec, R, budget=budget)
        body = as_plain(rep)
        body.pop("spec")
        body.pop("timings")
        body["checks"] = [c for c in body["checks"]]
        body["ok"] = rep.ok
        doc.sections.append((str(R), body))
        timings.update({f"{R}.{k}": v for k, v in rep.timings.items()})
        if rep.budget_exceeded:
            if R is Ring.Z and z_optional:
                body["ok"] = None
                body["skipped"] = "Z over the simplex budget; Z/2 only"
                continue
            status = max(status, EXIT_BUDGET)
        elif not rep.ok:
            status = EXIT_FAILED if status != EXIT_BUDGET else status
    if args.timings:
        doc.timings = timings
    return doc, status


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sgsmap", description="Total spaces of maps with sphere-product fibers: predict, build, verify.")
    sub = p.add_subparsers(dest="command", required=True)
    cat = sub.add_parser("catalog", help="list base manifolds")
    cat.add_argument("--format", choices=("text", "data"), default="text")
    cat.add_argument("--out", default=None, help="write the listing here")
    for name, help_ in (
        ("predict", "theorem-backed certificates and predictions"),
        ("build", "triangulate the total space"),
        ("verify", "compare every prediction with the oracle"),
    ):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("spec", help="spec file")
        sp.add_argument("--coeff", choices=("z", "z2", "both"), default=None)
        sp.add_argument("--c0", default=None, help="boundary component to use as C0 (e.g. C1)")
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max simplices per degree for exact work")
        sp.add_argument("--out", default=None, help="write the report here")
        sp.add_argument("--format", choices=("text", "data"), default="text")
        sp.add_argument("--timings", action="store_true", help="append a timings section")
        if name == "build":
            sp.add_argument("--complex-out", default=None, help="also write the complex file here")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK

    if args.command == "catalog":
        doc, status = cmd_catalog(args)
    else:
        try:
            sf = parse_spec(args.spec)
            spec = sf.to_spec(c0=args.c0)
        except (SpecFileError, SpecError) as e:
            for d in e.diagnostics:
                print(f"{args.spec}: {d}", file=sys.stderr)
            return EXIT_INPUT
        try:
            doc, status = {"predict": cmd_predict, "build": cmd_build, "verify": cmd_verify}[args.command](args, sf, spec)
        except BudgetExceeded as e:
            print(f"budget exceeded: {e}", file=sys.stderr)
            return EXIT_BUDGET

    if args.command == "build" and args.format == "text":
        # the export already carries the size summary as comment lines
        text = args.export
    elif args.format == "data":
        text = render_data(doc)
    else:
        text = render_text(doc)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
