"""Command-line front end.

Commands: check, invariants, cohomology, rigidity, contract, deform,
decompose, catalog.  Algebra arguments are file paths or `catalog:<name>`
(with --param for the named parameters).  Exit codes: 0 success, 1 for
analysis-level negative findings, 2 for usage or parse errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import document
from .catalog import catalog_build, catalog_names
from .cochains import Cochain
from .cohomology import NORMALIZATION_NOTE, coboundary, cohomology_report
from .contraction import ParametricFamily, contract, iw_family, ww_family
from .deformation import (
    ObstructionClass,
    integrate,
    perturbation_decompose,
)
from .errors import (
    BadParams,
    DuplicateBracket,
    IndexOutOfRange,
    LieAlgError,
    ParseError,
    UnknownName,
)
from .linalg import ExactMatrix
from .structure import (
    StructureConstants,
    center,
    classify_structure,
    derivations,
    derived_series,
    lower_central_series,
    validate_law,
)
from .variety import orbit_dimension, rigidity_verdict

_USAGE_ERRORS = (ParseError, UnknownName, BadParams, IndexOutOfRange, DuplicateBracket)


class _Output:
    """Collects parallel human/machine renderings of one report."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        self.lines = []

    def text(self, line: str):
        if self.fmt == "text":
            self.lines.append(line)

    def kv(self, key: str, value):
        if self.fmt == "kv":
            self.lines.append(f"{key}={value}")

    def both(self, key: str, value, label=None):
        self.kv(key, value)
        self.text(f"{label or key}: {value}")

    def dump(self):
        sys.stdout.write("\n".join(self.lines) + ("\n" if self.lines else ""))


def _parse_param_value(raw: str):
    if "," in raw:
        return tuple(_parse_param_value(part) for part in raw.split(","))
    try:
        return int(raw)
    except ValueError:
        pass
    try:
        return Fraction(raw)
    except ValueError:
        raise BadParams(f"cannot parse parameter value {raw!r}")


def _collect_params(pairs):
    params = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise BadParams(f"--param needs key=value, got {pair!r}")
        key, raw = pair.split("=", 1)
        params[key.strip()] = _parse_param_value(raw.strip())
    return params


def _load_document(source: str, params) -> document.AlgebraDocument:
    if source.startswith("catalog:"):
        entry = catalog_build(source[len("catalog:") :], params)
        return document.AlgebraDocument.from_law(entry.law, name=entry.name)
    text = Path(source).read_text()
    return document.parse(text)


def _require_constant(law: StructureConstants, command: str):
    if law.epsilon:
        raise BadParams(f"{command} needs a constant law (no eps entries)")


def _cochain_lines(label: str, phi: Cochain):
    lines = []
    for key in sorted(phi.table):
        terms = []
        for k, val in enumerate(phi.table[key]):
            if val:
                terms.append(f"{document._coeff_str(val)} e{k + 1}")
        args = ",".join(f"e{t + 1}" for t in key)
        lines.append(f"{label}({args}) = " + " + ".join(terms))
    if not lines:
        lines.append(f"{label} = 0")
    return lines


def _cmd_check(args) -> int:
    doc = _load_document(args.algebra, _collect_params(args.param))
    law = doc.to_law()
    report = validate_law(law)
    out = _Output(args.format)
    out.kv("dim", law.dim)
    out.kv("violations", len(report.violations))
    if report.ok:
        out.text("Jacobi: OK")
        out.dump()
        return 0
    out.text("Jacobi: FAILED")
    for idx, violation in enumerate(report.violations):
        i, j, k = violation.triple
        key = f"violation.{idx}"
        desc = f"triple ({i + 1},{j + 1},{k + 1}) component e{violation.component + 1}: {violation.residual}"
        out.kv(key, desc)
        out.text("  " + desc)
    out.dump()
    return 1


def _cmd_invariants(args) -> int:
    doc = _load_document(args.algebra, _collect_params(args.param))
    law = doc.to_law()
    _require_constant(law, "invariants")
    validate_law(law)
    cls = classify_structure(law)
    out = _Output(args.format)
    out.both("dim", law.dim)
    out.both("class", cls.kind)
    out.both("nilindex", cls.nilindex if cls.nilindex is not None else "-")
    out.both("solvindex", cls.solvindex if cls.solvindex is not None else "-")
    out.both("filiform", "yes" if cls.filiform else "no")
    out.both(
        "lower_central_dims",
        ",".join(str(d) for d in lower_central_series(law).dims),
    )
    out.both("derived_dims", ",".join(str(d) for d in derived_series(law).dims))
    out.both("center_dim", len(center(law)))
    out.both("derivations_dim", len(derivations(law)))
    out.both("orbit_dim", orbit_dimension(law))
    out.dump()
    return 0


def _cmd_cohomology(args) -> int:
    doc = _load_document(args.algebra, _collect_params(args.param))
    law = doc.to_law()
    _require_constant(law, "cohomology")
    validate_law(law)
    report = cohomology_report(law)
    out = _Output(args.format)
    out.kv("normalization", NORMALIZATION_NOTE)
    out.text(f"# {NORMALIZATION_NOTE}")
    out.both("dim", law.dim)
    out.text("p | dim C^p | dim Z^p | dim B^p | dim H^p")
    for degree in report.degrees:
        p = degree.degree
        out.kv(f"p{p}.cochains", degree.dim_cochains)
        out.kv(f"p{p}.cocycles", degree.dim_cocycles)
        out.kv(f"p{p}.coboundaries", degree.dim_coboundaries)
        out.kv(f"p{p}.h", degree.dim_h)
        out.text(
            f"{p} | {degree.dim_cochains:7} | {degree.dim_cocycles:7} | "
            f"{degree.dim_coboundaries:7} | {degree.dim_h:7}"
        )
    out.dump()
    return 0


def _cmd_rigidity(args) -> int:
    doc = _load_document(args.algebra, _collect_params(args.param))
    law = doc.to_law()
    _require_constant(law, "rigidity")
    validate_law(law)
    verdict = rigidity_verdict(law)
    out = _Output(args.format)
    out.kv("normalization", NORMALIZATION_NOTE)
    out.text(f"# {NORMALIZATION_NOTE}")
    out.both("dim", law.dim)
    out.both("dim_b2", verdict.dim_b2)
    out.both("dim_z2", verdict.dim_z2)
    out.both("dim_h2", verdict.dim_h2)
    out.both("orbit_dim", verdict.orbit_dim)
    out.both("ambient_dim", verdict.ambient_dim)
    out.kv("status", verdict.status)
    out.kv("note", verdict.note)
    if verdict.rigid:
        out.text("H2 = 0 -> RIGID")
    else:
        out.text(f"H2 = {verdict.dim_h2} -> INCONCLUSIVE ({verdict.note})")
    out.dump()
    return 0


def _build_family(args, law: StructureConstants) -> ParametricFamily:
    chosen = [opt for opt in (args.weights, args.iw, args.family) if opt is not None]
    if len(chosen) != 1:
        raise BadParams("contract needs exactly one of --weights, --iw, --family")
    if args.weights is not None:
        weights = [int(w) for w in args.weights.split(",")]
        if len(weights) != law.dim:
            raise BadParams(f"--weights needs {law.dim} integers")
        return ww_family(weights)
    if args.iw is not None:
        return iw_family(law, args.iw)
    dim, columns = document.parse_family(Path(args.family).read_text())
    if dim != law.dim:
        raise BadParams("family dimension does not match the algebra")
    return ParametricFamily.from_images(columns)


def _cmd_contract(args) -> int:
    doc = _load_document(args.algebra, _collect_params(args.param))
    law = doc.to_law()
    _require_constant(law, "contract")
    validate_law(law)
    family = _build_family(args, law)
    limit = contract(law, family)
    sys.stdout.write(document.serialize(document.AlgebraDocument.from_law(limit)))
    return 0


def _cmd_deform(args) -> int:
    doc = _load_document(args.algebra, _collect_params(args.param))
    law = doc.to_law()
    _require_constant(law, "deform")
    validate_law(law)
    cocycle_doc = document.parse(Path(args.cocycle).read_text())
    cocycle_law = cocycle_doc.to_law()
    if cocycle_law.epsilon or cocycle_law.dim != law.dim:
        raise BadParams("--cocycle must be a constant bracket table of matching dim")
    phi = Cochain.from_law(cocycle_law)
    out = _Output(args.format)
    out.kv("normalization", NORMALIZATION_NOTE)
    out.text(f"# {NORMALIZATION_NOTE}")
    out.both("order", args.order)
    if not coboundary(law, phi, 3).is_zero():
        out.both("cocycle", "no", "infinitesimal term is a cocycle")
        out.dump()
        return 1
    out.both("cocycle", "yes", "infinitesimal term is a cocycle")
    result = integrate(law, phi, args.order)
    for degree, term in result.deformation.terms:
        out.kv(f"term.{degree}.nonzero", "yes" if not term.is_zero() else "no")
        out.text(f"degree {degree}: solved")
    if result.ok:
        out.both("integrable", "yes")
        out.dump()
        return 0
    out.both("integrable", "no")
    out.both("failed_degree", result.failed_degree)
    for line in _cochain_lines("obstruction", result.obstruction.representative):
        out.text("  " + line)
        out.kv("obstruction", line)
    out.dump()
    return 1


def _cmd_decompose(args) -> int:
    doc = _load_document(args.algebra, _collect_params(args.param))
    law = doc.to_law()
    if not law.epsilon:
        raise BadParams("decompose needs a perturbed law with eps entries")
    base_entries = {}
    for i, j, k, val in law.items():
        const = val.coefficient(0)
        if const:
            base_entries[(i, j, k)] = const
    base = StructureConstants(law.dim, base_entries)
    decomposition = perturbation_decompose(law, base)
    out = _Output(args.format)
    out.both("dim", law.dim)
    out.both("length", decomposition.length)
    for idx, (multiplier, cochain) in enumerate(
        zip(decomposition.multipliers, decomposition.cochains), start=1
    ):
        out.kv(f"multiplier.{idx}", multiplier)
        out.text(f"b{idx} = {multiplier}")
        for line in _cochain_lines(f"phi{idx}", cochain):
            out.kv(f"phi.{idx}", line)
            out.text("  " + line)
    out.dump()
    return 0


def _cmd_catalog(args) -> int:
    if args.name is None:
        sys.stdout.write("\n".join(catalog_names()) + "\n")
        return 0
    entry = catalog_build(args.name, _collect_params(args.param))
    sys.stdout.write(
        document.serialize(document.AlgebraDocument.from_law(entry.law, name=entry.name))
    )
    return 0


def _add_common(sub, with_format=True):
    sub.add_argument("algebra", help="algebra file path or catalog:<name>")
    sub.add_argument(
        "--param",
        action="append",
        metavar="K=V",
        help="catalog parameter (repeatable)",
    )
    if with_format:
        sub.add_argument(
            "--format",
            choices=("text", "kv"),
            default="text",
            help="report format (default text)",
        )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="liealg",
        description="Exact toolkit for complex Lie algebra laws given by "
        "structure constants.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    _add_common(sub.add_parser("check", help="Jacobi validation report"))
    _add_common(sub.add_parser("invariants", help="series, center, derivations"))
    _add_common(sub.add_parser("cohomology", help="H^0..H^3 dimension table"))
    _add_common(sub.add_parser("rigidity", help="open-orbit certificate"))

    contract_p = sub.add_parser("contract", help="symbolic eps -> 0 limit")
    _add_common(contract_p, with_format=False)
    contract_p.add_argument("--weights", help="comma-separated integer exponents")
    contract_p.add_argument("--iw", type=int, help="size of the invariant subalgebra")
    contract_p.add_argument("--family", help="family file with map lines")

    deform_p = sub.add_parser("deform", help="order-by-order integration")
    _add_common(deform_p)
    deform_p.add_argument("--cocycle", required=True, help="bracket file of the term")
    deform_p.add_argument("--order", type=int, default=3, help="target degree")

    decompose_p = sub.add_parser(
        "decompose", help="flag decomposition of a perturbed law"
    )
    _add_common(decompose_p)

    catalog_p = sub.add_parser("catalog", help="print a named algebra document")
    catalog_p.add_argument("name", nargs="?", help="catalog name (omit to list)")
    catalog_p.add_argument("--param", action="append", metavar="K=V")
    return parser


_COMMANDS = {
    "check": _cmd_check,
    "invariants": _cmd_invariants,
    "cohomology": _cmd_cohomology,
    "rigidity": _cmd_rigidity,
    "contract": _cmd_contract,
    "deform": _cmd_deform,
    "decompose": _cmd_decompose,
    "catalog": _cmd_catalog,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except LieAlgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
