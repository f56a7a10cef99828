"""Command line front end.

Algebras and modules are named by small descriptor expressions:

    algebra:  sl2 | slN            combined with  o+
    module:   V(n) | adjoint | natural | trivial(d)
              combined with  o+  (sum over one algebra)
              and            (x) (tensor across the summands of a direct sum)

The unicode spellings of the two operators are accepted on input and
normalized to the ASCII ones on output.  Rational arguments are written
p/q (or just p); decimal notation is rejected.  Output is byte
deterministic for identical input.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import catalog, delta_solver, lie_core
from .exact_arith import format_rational, parse_rational
from .lie_core import (
    AlgebraMismatch,
    HomomorphismViolation,
    IndexOutOfRange,
    JacobiViolation,
    LieAlgebra,
    NotDiagonal,
    Representation,
)


class ParseError(Exception):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (at position {position})")


class SemanticError(Exception):
    pass


@dataclass
class JobSpec:
    command: str
    algebra: str | None = None
    module: str | None = None
    delta: Fraction | None = None
    include_zero: bool = False
    grading_element: int | None = None
    fmt: str = "json"
    input_path: str | None = None
    output_path: str | None = None
    max_n: int = 4


# ---------------------------------------------------------------------------
# descriptor grammar
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""(?:
        (?P<SL>sl\d+)
      | (?P<V>V\(\d+\))
      | (?P<TRIVIAL>trivial\(\d+\))
      | (?P<ADJOINT>adjoint)
      | (?P<NATURAL>natural)
      | (?P<OPLUS>oplus|o\+|⊕)
      | (?P<OTIMES>otimes|\(x\)|⊗)
    )""",
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected input {text[pos : pos + 10]!r}", pos)
        tokens.append((m.lastgroup, m.group(m.lastgroup), pos))
        pos = m.end()
    return tokens


def parse_algebra_descriptor(text: str) -> tuple[LieAlgebra, list[str]]:
    """Parse an algebra expression; returns the algebra and its atom list."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty algebra descriptor", 0)
    parts: list[str] = []
    algebras: list[LieAlgebra] = []
    expect_atom = True
    for kind, value, pos in tokens:
        if expect_atom:
            if kind != "SL":
                if kind in ("V", "ADJOINT", "NATURAL", "TRIVIAL"):
                    raise SemanticError(f"{value!r} names a module, not an algebra")
                raise ParseError(f"expected an algebra name, got {value!r}", pos)
            n = int(value[2:])
            if n == 2:
                algebras.append(lie_core.sl2())
            elif n >= 3:
                algebras.append(lie_core.sl_n(n)[0])
            else:
                raise SemanticError(f"{value!r}: matrix rank must be at least 2")
            parts.append(value)
            expect_atom = False
        else:
            if kind == "OTIMES":
                raise SemanticError("the tensor operator combines modules, not algebras")
            if kind != "OPLUS":
                raise ParseError(f"expected 'o+', got {value!r}", pos)
            expect_atom = True
    if expect_atom:
        raise ParseError("dangling operator in algebra descriptor", len(text))
    if len(algebras) == 1:
        return algebras[0], parts
    return lie_core.direct_sum_algebras(algebras), parts


def _module_atom(kind: str, value: str, part: str, algebra: LieAlgebra) -> Representation:
    if kind == "V":
        if part != "sl2":
            raise SemanticError(f"V(n) is a module of sl2, not of {part!r}")
        return lie_core.sl2_module(int(value[2:-1]))
    if kind == "ADJOINT":
        return lie_core.adjoint_module(algebra)
    if kind == "TRIVIAL":
        return lie_core.trivial_module(algebra, int(value[len("trivial(") : -1]))
    if kind == "NATURAL":
        if not re.fullmatch(r"sl\d+", part) or part == "sl2":
            raise SemanticError(
                f"'natural' needs a matrix algebra slN with N >= 3, not {part!r}; "
                "over sl2 use V(1)"
            )
        return lie_core.sl_n(int(part[2:]))[1]
    raise SemanticError(f"{value!r} cannot appear in a module descriptor")


def parse_module_descriptor(
    text: str, algebra: LieAlgebra, parts: list[str]
) -> tuple[Representation, str]:
    """Parse a module expression over a parsed algebra.

    A tensor term must have exactly one factor per algebra summand;
    summands of an o+ combination must all be modules of the full algebra.
    Returns the module and the canonical (ASCII) form of the descriptor.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty module descriptor", 0)
    part_algebras: list[LieAlgebra] | None = None  # built lazily for tensors
    terms: list[Representation] = []
    term_texts: list[str] = []
    i = 0
    while True:
        factors: list[tuple[str, str, int]] = []
        while True:
            if i >= len(tokens):
                raise ParseError("dangling operator in module descriptor", len(text))
            kind, value, pos = tokens[i]
            if kind in ("OPLUS", "OTIMES"):
                raise ParseError(f"expected a module name, got {value!r}", pos)
            if kind == "SL":
                raise SemanticError(f"{value!r} names an algebra, not a module")
            factors.append((kind, value, pos))
            i += 1
            if i < len(tokens) and tokens[i][0] == "OTIMES":
                i += 1
                continue
            break
        if len(factors) == 1:
            kind, value, pos = factors[0]
            if kind == "V" and len(parts) != 1:
                raise SemanticError("V(n) needs the algebra to be a single sl2 summand")
            if kind == "NATURAL" and len(parts) != 1:
                raise SemanticError("'natural' needs a single matrix-algebra summand")
            part = parts[0] if len(parts) == 1 else None
            terms.append(_module_atom(kind, value, part, algebra))
            term_texts.append(_canonical_atom(kind, value))
        else:
            if len(factors) != len(parts):
                raise SemanticError(
                    f"tensor term has {len(factors)} factors but the algebra has "
                    f"{len(parts)} summands"
                )
            if part_algebras is None:
                part_algebras = [parse_algebra_descriptor(p)[0] for p in parts]
            built = None
            for (kind, value, pos), part, part_alg in zip(factors, parts, part_algebras):
                factor = _module_atom(kind, value, part, part_alg)
                built = factor if built is None else lie_core.tensor_module(built, factor)
            if built.algebra != algebra:
                raise SemanticError("tensor term does not assemble over the given algebra")
            terms.append(built)
            term_texts.append(" (x) ".join(_canonical_atom(k, v) for k, v, _ in factors))
        if i >= len(tokens):
            break
        kind, value, pos = tokens[i]
        if kind != "OPLUS":
            raise ParseError(f"expected 'o+', got {value!r}", pos)
        i += 1
    module = terms[0] if len(terms) == 1 else lie_core.direct_sum_modules(terms)
    return module, " o+ ".join(term_texts)


def _canonical_atom(kind: str, value: str) -> str:
    return value


def canonical_algebra_descriptor(parts: list[str]) -> str:
    return " o+ ".join(parts)


# ---------------------------------------------------------------------------
# JSON schemas for custom algebras and modules
# ---------------------------------------------------------------------------


def algebra_to_json(alg: LieAlgebra) -> dict:
    brackets = []
    for (i, j), terms in sorted(alg.structure.items()):
        for k, c in terms:
            brackets.append([i, j, k, format_rational(c)])
    return {
        "dim": alg.dim,
        "brackets": brackets,
        "labels": list(alg.basis_labels),
        "summands": [list(b) for b in alg.summand_boundaries],
    }


def module_to_json(rep: Representation) -> dict:
    out = {
        "dim": rep.dim_v,
        "action": [
            [[format_rational(x) for x in row] for row in mat] for mat in rep.action
        ],
    }
    if rep.weight_labels is not None:
        out["weights"] = list(rep.weight_labels)
    return out


def algebra_from_json(data: dict) -> LieAlgebra:
    entries = [
        (int(i), int(j), int(k), parse_rational(str(c))) for i, j, k, c in data["brackets"]
    ]
    return lie_core.algebra_from_structure_constants(
        int(data["dim"]),
        entries,
        labels=data.get("labels"),
        summand_boundaries=data.get("summands"),
    )


def module_from_json(data: dict, algebra: LieAlgebra) -> Representation:
    matrices = [
        [[parse_rational(str(x)) for x in row] for row in mat] for mat in data["action"]
    ]
    return lie_core.representation_from_action(
        algebra, matrices, weights=data.get("weights")
    )


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def _display_labels(alg: LieAlgebra) -> list[str]:
    """Basis labels, suffixed with the summand number when there are several."""
    if len(alg.summand_boundaries) <= 1:
        return list(alg.basis_labels)
    labels = list(alg.basis_labels)
    for s, (lo, hi) in enumerate(alg.summand_boundaries, start=1):
        for a in range(lo, hi):
            labels[a] = f"{labels[a]}[{s}]"
    return labels


def _render_map(D, labels) -> str:
    pieces = []
    for a, row in enumerate(D):
        terms = []
        for m, c in enumerate(row):
            if c == 0:
                continue
            if c == 1:
                terms.append(f"v{m}")
            elif c == -1:
                terms.append(f"-v{m}")
            else:
                terms.append(f"{c}*v{m}")
        if terms:
            pieces.append(f"{labels[a]} -> " + " + ".join(terms))
    return ", ".join(pieces) if pieces else "0"


def _space_to_json(space: delta_solver.DerivationSpace) -> dict:
    out = {
        "delta": format_rational(space.delta),
        "dimension": space.dimension,
        "basis": [
            [[format_rational(x) for x in row] for row in D] for D in space.basis
        ],
    }
    if space.weights is not None:
        out["weights"] = [format_rational(w) for w in space.weights]
    return out


def _space_to_text(space: delta_solver.DerivationSpace, labels) -> str:
    lines = [f"delta: {format_rational(space.delta)}", f"dimension: {space.dimension}"]
    for t, D in enumerate(space.basis):
        tag = f" (weight {space.weights[t]})" if space.weights is not None else ""
        lines.append(f"  [{t}] {_render_map(D, labels)}{tag}")
    return "\n".join(lines)


def _scan_to_json(report: delta_solver.ScanReport) -> dict:
    return {
        "generic_rank": report.generic_rank,
        "findings": [
            {"delta": format_rational(d), "dimension": dim}
            for d, dim in report.findings.items()
        ],
        "nonrational_factors": [str(p) for p in report.nonrational_factors],
    }


def _scan_to_text(report: delta_solver.ScanReport) -> str:
    lines = [f"generic rank: {report.generic_rank}", "delta      dimension"]
    for d, dim in report.findings.items():
        lines.append(f"{format_rational(d):<10} {dim}")
    if report.nonrational_factors:
        lines.append("unresolved factors: " + "; ".join(str(p) for p in report.nonrational_factors))
    else:
        lines.append("unresolved factors: none")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# job execution
# ---------------------------------------------------------------------------


def _load_inputs(job: JobSpec) -> tuple[LieAlgebra, Representation, dict]:
    """Resolve the algebra and module from descriptors or a JSON file."""
    meta: dict = {}
    if job.input_path is not None:
        if job.algebra is not None or job.module is not None:
            raise SemanticError("give either --input or descriptor flags, not both")
        with open(job.input_path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        if "algebra" not in data or "module" not in data:
            raise SemanticError("input file needs 'algebra' and 'module' entries")
        algebra = algebra_from_json(data["algebra"])
        module = module_from_json(data["module"], algebra)
        return algebra, module, meta
    if job.algebra is None or job.module is None:
        raise SemanticError("both --algebra and --module are required")
    algebra, parts = parse_algebra_descriptor(job.algebra)
    module, canonical_module = parse_module_descriptor(job.module, algebra, parts)
    meta["algebra_descriptor"] = canonical_algebra_descriptor(parts)
    meta["module_descriptor"] = canonical_module
    return algebra, module, meta


def _emit(job: JobSpec, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if job.output_path is not None:
        with open(job.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(job: JobSpec) -> int:
    """Execute a job; returns the process exit code."""
    if job.command == "verify":
        report = catalog.verify_all(job.max_n)
        if job.fmt == "json":
            _emit(job, json.dumps(report.to_json(), indent=2))
        else:
            _emit(job, report.to_text())
        return 0 if report.ok else 1

    algebra, module, meta = _load_inputs(job)

    if job.command == "solve":
        space = delta_solver.solve(
            algebra, module, job.delta, use_grading=job.grading_element
        )
        if job.fmt == "json":
            _emit(job, json.dumps(_space_to_json(space), indent=2))
        else:
            _emit(job, _space_to_text(space, _display_labels(algebra)))
        return 0

    if job.command == "scan":
        report = delta_solver.scan(algebra, module, include_zero=job.include_zero)
        if job.fmt == "json":
            _emit(job, json.dumps(_scan_to_json(report), indent=2))
        else:
            _emit(job, _scan_to_text(report))
        return 0

    if job.command == "describe":
        payload = {"algebra": algebra_to_json(algebra), "module": module_to_json(module)}
        if "algebra_descriptor" in meta:
            payload["algebra"]["descriptor"] = meta["algebra_descriptor"]
            payload["module"]["descriptor"] = meta["module_descriptor"]
        if job.fmt == "json":
            _emit(job, json.dumps(payload, indent=2))
        else:
            lines = [
                f"algebra: {meta.get('algebra_descriptor', '(from file)')}",
                f"  dim {algebra.dim}, labels {', '.join(algebra.basis_labels)}",
                f"  summands {[list(b) for b in algebra.summand_boundaries]}",
                f"module: {meta.get('module_descriptor', '(from file)')}",
                f"  dim {module.dim_v}",
            ]
            _emit(job, "\n".join(lines))
        return 0

    raise SemanticError(f"unknown command {job.command!r}")


_NEGATIVE_RATIONAL = re.compile(r"^-\d+(/\d+)?$")


def _merge_negative_values(argv: list[str]) -> list[str]:
    """Join '--delta -2/3' into '--delta=-2/3' so argparse accepts it."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok == "--delta" and i + 1 < len(argv) and _NEGATIVE_RATIONAL.match(argv[i + 1]):
            out.append(f"--delta={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="deltader",
        description="Exact twisted-derivation spaces of finite-dimensional Lie algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_delta=False, with_scan_flags=False):
        p.add_argument("--algebra", help="algebra descriptor, e.g. 'sl2' or 'sl2 o+ sl3'")
        p.add_argument("--module", help="module descriptor, e.g. 'V(3)' or 'V(1) (x) V(0)'")
        p.add_argument("--input", dest="input_path", help="JSON file with algebra and module")
        p.add_argument("--output", dest="output_path", help="write the result here")
        p.add_argument("--format", dest="fmt", choices=("json", "table"), default="json")
        if with_delta:
            p.add_argument("--delta", help="rational scalar p/q")
            p.add_argument(
                "--grading-element",
                dest="grading_element",
                type=int,
                help="basis index of a diagonal element; solve blockwise",
            )
        if with_scan_flags:
            p.add_argument("--include-zero", dest="include_zero", action="store_true")

    add_common(sub.add_parser("solve", help="kernel at a fixed delta"), with_delta=True)
    add_common(sub.add_parser("scan", help="all rational delta with nonzero kernel"),
               with_scan_flags=True)
    add_common(sub.add_parser("describe", help="echo the parsed algebra and module"))
    verify = sub.add_parser("verify", help="replay the classification against the solver")
    verify.add_argument("--max-n", dest="max_n", type=int, default=4)
    verify.add_argument("--output", dest="output_path")
    verify.add_argument("--format", dest="fmt", choices=("json", "table"), default="table")
    return parser


def build_jobspec(argv: list[str]) -> JobSpec:
    args = _build_parser().parse_args(_merge_negative_values(argv))
    job = JobSpec(command=args.command)
    for field in (
        "algebra",
        "module",
        "input_path",
        "output_path",
        "fmt",
        "grading_element",
        "include_zero",
        "max_n",
    ):
        if hasattr(args, field):
            setattr(job, field, getattr(args, field))
    if job.command == "solve":
        if args.delta is None:
            raise SemanticError("solve requires --delta")
        job.delta = parse_rational(args.delta)
    if job.command == "verify" and job.max_n < 1:
        raise SemanticError("--max-n must be at least 1")
    return job


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    try:
        job = build_jobspec(argv)
        return run(job)
    except (
        ParseError,
        SemanticError,
        AlgebraMismatch,
        IndexOutOfRange,
        JacobiViolation,
        HomomorphismViolation,
        NotDiagonal,
        ValueError,
        OSError,
        json.JSONDecodeError,
        KeyError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
