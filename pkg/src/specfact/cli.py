"""Problem-file parsing, the four subcommands, and report rendering.

Problem files are JSON with element and rational-function literals in
the expression grammar.  Exact renderings in reports reparse to the same
objects; decimal renderings are clearly non-authoritative.  Exit codes:
0 success, 1 certificate or verification failure, 2 input error,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .completion import UnitRow, complete, verify_unit_row
from .construct import PhiRow, construct_paraunitary
from .errors import InternalInvariantError, ProblemFormatError, SpecfactError
from .expressions import (build_tower, parse_element, parse_ratfn, render_element,
                          render_ratfn)
from .fields import FieldElement, FieldTower
from .matrices import RatMatrix
from .ratfun import PartialFraction, Poly, PoleSpec, RationalFn
from .spectral import TriangularFactor, factorize, verify_against_S

TASKS = ("factor-f", "spectral", "complete", "verify")
RENDER_MODES = ("exact", "decimal", "both")


@dataclass
class Options:
    expect_polynomial: bool = False
    max_degree: Optional[int] = None
    render: str = "exact"
    precision: int = 12

    def to_json(self) -> dict:
        out: dict = {"render": self.render, "precision": self.precision}
        if self.expect_polynomial:
            out["expect_polynomial"] = True
        if self.max_degree is not None:
            out["max_degree"] = self.max_degree
        return out


@dataclass
class ProblemFile:
    task: str
    tower: FieldTower
    radicands: tuple
    gaussian: bool
    options: Options
    phi_row: Optional[PhiRow] = None
    triangular: Optional[TriangularFactor] = None
    s_matrix: Optional[RatMatrix] = None
    unit_row: Optional[UnitRow] = None

    def to_json(self) -> dict:
        """Canonical re-rendering; parses back to an identical problem."""
        out: dict = {
            "field": {"radicands": list(self.radicands), "gaussian": self.gaussian},
            "task": self.task,
            "options": self.options.to_json(),
        }
        if self.phi_row is not None:
            out["payload"] = {"m": self.phi_row.m,
                              "phis": [_render_pf_terms(p) for p in self.phi_row.phis]}
        elif self.triangular is not None:
            payload = {"matrix": _render_matrix(self.triangular.matrix),
                       "pole_data": [
                           {"row": i, "col": j, "location": render_element(s.location),
                            "order": s.order}
                           for (i, j), specs in sorted(self.triangular.pole_data.items())
                           for s in specs]}
            if self.s_matrix is not None:
                payload["s"] = _render_matrix(self.s_matrix)
            out["payload"] = payload
        elif self.unit_row is not None:
            out["payload"] = {
                "row": [render_ratfn(v) for v in self.unit_row.v],
                "reflected_poles": [[_render_spec(s) for s in specs]
                                    for specs in self.unit_row.reflected_poles],
                "vm_disk_zeros": [_render_spec(s) for s in self.unit_row.vm_disk_zeros]}
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, ProblemFile) and self.to_json() == other.to_json()


def _render_spec(spec: PoleSpec) -> dict:
    return {"location": render_element(spec.location), "order": spec.order}


def _render_pf_terms(pf: PartialFraction) -> list[dict]:
    return [{"pole": render_element(pole), "coeffs": [render_element(c) for c in coeffs]}
            for pole, coeffs in pf.terms]


def _render_matrix(matrix: RatMatrix) -> list[list[str]]:
    return [[render_ratfn(e) for e in row] for row in matrix.entries]


# ----------------------------------------------------------------------
# parsing

def _require(obj: dict, key: str, where: str):
    if key not in obj:
        raise ProblemFormatError("missing key %r in %s" % (key, where))
    return obj[key]


def _check_keys(obj: dict, allowed: Sequence[str], where: str) -> None:
    if not isinstance(obj, dict):
        raise ProblemFormatError("%s must be an object" % where)
    for key in obj:
        if key not in allowed:
            raise ProblemFormatError("unknown key %r in %s" % (key, where))


def _parse_spec(obj: dict, tower: FieldTower, where: str) -> PoleSpec:
    _check_keys(obj, ("location", "order"), where)
    location = parse_element(_require(obj, "location", where), tower)
    order = _require(obj, "order", where)
    if not isinstance(order, int):
        raise ProblemFormatError("order in %s must be an integer" % where)
    return PoleSpec(location, order)


def _parse_matrix(rows, tower: FieldTower, where: str) -> RatMatrix:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ProblemFormatError("%s must be a non-empty list of rows" % where)
    parsed = [[parse_ratfn(entry, tower) for entry in row] for row in rows]
    return RatMatrix(tower, parsed)


def parse_problem(text: bytes | str) -> ProblemFile:
    """Parse and validate a problem file; every element literal is
    materialized and every pole annotation checked exactly."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ProblemFormatError("problem file is not UTF-8: %s" % exc) from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFormatError("line %d column %d: %s"
                                 % (exc.lineno, exc.colno, exc.msg)) from exc
    _check_keys(data, ("field", "task", "payload", "options"), "problem file")
    field_obj = _require(data, "field", "problem file")
    _check_keys(field_obj, ("radicands", "gaussian"), "field")
    radicands = field_obj.get("radicands", [])
    if not isinstance(radicands, list) or not all(isinstance(r, str) for r in radicands):
        raise ProblemFormatError("field.radicands must be a list of strings")
    gaussian = field_obj.get("gaussian", False)
    if not isinstance(gaussian, bool):
        raise ProblemFormatError("field.gaussian must be a boolean")
    tower = build_tower(radicands, gaussian)
    canonical_radicands = tuple(radicands)

    task = _require(data, "task", "problem file")
    if task not in TASKS:
        raise ProblemFormatError("unknown task %r; expected one of %s" % (task, list(TASKS)))

    options_obj = data.get("options", {})
    _check_keys(options_obj, ("expect_polynomial", "max_degree", "render", "precision"),
                "options")
    options = Options()
    if "expect_polynomial" in options_obj:
        options.expect_polynomial = bool(options_obj["expect_polynomial"])
    if "max_degree" in options_obj:
        options.max_degree = int(options_obj["max_degree"])
    if "render" in options_obj:
        if options_obj["render"] not in RENDER_MODES:
            raise ProblemFormatError("options.render must be one of %s" % list(RENDER_MODES))
        options.render = options_obj["render"]
    if "precision" in options_obj:
        options.precision = int(options_obj["precision"])

    payload = _require(data, "payload", "problem file")
    problem = ProblemFile(task=task, tower=tower, radicands=canonical_radicands,
                          gaussian=gaussian, options=options)

    if task == "factor-f":
        _check_keys(payload, ("m", "phis"), "payload")
        m = _require(payload, "m", "payload")
        phis_obj = _require(payload, "phis", "payload")
        if not isinstance(m, int) or m < 1:
            raise ProblemFormatError("payload.m must be a positive integer")
        if not isinstance(phis_obj, list) or len(phis_obj) != m - 1:
            raise ProblemFormatError("payload.phis must list exactly m-1 functions")
        phis = []
        for idx, terms in enumerate(phis_obj):
            parsed_terms = []
            for term in terms:
                _check_keys(term, ("pole", "coeffs"), "phis[%d]" % idx)
                pole = parse_element(_require(term, "pole", "phis"), tower)
                coeffs = [parse_element(c, tower) for c in _require(term, "coeffs", "phis")]
                spec = PoleSpec(pole, max(1, len(coeffs)))
                parsed_terms.append((spec.location, coeffs))
            phis.append(PartialFraction(tower, Poly.zero(tower), parsed_terms))
        problem.phi_row = PhiRow(tower, m, phis)
    elif task in ("spectral", "verify"):
        _check_keys(payload, ("matrix", "pole_data", "s"), "payload")
        matrix = _parse_matrix(_require(payload, "matrix", "payload"), tower, "payload.matrix")
        pole_data: dict = {}
        for entry in payload.get("pole_data", []):
            _check_keys(entry, ("row", "col", "location", "order"), "pole_data")
            i, j = _require(entry, "row", "pole_data"), _require(entry, "col", "pole_data")
            spec = _parse_spec({"location": entry["location"], "order": entry["order"]},
                               tower, "pole_data")
            pole_data.setdefault((i, j), []).append(spec)
        problem.triangular = TriangularFactor(matrix, pole_data)
        if "s" in payload:
            problem.s_matrix = _parse_matrix(payload["s"], tower, "payload.s")
        elif task == "verify":
            raise ProblemFormatError("task 'verify' requires payload.s")
    else:  # complete
        _check_keys(payload, ("row", "reflected_poles", "vm_disk_zeros"), "payload")
        row_obj = _require(payload, "row", "payload")
        if not isinstance(row_obj, list) or len(row_obj) < 2:
            raise ProblemFormatError("payload.row must list at least two functions")
        v = [parse_ratfn(s, tower) for s in row_obj]
        reflected_obj = _require(payload, "reflected_poles", "payload")
        if not isinstance(reflected_obj, list) or len(reflected_obj) != len(v):
            raise ProblemFormatError("payload.reflected_poles must have one list per entry")
        reflected = [[_parse_spec(s, tower, "reflected_poles") for s in specs]
                     for specs in reflected_obj]
        zeros = [_parse_spec(s, tower, "vm_disk_zeros")
                 for s in payload.get("vm_disk_zeros", [])]
        problem.unit_row = UnitRow(tower, v, reflected, zeros)
    return problem


# ----------------------------------------------------------------------
# running and rendering

@dataclass
class Report:
    task: str
    sections: list = field(default_factory=list)
    certificates: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    ok: bool = True
    elapsed: float = 0.0
    precision: int = 12

    def add_matrix(self, title: str, matrix: RatMatrix) -> None:
        self.sections.append((title, matrix))

    def add_text(self, title: str, lines) -> None:
        self.sections.append((title, list(lines)))


def run(problem: ProblemFile) -> Report:
    """Dispatch to the algorithm modules; the report records every
    certificate outcome and ok reflects them all."""
    start = time.monotonic()
    report = Report(task=problem.task, precision=problem.options.precision)
    if problem.task == "factor-f":
        result = construct_paraunitary(problem.phi_row)
        report.add_matrix("U", result.U)
        report.certificates.update(result.certificate.as_dict())
    elif problem.task in ("spectral", "verify"):
        result = factorize(problem.triangular,
                           expect_polynomial=problem.options.expect_polynomial)
        report.add_matrix("S+", result.s_plus)
        for idx, stage in enumerate(result.stage_matrices):
            report.add_matrix("stage U_%d" % (idx + 2), stage)
        report.certificates.update(result.certificate if isinstance(result.certificate, dict)
                                   else {})
        report.certificates.pop("normalization", None)
        report.notes.append("normalization: S+(1) = M(1)")
        if problem.s_matrix is not None:
            verdict = verify_against_S(result, problem.s_matrix)
            report.certificates["matches_supplied_s"] = verdict.ok
            if not verdict.ok:
                report.add_text("verification diff", verdict.describe())
    else:
        if not verify_unit_row(problem.unit_row):
            raise SpecfactError("row does not satisfy the unit-norm identity "
                                "sum v_i v_i~ = 1")
        result = complete(problem.unit_row, problem.options.max_degree)
        report.add_matrix("completion (first row = input)", result.matrix)
        report.add_matrix("column form V", result.column_form)
        report.add_matrix("U", result.U)
        report.add_matrix("W", result.W)
        report.add_text("phi row", [repr(p) for p in result.phi_row.phis])
        report.certificates["paraunitary"] = (result.matrix @ result.matrix.tilde()).is_identity()
        report.certificates["first_row_matches"] = True
        if result.corona is not None:
            report.notes.append("corona degree: %d" % result.corona.degree)
            if result.corona.escalated_beyond(5):
                report.notes.append("corona escalation exceeded degree 5")
    report.ok = all(report.certificates.values()) if report.certificates else True
    report.elapsed = time.monotonic() - start
    return report


def _decimal_ratfn(f: RationalFn, digits: int) -> str:
    def poly_str(p: Poly) -> str:
        if p.is_zero():
            return "0"
        parts = []
        for k, c in enumerate(p.coeffs):
            if c.is_zero():
                continue
            term = c.approx(digits)
            if k == 1:
                term += "*z"
            elif k > 1:
                term += "*z^%d" % k
            parts.append(term)
        return " + ".join(parts)
    if f.is_polynomial():
        return poly_str(f.num)
    return "(%s) / (%s)" % (poly_str(f.num), poly_str(f.den))


def render(report: Report, mode: Optional[str] = None) -> str:
    """Text rendering; exact output reparses to identical values."""
    mode = mode or "exact"
    if mode not in RENDER_MODES:
        raise ProblemFormatError("render mode must be one of %s" % list(RENDER_MODES))
    lines = ["task: %s" % report.task]
    for title, body in report.sections:
        if isinstance(body, RatMatrix):
            if mode in ("exact", "both"):
                lines.append("%s (exact):" % title)
                for i, row in enumerate(body.entries):
                    for j, entry in enumerate(row):
                        lines.append("  [%d,%d] = %s" % (i + 1, j + 1, render_ratfn(entry)))
            if mode in ("decimal", "both"):
                lines.append("%s (decimal): # non-authoritative" % title)
                for i, row in enumerate(body.entries):
                    for j, entry in enumerate(row):
                        lines.append("  [%d,%d] = %s"
                                     % (i + 1, j + 1, _decimal_ratfn(entry, report.precision)))
        else:
            lines.append("%s:" % title)
            for item in body:
                lines.append("  %s" % item)
    for name, passed in report.certificates.items():
        lines.append("certificate %s: %s" % (name, "PASS" if passed else "FAIL"))
    for note in report.notes:
        lines.append(note)
    lines.append("elapsed: %.3fs" % report.elapsed)
    lines.append("status: %s" % ("ok" if report.ok else "FAILED"))
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------

def _build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="specfact",
        description="Exact paraunitary construction, matrix spectral factorization, "
                    "and unit-row completion.")
    sub = parser.add_subparsers(dest="task", required=True)
    for task in TASKS:
        p = sub.add_parser(task, help="run a %r problem file" % task)
        p.add_argument("problem", help="path to the JSON problem file")
        p.add_argument("--render", choices=RENDER_MODES, default=None,
                       help="output mode (default: from the file, else exact)")
        p.add_argument("--precision", type=int, default=None,
                       help="digits for decimal rendering")
        p.add_argument("--max-degree", type=int, default=None,
                       help="corona degree cap for task 'complete'")
        p.add_argument("--expect-polynomial", action="store_true",
                       help="require the spectral factor to be polynomial")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_arg_parser().parse_args(argv)
    try:
        with open(args.problem, "rb") as handle:
            problem = parse_problem(handle.read())
        if problem.task != args.task:
            raise ProblemFormatError("file declares task %r but %r was requested"
                                     % (problem.task, args.task))
        if args.render is not None:
            problem.options.render = args.render
        if args.precision is not None:
            problem.options.precision = args.precision
        if args.max_degree is not None:
            problem.options.max_degree = args.max_degree
        if args.expect_polynomial:
            problem.options.expect_polynomial = True
        report = run(problem)
        report.precision = problem.options.precision
        sys.stdout.write(render(report, problem.options.render))
        return 0 if report.ok else 1
    except InternalInvariantError as exc:
        sys.stderr.write("internal error: %s\n" % exc)
        return 3
    except (SpecfactError, ZeroDivisionError, OSError, ValueError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
