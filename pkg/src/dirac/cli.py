"""Command-line front end: ``dirac check | stratify | classify | decompose | bracket | random``.

Exit codes: 0 success, 1 input or usage error, 2 mathematical failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from dirac.diracfield import (
    FrameError,
    Grid,
    NotDiracError,
    WindingError,
    build_frame,
    classify_surface_even,
    decompose_threefold,
    is_dirac,
    line_field_of_odd,
    random_dirac_field,
    stratify,
)
from dirac.diracfield.frame import DiracFrame
from dirac.symcalc import (
    AffineDomain,
    Domain,
    ExpressionError,
    GSection,
    TorusDomain,
    courant_bracket,
    format_scalar,
    parse_scalar,
)

EXIT_OK, EXIT_INPUT, EXIT_MATH = 0, 1, 2


class DocumentError(ValueError):
    """Malformed input document; ``pointer`` is a JSON pointer into it."""

    def __init__(self, pointer: str, message: str):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer


class UsageError(ValueError):
    pass


# documents


def read_json(path: str) -> Any:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError("", f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError("", f"invalid JSON: {exc.msg} at line {exc.lineno}") from exc


def _domain_of(doc: dict, pointer: str = "") -> Domain:
    if not isinstance(doc, dict):
        raise DocumentError(pointer, "expected a JSON object")
    n = doc.get("dimension")
    if n not in (2, 3) or isinstance(n, bool):
        raise DocumentError(f"{pointer}/dimension", f"dimension must be 2 or 3, got {n!r}")
    kind = doc.get("domain")
    if kind == "affine":
        return AffineDomain(n)
    if kind == "torus":
        return TorusDomain(n)
    raise DocumentError(f"{pointer}/domain", f"domain must be 'affine' or 'torus', got {kind!r}")


def parse_section(obj: Any, domain: Domain, pointer: str) -> GSection:
    if not isinstance(obj, dict):
        raise DocumentError(pointer, "a section is an object with 'vector' and 'covector'")
    if "domain" in obj and obj["domain"] != domain.kind:
        raise DocumentError(f"{pointer}/domain", f"mixed domains: section on {obj['domain']!r}, document on {domain.kind!r}")
    parts = []
    for key in ("vector", "covector"):
        comps = obj.get(key)
        if not isinstance(comps, list) or len(comps) != domain.n:
            raise DocumentError(f"{pointer}/{key}", f"expected a list of {domain.n} expressions")
        fields = []
        for i, text in enumerate(comps):
            if not isinstance(text, (str, int)) or isinstance(text, bool):
                raise DocumentError(f"{pointer}/{key}/{i}", "expressions are strings")
            try:
                fields.append(parse_scalar(str(text), domain))
            except (ExpressionError, SyntaxError) as exc:
                raise DocumentError(f"{pointer}/{key}/{i}", str(exc)) from exc
        parts.append(fields)
    return GSection.from_lists(domain, parts[0], parts[1])


def parse_frame_document(doc: Any) -> DiracFrame:
    domain = _domain_of(doc)
    sections = doc.get("sections")
    if not isinstance(sections, list) or len(sections) != domain.n:
        raise DocumentError("/sections", f"expected {domain.n} sections")
    parsed = [parse_section(s, domain, f"/sections/{i}") for i, s in enumerate(sections)]
    try:
        frame = build_frame(domain, parsed)
    except FrameError as exc:
        pointer = f"/sections/{exc.sections[0]}" if exc.sections else "/sections"
        raise DocumentError(pointer, f"{exc.reason}: {exc}") from exc
    parity = doc.get("parity")
    if parity is not None:
        if parity not in ("even", "odd"):
            raise DocumentError("/parity", f"parity must be 'even' or 'odd', got {parity!r}")
        if frame.parity != parity:
            raise DocumentError("/parity", f"declared {parity} but the frame is {frame.parity}")
    return frame


def section_to_json(s: GSection) -> dict:
    return {"vector": [format_scalar(f) for f in s.vector], "covector": [format_scalar(f) for f in s.covector]}


def frame_to_document(frame: DiracFrame) -> dict:
    return {
        "dimension": frame.n,
        "domain": frame.domain.kind,
        "parity": frame.parity,
        "sections": [section_to_json(s) for s in frame.sections],
    }


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


# commands


def cmd_check(args, out) -> int:
    frame = parse_frame_document(read_json(args.file))
    check = is_dirac(frame)
    if check:
        out.write(dumps({"dirac": True}))
        return EXIT_OK
    i, j, k, value = check.witness
    out.write(dumps({"dirac": False, "witness": {"i": i, "j": j, "k": k, "value": format_scalar(value)}}))
    return EXIT_MATH


def _parse_range(text: str | None) -> tuple[Fraction, Fraction]:
    if text is None:
        return Fraction(-1), Fraction(1)
    try:
        lo, hi = (Fraction(p.strip()) for p in text.split(","))
    except ValueError as exc:
        raise UsageError(f"--range expects 'lo,hi' with rational endpoints, got {text!r}") from exc
    if hi < lo:
        raise UsageError("--range is empty")
    return lo, hi


def stratum_grid(frame: DiracFrame, grid: Grid) -> tuple[str, dict]:
    """CSV text and summary of the pointwise types on ``grid``."""
    strat = stratify(frame, grid)
    labels = grid.axis_labels()
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(frame.domain.labels) + ["a", "b", "flag"])
    for idx, t, flag in zip(strat.indices, strat.types, strat.flags):
        writer.writerow([labels[i] for i in idx] + [t.a, t.b, flag])
    spec = grid.spec()
    if frame.domain.is_torus:
        spec["numeric"] = True
    summary = {
        "types": [{"a": t.a, "b": t.b, "count": c} for t, c in strat.summary()],
        "parity": strat.parity,
        "grid": spec,
        "ambiguous": len(strat.ambiguous()),
    }
    return buf.getvalue(), summary


def summary_path(out: Path) -> Path:
    return out.with_name(out.stem + ".summary.json")


def cmd_stratify(args, out) -> int:
    frame = parse_frame_document(read_json(args.file))
    if args.grid < 1:
        raise UsageError("--grid must be positive")
    lo, hi = _parse_range(args.range)
    if args.range is not None and frame.domain.is_torus:
        raise UsageError("--range applies to affine domains; torus grids cover [0, 2*pi)")
    grid = Grid(frame.domain, args.grid, lo, hi)
    text, summary = stratum_grid(frame, grid)
    if args.out is None:
        out.write(text)
        sys.stderr.write(dumps(summary))
    else:
        path = Path(args.out)
        path.write_text(text, encoding="utf-8")
        summary_path(path).write_text(dumps(summary), encoding="utf-8")
    return EXIT_OK


def cmd_classify(args, out) -> int:
    frame = parse_frame_document(read_json(args.file))
    if frame.n != 2:
        raise UsageError("classify works on surface frames (dimension 2)")
    if frame.parity == "odd":
        out.write(dumps({"parity": "odd", "line_field": str(line_field_of_odd(frame).fields[0])}))
        return EXIT_OK
    if not frame.domain.is_torus:
        out.write(dumps({"parity": "even", "w1": 0, "w2": 0, "note": "even structures on the plane form a single class"}))
        return EXIT_OK
    try:
        cls = classify_surface_even(frame)
    except WindingError as exc:
        sys.stderr.write(f"dirac: winding: {exc}\n")
        return EXIT_MATH
    out.write(dumps({"parity": "even", "w1": cls.w1, "w2": cls.w2}))
    return EXIT_OK


def _region_json(report, grid: Grid) -> dict:
    labels = grid.axis_labels()
    points = [[labels[i] for i in idx] for idx in sorted(report.region)]
    return {"kind": report.kind, "count": len(report.region), "data": report.data, "checks": report.checks, "points": points}


def cmd_decompose(args, out) -> int:
    frame = parse_frame_document(read_json(args.file))
    if frame.n != 3:
        raise UsageError("decompose needs a 3-dimensional frame")
    if args.grid < 1:
        raise UsageError("--grid must be positive")
    grid = Grid(frame.domain, args.grid)
    try:
        dec = decompose_threefold(frame, grid)
    except NotDiracError as exc:
        sys.stderr.write(f"dirac: {exc}; run `dirac check` for the witness\n")
        return EXIT_MATH
    a, b = dec.gluing_type
    report = {
        "parity": dec.parity,
        "grid": grid.spec(),
        "types": [{"a": t.a, "b": t.b, "count": c} for t, c in dec.stratification.summary()],
        "gluing_stratum": {"a": a, "b": b, "count": len(dec.gluing)},
        "regions": [_region_json(dec.form_region, grid), _region_json(dec.bivector_region, grid)],
        "covers_grid": dec.covers_grid,
        "overlap_is_gluing": dec.overlap_is_gluing,
    }
    out.write(dumps(report))
    return EXIT_OK


def cmd_bracket(args, out) -> int:
    doc = read_json(args.file)
    domain = _domain_of(doc)
    sections = doc.get("sections")
    if not isinstance(sections, list) or len(sections) != 2:
        raise DocumentError("/sections", "expected two sections")
    s1, s2 = (parse_section(s, domain, f"/sections/{i}") for i, s in enumerate(sections))
    out.write(str(courant_bracket(s1, s2)) + "\n")
    return EXIT_OK


def cmd_random(args, out) -> int:
    try:
        frame = random_dirac_field(args.seed, args.dim, args.parity, args.domain)
    except ValueError as exc:
        raise UsageError(f"unsupported random frame: {exc}") from exc
    out.write(dumps(frame_to_document(frame)))
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dirac", description="Verify and classify Dirac structures given by frames.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="Courant-involutivity of a frame document")
    c.add_argument("file", help="frame document, or - for stdin")
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("stratify", help="pointwise types on a grid (CSV)")
    s.add_argument("file")
    s.add_argument("--grid", type=int, default=16, help="points per axis (default 16)")
    s.add_argument("--out", help="CSV path; the summary goes to <stem>.summary.json")
    s.add_argument("--range", help="affine sample range lo,hi (default -1,1)")
    s.set_defaults(func=cmd_stratify)

    k = sub.add_parser("classify", help="winding pair or line field of a surface frame")
    k.add_argument("file")
    k.set_defaults(func=cmd_classify)

    dcmp = sub.add_parser("decompose", help="form / bivector regions of a 3-dimensional frame")
    dcmp.add_argument("file")
    dcmp.add_argument("--grid", type=int, default=9)
    dcmp.set_defaults(func=cmd_decompose)

    b = sub.add_parser("bracket", help="Courant bracket of two sections")
    b.add_argument("file")
    b.set_defaults(func=cmd_bracket)

    r = sub.add_parser("random", help="emit a random Dirac frame document")
    r.add_argument("--dim", type=int, required=True)
    r.add_argument("--parity", choices=["even", "odd"], required=True)
    r.add_argument("--domain", choices=["affine", "torus"], default="affine")
    r.add_argument("--seed", type=int, default=0)
    r.set_defaults(func=cmd_random)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    if out is None:
        if hasattr(sys.stdout, "reconfigure"):
            sys.stdout.reconfigure(encoding="utf-8")
        out = sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (DocumentError, UsageError) as exc:
        sys.stderr.write(f"dirac: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
