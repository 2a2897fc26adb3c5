"""Command-line front end.

Reads one ladder (ASCII grid or JSON) from a file or stdin, runs a command and
prints a report.  Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass, field

from .classgroup import canonical_class, class_group, qprime_class
from .classifier import classify, enumerate_candidates
from .connectivity import is_t_connected, strip_unused
from .errors import LadderError
from .ladder import Ladder, corners, eta_kappa, parse_ladder, reflect
from .shape import shape, spine
from .witnesses import run_witnesses

COMMANDS = ("validate", "info", "classgroup", "canonical", "classify", "candidates", "witness", "spine", "reflect", "strip")


@dataclass
class Report:
    command: str
    input_digest: str | None
    payload: dict
    warnings: list = field(default_factory=list)

    def to_json(self):
        return {
            "command": self.command,
            "input_digest": self.input_digest,
            "payload": self.payload,
            "warnings": self.warnings,
        }


def digest(Y: Ladder) -> str:
    blob = json.dumps(Y.to_json(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def _ladder_payload(Y: Ladder) -> dict:
    return {"ladder": Y.to_json(), "grid": Y.to_grid().splitlines()}


def cmd_validate(Y, args, warnings):
    return {"valid": True, "m": Y.m, "n": Y.n, "cells": len(Y), **_ladder_payload(Y)}


def cmd_info(Y, args, warnings):
    cd = corners(Y)
    ek = eta_kappa(cd)
    out = {"m": Y.m, "n": Y.n, **cd.to_json(), "eta_kappa": list(ek.as_tuple()), "shape": shape(Y).to_json()}
    out["two_connected"] = is_t_connected(Y, 2)
    return out


def cmd_classgroup(Y, args, warnings):
    return class_group(Y).to_json()


def cmd_canonical(Y, args, warnings):
    data, omega = canonical_class(Y)
    cd = corners(Y)
    primes = {f"Qprime{i}": qprime_class(Y, i).to_json() for i in range(1, cd.h + 2)}
    return {**data.to_json(), "omega": omega.to_json(), "omega_text": str(omega), "qprime": primes}


def cmd_classify(Y, args, warnings):
    result = classify(Y, args.t, verify=args.verify)
    if any(s.anchor == "strip-unused-cells" and s.data["unused"] for s in result.trace):
        if result.classes is not None:
            warnings.append("classes are coordinates in the class group of the stripped ladder")
    return result.to_json()


def cmd_candidates(Y, args, warnings):
    return {"candidates": [c.to_json() for c in enumerate_candidates(Y)]}


def cmd_witness(Y, args, warnings):
    outcomes = run_witnesses(Y)
    if not outcomes:
        warnings.append("no transcribed witness pattern applies to this ladder")
    for w in outcomes:
        if w.verified is None:
            warnings.append(f"{w.pattern}: {w.note}")
    return {"outcomes": [w.to_json() for w in outcomes]}


def cmd_spine(Y, args, warnings):
    S = spine(Y)
    return {**_ladder_payload(S), "corners": corners(S).to_json(), "is_spine": shape(S).is_spine}


def cmd_reflect(Y, args, warnings):
    return _ladder_payload(reflect(Y))


def cmd_strip(Y, args, warnings):
    s = strip_unused(Y, args.t)
    return {**_ladder_payload(s.ladder), "offset": [s.kept.row_offset, s.kept.col_offset],
            "unused": sorted(map(list, s.unused))}


HANDLERS = {name: globals()[f"cmd_{name}"] for name in COMMANDS}


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("t must be at least 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ladderdet", description="Invariants of ladder determinantal rings.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--t", type=_positive, default=2, help="minor size (default 2)")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--verify", action="store_true", help="run witnesses during classify")
    parser.add_argument("--input", default="-", help="ladder file, or - for stdin (default)")
    return parser


def _render_text(report: Report) -> str:
    lines = [f"command: {report.command}", f"input_digest: {report.input_digest}"]
    payload = report.payload
    if "grid" in payload:
        lines.append("grid:")
        lines.extend("  " + row for row in payload["grid"])
    for key, value in payload.items():
        if key == "grid":
            continue
        lines.append(f"{key}: {json.dumps(value, sort_keys=True)}")
    for w in report.warnings:
        lines.append(f"warning: {w}")
    return "\n".join(lines)


def emit(report: Report, fmt: str, out=None):
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(report.to_json(), sort_keys=True) + "\n")
    else:
        out.write(_render_text(report) + "\n")


def run(argv=None, stdin=None, stdout=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.input == "-":
            text = (stdin or sys.stdin).read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        print(f"ladderdet: cannot read input: {exc}", file=sys.stderr)
        return 2
    Y = None
    warnings: list = []
    try:
        Y = parse_ladder(text)
        payload = HANDLERS[args.command](Y, args, warnings)
        code = 0
    except LadderError as exc:
        payload = {"error": exc.code, "message": str(exc)}
        code = 1
    report = Report(args.command, None if Y is None else digest(Y), payload, warnings)
    emit(report, args.format, stdout)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
