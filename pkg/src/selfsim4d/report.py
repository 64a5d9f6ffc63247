"""Report documents: a fixed-order dict that renders to JSON or to plain text.

Schema (version 1), keys in this order::

    schema, tool, version, command, input_digest, seed,
    checks:     [{name, passed, detail}]
    summands:   [{dims, label, multiplicity, origin, basis, action}]
    remainder:  {dims, total}
    steps:      [{step, blocks: [{matrix_name, matrix, derived_from_transpose,
                                  summands, remainder}]}]
    block:      [32 bitstrings]
    passed

``basis`` is a list of four lists of 8-character bitstrings in edge order and
``action`` the assembled cell matrix as bitstrings.  Keys that do not apply to
a command are present with ``null``.
"""

from __future__ import annotations

import hashlib
import json
from typing import Sequence

from . import __version__
from .decompose import Decomposition, SummandReport

SCHEMA_VERSION = 1
TOOL = "selfsim4d"


def digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode()).hexdigest()


def matrix_text(M: Sequence[Sequence[int]]) -> str:
    return "\n".join(" ".join(str(int(x)) for x in row) for row in M) + "\n"


def new_report(command: str, input_text: str, seed: int | None = None) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "tool": TOOL,
        "version": __version__,
        "command": command,
        "input_digest": digest(input_text),
        "seed": seed,
        "checks": [],
        "summands": None,
        "remainder": None,
        "steps": None,
        "block": None,
        "passed": None,
    }


def add_check(report: dict, name: str, passed: bool, detail: str = "") -> None:
    report["checks"].append({"name": name, "passed": bool(passed), "detail": detail})


def _bits(row) -> str:
    return "".join(str(int(x)) for x in row)


def summand_entry(s: SummandReport) -> dict:
    return {
        "dims": list(s.dims),
        "label": s.label,
        "multiplicity": s.multiplicity,
        "origin": s.origin,
        "basis": s.subspace.bitstrings(),
        "action": [_bits(r) for r in s.action.full()],
    }


def decomposition_entries(dec: Decomposition) -> tuple[list, dict]:
    return ([summand_entry(s) for s in dec.summands],
            {"dims": list(dec.remainder), "total": dec.remainder_dim})


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def _render_summands(lines: list[str], summands: list, indent: str = "") -> None:
    for n, s in enumerate(summands, start=1):
        mult = f" x{s['multiplicity']}" if s["multiplicity"] != 1 else ""
        dims = "(" + ",".join(map(str, s["dims"])) + ")"
        lines.append(f"{indent}summand {n}: dims {dims}  label {s['label']}{mult}  [{s['origin']}]")
        for j, rows in enumerate(s["basis"], start=1):
            if rows:
                lines.append(f"{indent}    V{j}: " + " ".join(rows))
        lines.append(f"{indent}    action:")
        for r in s["action"]:
            lines.append(f"{indent}      {r}")


def to_text(report: dict) -> str:
    lines = [f"{report['tool']} {report['version']}  {report['command']}",
             f"input {report['input_digest']}"]
    if report["seed"] is not None:
        lines.append(f"seed {report['seed']}")
    for c in report["checks"]:
        detail = f"  ({c['detail']})" if c["detail"] else ""
        lines.append(f"[{'PASS' if c['passed'] else 'FAIL'}] {c['name']}{detail}")
    if report["summands"] is not None:
        _render_summands(lines, report["summands"])
        rem = report["remainder"]
        lines.append(f"remainder dims ({','.join(map(str, rem['dims']))}) total {rem['total']}")
    if report["steps"] is not None:
        for st in report["steps"]:
            lines.append(f"step {st['step']}")
            for b in st["blocks"]:
                how = " (from transpose)" if b["derived_from_transpose"] else ""
                lines.append(f"  block of {b['matrix_name']}{how}: " + " / ".join(b["matrix"]))
                _render_summands(lines, b["summands"], "    ")
                lines.append(f"    remainder total {b['remainder']['total']}")
    if report["block"] is not None:
        for r, row in enumerate(report["block"]):
            if r and r % 8 == 0:
                lines.append("-" * 35)
            lines.append(" ".join(row[c:c + 8] for c in range(0, 32, 8)))
    if report["passed"] is not None:
        lines.append("PASS" if report["passed"] else "FAIL")
    return "\n".join(lines) + "\n"
