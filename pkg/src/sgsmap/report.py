"""Report documents: a line-oriented structured format and a text table.

Structured format::

    sgsmap-report 1
    command = "verify"
    [Z2]
    betti = [1, 0, 0, 1]
    ...
    [timings]
    Z2.build = 0.01

Every value is one line of JSON. Sections keep their order and the
optional ``[timings]`` section is the only place wall-clock data appears.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from typing import Any

HEADER = "sgsmap-report"
VERSION = 1


class ReportFormatError(ValueError):
    pass


@dataclass
class ReportDocument:
    command: str
    fields: dict[str, Any] = field(default_factory=dict)
    sections: list[tuple[str, dict[str, Any]]] = field(default_factory=list)
    timings: dict[str, float] | None = None

    def section(self, name: str) -> dict[str, Any]:
        for n, body in self.sections:
            if n == name:
                return body
        raise KeyError(name)


def _dump(v) -> str:
    return json.dumps(v, sort_keys=True, separators=(", ", ": "))


def render_data(doc: ReportDocument) -> str:
    lines = [f"{HEADER} {VERSION}", f"command = {_dump(doc.command)}"]
    lines += [f"{k} = {_dump(v)}" for k, v in doc.fields.items()]
    for name, body in doc.sections:
        if name == "timings" or not name or "]" in name:
            raise ReportFormatError(f"bad section name {name!r}")
        lines.append(f"[{name}]")
        lines += [f"{k} = {_dump(v)}" for k, v in body.items()]
    if doc.timings is not None:
        lines.append("[timings]")
        lines += [f"{k} = {_dump(v)}" for k, v in doc.timings.items()]
    return "\n".join(lines) + "\n"


def parse_data(text: str) -> ReportDocument:
    lines = text.splitlines()
    if not lines or lines[0].split() != [HEADER, str(VERSION)]:
        raise ReportFormatError(f"line 1: expected '{HEADER} {VERSION}'")
    doc = ReportDocument(command="")
    current: dict[str, Any] = doc.fields
    seen_command = False
    for lineno, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        if raw.startswith("[") and raw.endswith("]"):
            name = raw[1:-1]
            if name == "timings":
                doc.timings = {}
                current = doc.timings
            else:
                body: dict[str, Any] = {}
                doc.sections.append((name, body))
                current = body
            continue
        key, sep, value = raw.partition(" = ")
        if not sep:
            raise ReportFormatError(f"line {lineno}: expected 'key = value'")
        try:
            v = json.loads(value)
        except json.JSONDecodeError as e:
            raise ReportFormatError(f"line {lineno}: {e}") from None
        if key == "command" and current is doc.fields and not seen_command:
            doc.command = v
            seen_command = True
        else:
            current[key] = v
    if not seen_command:
        raise ReportFormatError("missing command line")
    return doc


def as_plain(obj) -> Any:
    """Dataclasses and tuples to JSON-ready dicts and lists."""
    if dataclasses.is_dataclass(obj):
        return {f.name: as_plain(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): as_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [as_plain(v) for v in obj]
    return obj


def _cell(v) -> str:
    if isinstance(v, (list, dict)):
        return _dump(v)
    return str(v)


def render_text(doc: ReportDocument) -> str:
    out = [f"{doc.command}"]
    for k, v in doc.fields.items():
        out.append(f"  {k}: {_cell(v)}")
    for name, body in doc.sections:
        out.append("")
        out.append(f"== {name} ==")
        for k, v in body.items():
            if isinstance(v, list) and v and all(isinstance(r, dict) for r in v):
                out.append(f"  {k}:")
                cols = list(v[0].keys())
                widths = [max(len(c), *(len(_cell(r.get(c, ""))) for r in v)) for c in cols]
                out.append(("    " + "  ".join(c.ljust(w) for c, w in zip(cols, widths))).rstrip())
                for r in v:
                    out.append(("    " + "  ".join(_cell(r.get(c, "")).ljust(w) for c, w in zip(cols, widths))).rstrip())
            elif isinstance(v, list) and not v:
                out.append(f"  {k}: empty")
            else:
                out.append(f"  {k}: {_cell(v)}")
    if doc.timings:
        out.append("")
        out.append("== timings (seconds) ==")
        for k, v in doc.timings.items():
            out.append(f"  {k}: {v}")
    return "\n".join(out) + "\n"
