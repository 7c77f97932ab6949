"""Reading networks, region specs and edge-set families; writing reports.

Graph text format::

    # comments start with '#'
    <nodes> <edges>
    <a> <b> <reliability>      one line per edge, ids in order
    K <k1> <k2> ...            terminal set

Region spec: JSON ``{"thresholds": [...], "phi_values": [...]}`` or text
lines ``thresholds 5 7`` and ``phi 0 5 10 20``.

Families: JSON ``{"regions": [{"pathsets": [...], "cutsets": [...]}, ...]}``
or ``{"pathsets": [[...]...], "cutsets": [[...]...]}`` with one list per region.
"""
from __future__ import annotations

import json
from pathlib import Path

from .edgesets import EdgeSetFamilies
from .graph import Network
from .regions import RegionSpec

__all__ = [
    "FORMAT_VERSION",
    "ParseError",
    "parse_network",
    "load_network",
    "format_network",
    "parse_region_spec",
    "load_region_spec",
    "parse_families",
    "load_families",
    "families_to_json",
    "report_to_json",
    "report_to_text",
]

FORMAT_VERSION = 1


class ParseError(ValueError):
    def __init__(self, message: str, source: str = "<string>", line: int | None = None):
        self.source = source
        self.line = line
        where = f"{source}:{line}" if line is not None else source
        super().__init__(f"{where}: {message}")


def _content_lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def parse_network(text: str, source: str = "<string>") -> Network:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty graph file", source)
    no, header = lines[0]
    try:
        n, m = (int(v) for v in header.split())
    except ValueError:
        raise ParseError(f"expected '<nodes> <edges>', got {header!r}", source, no) from None
    edges = []
    terminals = None
    for no, line in lines[1:]:
        fields = line.split()
        if fields[0].upper() == "K":
            if terminals is not None:
                raise ParseError("terminal line given twice", source, no)
            try:
                terminals = [int(v) for v in fields[1:]]
            except ValueError:
                raise ParseError(f"bad terminal list {line!r}", source, no) from None
            continue
        if len(fields) != 3:
            raise ParseError(f"expected '<a> <b> <reliability>', got {line!r}", source, no)
        try:
            edges.append((int(fields[0]), int(fields[1]), float(fields[2])))
        except ValueError:
            raise ParseError(f"bad edge line {line!r}", source, no) from None
        try:
            Network(n, [edges[-1]], [0, 1] if n > 1 else [0])
        except ValueError as exc:
            raise ParseError(str(exc), source, no) from None
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges, found {len(edges)}", source)
    if terminals is None:
        raise ParseError("missing terminal line 'K ...'", source)
    try:
        return Network(n, edges, terminals)
    except ValueError as exc:
        raise ParseError(str(exc), source) from None


def load_network(path) -> Network:
    path = Path(path)
    return parse_network(path.read_text(), str(path))


def format_network(net: Network) -> str:
    out = [f"{net.node_count} {net.edge_count}"]
    out += [f"{a} {b} {r!r}" for a, b, r in net.edges]
    out.append("K " + " ".join(str(k) for k in net.terminals))
    return "\n".join(out) + "\n"


def parse_region_spec(text: str, source: str = "<string>") -> RegionSpec:
    stripped = text.strip()
    try:
        if stripped.startswith("{"):
            try:
                data = json.loads(stripped)
            except json.JSONDecodeError as exc:
                raise ParseError(exc.msg, source, exc.lineno) from None
            return RegionSpec(tuple(data["thresholds"]), tuple(data["phi_values"]))
        fields = {}
        for no, line in _content_lines(text):
            key, *vals = line.split()
            fields[key.lower()] = (no, vals)
        if "thresholds" not in fields or "phi" not in fields:
            raise ParseError("need 'thresholds ...' and 'phi ...' lines", source)
        return RegionSpec(
            tuple(int(v) for v in fields["thresholds"][1]),
            tuple(float(v) for v in fields["phi"][1]),
        )
    except ParseError:
        raise
    except (KeyError, ValueError, TypeError) as exc:
        raise ParseError(f"bad region spec: {exc}", source) from None


def load_region_spec(path) -> RegionSpec:
    path = Path(path)
    return parse_region_spec(path.read_text(), str(path))


def parse_families(text: str, source: str = "<string>") -> dict:
    """Families as ``{"pathsets": [...], "cutsets": [...]}``, one list per region."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, source, exc.lineno) from None
    if not isinstance(data, dict):
        raise ParseError("families file must hold a JSON object", source)
    if "regions" in data:
        regions = data["regions"]
        return {
            "pathsets": [r.get("pathsets", []) for r in regions],
            "cutsets": [r.get("cutsets", []) for r in regions],
        }
    if "pathsets" not in data and "cutsets" not in data:
        raise ParseError("expected 'regions' or 'pathsets'/'cutsets' keys", source)
    return {"pathsets": data.get("pathsets"), "cutsets": data.get("cutsets")}


def load_families(path) -> dict:
    path = Path(path)
    return parse_families(path.read_text(), str(path))


def families_to_json(families: EdgeSetFamilies) -> str:
    return json.dumps({"format_version": FORMAT_VERSION, "regions": families.to_lists()}, indent=2)


def report_to_json(report: dict) -> str:
    return json.dumps({"format_version": FORMAT_VERSION, **report}, indent=2, default=float)


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.10g}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_fmt(v) for v in value) + "]"
    return str(value)


def report_to_text(report: dict, indent: str = "") -> str:
    lines = [] if indent else [f"format_version: {FORMAT_VERSION}"]
    for key, value in report.items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.append(report_to_text(value, indent + "  "))
        else:
            lines.append(f"{indent}{key}: {_fmt(value)}")
    return "\n".join(lines)
