"""Reading ultragraph presentations from JSON."""
from __future__ import annotations

import json
import re

from .errors import ParseError, ValidationError
from .ultragraph import OMEGA, EdgeClass, Ultragraph, Violation, validate

TOP_KEYS = {"vertices", "classes"}
CLASS_KEYS = {"id", "source", "range", "multiplicity"}


def _locate(text: str, needle: str, start: int = 0):
    if text is None:
        return None, None
    m = re.compile(re.escape(json.dumps(needle)) + r"\s*:").search(text, start)
    if not m:
        return None, None
    line = text.count("\n", 0, m.start()) + 1
    col = m.start() - (text.rfind("\n", 0, m.start()) + 1) + 1
    return line, col


def spec_from_json(data, text: str | None = None) -> Ultragraph:
    if not isinstance(data, dict):
        raise ParseError("top level must be an object", 1, 1)
    for k in sorted(data):
        if k not in TOP_KEYS:
            raise ParseError(f"unknown key {k!r}", *_locate(text, k))
    for k in sorted(TOP_KEYS - set(data)):
        raise ParseError(f"missing key {k!r}", 1, 1)
    verts = data["vertices"]
    if not isinstance(verts, list) or not all(isinstance(v, str) for v in verts):
        raise ParseError("'vertices' must be a list of strings", *_locate(text, "vertices"))
    classes = data["classes"]
    if not isinstance(classes, list):
        raise ParseError("'classes' must be a list", *_locate(text, "classes"))
    out = []
    bad = []
    for i, c in enumerate(classes):
        if not isinstance(c, dict):
            raise ParseError(f"class #{i} must be an object", *_locate(text, "classes"))
        for k in sorted(c):
            if k not in CLASS_KEYS:
                raise ParseError(f"unknown key {k!r} in class #{i}", *_locate(text, k))
        for k in ("id", "source", "range"):
            if k not in c:
                raise ParseError(f"class #{i} lacks {k!r}", *_locate(text, "classes"))
        if not isinstance(c["range"], list):
            raise ParseError(f"class #{i}: range must be a list", *_locate(text, "range"))
        m = c.get("multiplicity", 1)
        if m == "omega":
            m = OMEGA
        elif isinstance(m, bool) or not isinstance(m, int):
            bad.append(Violation("BadMultiplicity", f"class {c['id']} has multiplicity {m!r}"))
            m = 1
        out.append(EdgeClass(str(c["id"]), str(c["source"]), frozenset(map(str, c["range"])), m))
    g = Ultragraph(tuple(verts), tuple(out))
    if bad:
        raise ValidationError(bad)
    return validate(g)


def loads_spec(text: str) -> Ultragraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    return spec_from_json(data, text)


def load_spec(path) -> Ultragraph:
    with open(path, encoding="utf-8") as fh:
        return loads_spec(fh.read())


def dumps_spec(g: Ultragraph) -> str:
    return json.dumps(g.to_json(), indent=2) + "\n"
