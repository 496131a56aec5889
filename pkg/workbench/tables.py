"""Semigroup files, groupoid files and map dumps.

All three are JSON documents. The writers are byte-stable: keys in a fixed
order, two-space indent, one table row or record per line, final newline.
"""
import json
import logging
from pathlib import Path
from typing import Iterable, Sequence

from jsonschema import Draft7Validator

from workbench.core_semigroup import InverseSemigroup, build_from_table
from workbench.errors import MalformedTable, ParseError
from workbench.ordered_groupoid import OrderedGroupoid, make_groupoid, missing_composite

log = logging.getLogger(__name__)

_INDEX = {"type": "integer", "minimum": 0}

SEMIGROUP_SCHEMA = {
    "type": "object",
    "required": ["names", "mul"],
    "properties": {
        "names": {"type": "array", "items": {"type": "string"}, "minItems": 1},
        "mul": {"type": "array", "items": {"type": "array", "items": _INDEX}, "minItems": 1},
        "identity": _INDEX,
        "zero": _INDEX,
    },
    "additionalProperties": False,
}

GROUPOID_SCHEMA = {
    "type": "object",
    "required": ["arrows", "compose"],
    "properties": {
        "arrows": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["dom", "ran", "inv"],
                "properties": {"dom": _INDEX, "ran": _INDEX, "inv": _INDEX, "name": {"type": "string"}},
                "additionalProperties": False,
            },
        },
        "compose": {"type": "array", "items": {"type": "array", "items": _INDEX, "minItems": 3, "maxItems": 3}},
        "leq": {"type": "array", "items": {"type": "array", "items": _INDEX, "minItems": 2, "maxItems": 2}},
    },
    "additionalProperties": False,
}


# ---------- reading ----------


def _locate(text: str, path: Sequence) -> tuple[int | None, int | None]:
    """Line and column of the first key on ``path`` (best effort)."""
    keys = [p for p in path if isinstance(p, str)]
    if not keys:
        return 1, 1
    pos = text.find(json.dumps(keys[0]))
    if pos < 0:
        return None, None
    line = text.count("\n", 0, pos) + 1
    return line, pos - (text.rfind("\n", 0, pos) + 1) + 1


def parse_document(text: str) -> dict:
    if not text.strip():
        raise ParseError("empty file", line=1, column=1)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, line=e.lineno, column=e.colno) from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", line=1, column=1)
    return doc


def _validate(doc: dict, schema: dict, text: str) -> None:
    errors = sorted(Draft7Validator(schema).iter_errors(doc), key=lambda e: list(map(str, e.absolute_path)))
    if errors:
        first = errors[0]
        where = "/".join(str(p) for p in first.absolute_path) or "<root>"
        line, column = _locate(text, list(first.absolute_path))
        raise ParseError(f"{where}: {first.message}", line=line, column=column)


def document_kind(doc: dict) -> str:
    return "groupoid" if "arrows" in doc else "semigroup"


def semigroup_from_document(doc: dict, text: str = "", size_cap: int | None = None) -> InverseSemigroup:
    _validate(doc, SEMIGROUP_SCHEMA, text)
    S = build_from_table(doc["names"], doc["mul"], size_cap=size_cap)
    for key, found in (("identity", S.identity), ("zero", S.zero)):
        if key in doc and doc[key] != found:
            raise MalformedTable(f"declared {key} {doc[key]} does not match the table ({found})", witness=doc[key])
    return S


def groupoid_from_document(doc: dict, text: str = "") -> OrderedGroupoid:
    _validate(doc, GROUPOID_SCHEMA, text)
    arrows = doc["arrows"]
    n = len(arrows)
    for i, arrow in enumerate(arrows):
        bad = [k for k in ("dom", "ran", "inv") if arrow[k] >= n]
        if bad:
            raise MalformedTable(f"arrow {i}: {bad[0]} {arrow[bad[0]]} out of range", witness=i)
    for triple in doc["compose"] + doc.get("leq", []):
        if max(triple) >= n:
            raise MalformedTable(f"index out of range in {triple}", witness=tuple(triple))
    names = [a.get("name", str(i)) for i, a in enumerate(arrows)]
    G = make_groupoid(
        [a["dom"] for a in arrows],
        [a["ran"] for a in arrows],
        [a["inv"] for a in arrows],
        doc["compose"],
        leq_pairs=doc.get("leq", []),
        names=names,
    )
    pair = missing_composite(G)
    if pair is not None:
        raise MalformedTable(f"no composite for composable pair {list(pair)}", witness=pair)
    return G


def read_text(path: Path) -> str:
    if not path.exists():
        raise FileNotFoundError(f"No existe: {path.resolve()}")
    return path.read_text(encoding="utf-8")


def read_semigroup(path: Path, size_cap: int | None = None) -> InverseSemigroup:
    text = read_text(path)
    return semigroup_from_document(parse_document(text), text, size_cap)


def read_groupoid(path: Path) -> OrderedGroupoid:
    text = read_text(path)
    return groupoid_from_document(parse_document(text), text)


# ---------- writing ----------


def _row(values: Iterable) -> str:
    return json.dumps(list(values), ensure_ascii=False, separators=(", ", ": "))


def _block(key: str, rows: Sequence[str]) -> str:
    if not rows:
        return f'  "{key}": []'
    body = ",\n".join(f"    {r}" for r in rows)
    return f'  "{key}": [\n{body}\n  ]'


def semigroup_to_text(S: InverseSemigroup) -> str:
    parts = [f'  "names": {_row(S.names)}', _block("mul", [_row(int(v) for v in r) for r in S.mul])]
    if S.identity is not None:
        parts.append(f'  "identity": {S.identity}')
    if S.zero is not None:
        parts.append(f'  "zero": {S.zero}')
    return "{\n" + ",\n".join(parts) + "\n}\n"


def groupoid_to_text(G: OrderedGroupoid) -> str:
    arrows = [
        json.dumps({"dom": G.dom[a], "ran": G.ran[a], "inv": G.inv[a], "name": G.names[a]}, ensure_ascii=False)
        for a in range(G.size)
    ]
    compose = [_row([g, h, v]) for (g, h), v in sorted(G.composites.items())]
    leq = [_row([a, b]) for a in range(G.size) for b in range(G.size) if a != b and G.leq_(a, b)]
    return "{\n" + ",\n".join([_block("arrows", arrows), _block("compose", compose), _block("leq", leq)]) + "\n}\n"


def records_to_text(names: Sequence[str], kind: str, records: Sequence[dict]) -> str:
    """A map dump: ``{"names": [...], "kind": ..., "records": [{"theta": [...]}, ...]}``."""
    rows = [json.dumps(r, ensure_ascii=False, separators=(", ", ": ")) for r in records]
    header = [f'  "names": {_row(names)}', f'  "kind": {json.dumps(kind)}']
    return "{\n" + ",\n".join(header + [_block("records", rows)]) + "\n}\n"


def write_text(path: Path, text: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8", newline="\n")
    log.info("Saved: %s", path)
    return path


def write_semigroup(path: Path, S: InverseSemigroup) -> Path:
    return write_text(path, semigroup_to_text(S))


def write_groupoid(path: Path, G: OrderedGroupoid) -> Path:
    return write_text(path, groupoid_to_text(G))
