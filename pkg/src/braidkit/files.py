"""Structured-text (YAML) documents for presentations, structure maps,
coactions and product tables, and the shipped copies of the catalog.

Every document carries ``format_version`` and ``kind``.  Table entries are
strings in the same syntax the parser reads; braiding keys are written
``"x @ y"`` and product-table keys ``"x*y"``.  Dumping a loaded document
reproduces the file byte for byte.
"""
from __future__ import annotations

from functools import lru_cache
from importlib import resources
from pathlib import Path

import yaml

from . import catalog
from .presentations import BUILTIN_NAMES, definition_text, make_presentation

FORMAT_VERSION = 1
KINDS = ("presentation", "structure", "coaction", "table")
_DIRS = {"presentation": "presentations", "structure": "structures", "coaction": "coactions", "table": "tables"}

_FIELDS = {
    "presentation": ("name", "generators", "relations", "parameters", "central"),
    "structure": ("name", "base", "mode", "delta", "counit", "antipode", "star", "braiding"),
    "coaction": ("name", "coacted", "coacting", "coaction"),
    "table": ("name", "host", "target", "product_table"),
}
_REQUIRED = {
    "presentation": ("name", "generators", "relations"),
    "structure": ("name", "base", "delta", "counit", "antipode"),
    "coaction": ("name", "coacted", "coacting", "coaction"),
    "table": ("name", "host", "target", "product_table"),
}


class FormatError(ValueError):
    pass


# --- documents from the compiled-in catalog ---

def presentation_doc(name: str) -> dict:
    d = definition_text(name)
    return {
        "format_version": FORMAT_VERSION,
        "kind": "presentation",
        "name": name,
        "generators": [{"name": g, "weight": w} for g, w in d["weights"].items()],
        "relations": d["relations"],
        "parameters": d["parameters"],
        "central": d["central"],
    }


def structure_doc(name: str) -> dict:
    spec = catalog.structure_spec(name)
    doc = {"format_version": FORMAT_VERSION, "kind": "structure", "name": name,
           "base": spec["base"], "mode": spec.get("mode", "plain")}
    for key in ("delta", "counit", "antipode", "star"):
        if spec.get(key):
            doc[key] = dict(spec[key])
    if spec.get("braiding"):
        doc["braiding"] = {f"{x} @ {y}": v for (x, y), v in spec["braiding"].items()}
    return doc


def coaction_doc(name: str) -> dict:
    spec = catalog.coaction_spec(name)
    return {"format_version": FORMAT_VERSION, "kind": "coaction", "name": name,
            "coacted": spec["coacted"], "coacting": spec["coacting"], "coaction": dict(spec["coaction"])}


def table_doc(name: str) -> dict:
    spec = catalog.table_spec(name)
    return {"format_version": FORMAT_VERSION, "kind": "table", "name": name,
            "host": spec["host"], "target": spec["target"],
            "product_table": {f"{x}*{y}": v for (x, y), v in spec["product_table"].items()}}


def builtin_docs() -> dict:
    """{kind: {name: document}} for everything compiled in."""
    return {
        "presentation": {n: presentation_doc(n) for n in BUILTIN_NAMES},
        "structure": {n: structure_doc(n) for n in catalog.STRUCTURE_NAMES},
        "coaction": {n: coaction_doc(n) for n in catalog.COACTION_NAMES},
        "table": {n: table_doc(n) for n in catalog.TABLE_NAMES},
    }


# --- text <-> document ---

def dump_doc(doc: dict) -> str:
    return yaml.safe_dump(doc, sort_keys=False, default_flow_style=False, allow_unicode=True, width=10_000)


def load_doc(text: str) -> dict:
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise FormatError(f"not a valid document: {exc}") from exc
    if not isinstance(doc, dict):
        raise FormatError("document must be a mapping")
    if doc.get("format_version") != FORMAT_VERSION:
        raise FormatError(f"unsupported format_version {doc.get('format_version')!r}")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise FormatError(f"unknown kind {kind!r}")
    missing = [f for f in _REQUIRED[kind] if f not in doc]
    if missing:
        raise FormatError(f"{kind} document lacks {', '.join(missing)}")
    extra = [f for f in doc if f not in ("format_version", "kind") + _FIELDS[kind]]
    if extra:
        raise FormatError(f"unknown {kind} fields: {', '.join(extra)}")
    return doc


def _split_key(key: str, sep: str) -> tuple:
    parts = tuple(p.strip() for p in key.split(sep))
    if len(parts) != 2 or not all(parts):
        raise FormatError(f"bad table key {key!r}")
    return parts


def spec_from_doc(doc: dict) -> dict:
    """The catalog-style spec (tuple keys) behind a loaded document."""
    kind = doc["kind"]
    if kind == "structure":
        spec = {k: doc[k] for k in _FIELDS[kind] if k in doc and k not in ("name", "braiding")}
        if doc.get("braiding"):
            spec["braiding"] = {_split_key(k, "@"): v for k, v in doc["braiding"].items()}
        return spec
    if kind == "table":
        return {"host": doc["host"], "target": doc["target"],
                "product_table": {_split_key(k, "*"): v for k, v in doc["product_table"].items()}}
    return {k: doc[k] for k in _FIELDS[kind] if k in doc}


def build(doc: dict):
    """Object described by a document (presentation, StructureMaps,
    CoactionMap or MultiplicationTable)."""
    kind, name = doc["kind"], doc["name"]
    if kind == "presentation":
        weights = {}
        for g in doc["generators"]:
            weights[g["name"]] = int(g.get("weight", 1))
        return make_presentation(name, weights, list(doc["relations"]),
                                 tuple(doc.get("parameters") or ("q",)), tuple(doc.get("central") or ()))
    spec = spec_from_doc(doc)
    if kind == "structure":
        return catalog.structure_from_tables(name, spec, base=resolve("presentation", spec["base"]))
    if kind == "coaction":
        return catalog.coaction_from_tables(name, spec, resolve("presentation", spec["coacted"]),
                                            resolve("presentation", spec["coacting"]))
    return catalog.table_from_spec(name, spec, resolve("presentation", spec["host"]),
                                   resolve("presentation", spec["target"]))


# --- shipped files ---

def data_dir() -> Path:
    return Path(str(resources.files("braidkit") / "data"))


def shipped_files() -> dict:
    """{kind: {name: path}} for the documents shipped with the package."""
    out = {}
    for kind, sub in _DIRS.items():
        d = data_dir() / sub
        out[kind] = {p.stem: p for p in sorted(d.glob("*.yaml"))} if d.is_dir() else {}
    return out


def write_shipped(root: Path | None = None) -> list:
    """Write every compiled-in document to ``root`` (default: the package
    data directory); returns the paths written."""
    root = root or data_dir()
    written = []
    for kind, docs in builtin_docs().items():
        d = root / _DIRS[kind]
        d.mkdir(parents=True, exist_ok=True)
        for name, doc in docs.items():
            path = d / f"{name}.yaml"
            path.write_text(dump_doc(doc), encoding="utf-8")
            written.append(path)
    return written


def load_file(path) -> dict:
    return load_doc(Path(path).read_text(encoding="utf-8"))


@lru_cache(maxsize=None)
def _shipped_object(kind: str, name: str):
    return build(load_file(shipped_files()[kind][name]))


def names(kind: str) -> list:
    """Compiled-in names followed by any file-only names, without repeats."""
    compiled = builtin_names(kind)
    return compiled + [n for n in shipped_files()[kind] if n not in compiled]


def builtin_names(kind: str) -> list:
    return {
        "presentation": list(BUILTIN_NAMES),
        "structure": list(catalog.STRUCTURE_NAMES),
        "coaction": list(catalog.COACTION_NAMES),
        "table": list(catalog.TABLE_NAMES),
    }[kind]


def resolve(kind: str, name: str):
    """Look ``name`` up among the compiled-in objects, then the shipped
    files; a path to a ``.yaml`` file is loaded directly."""
    if name.endswith((".yaml", ".yml")):
        doc = load_file(name)
        if doc["kind"] != kind:
            raise FormatError(f"{name} holds a {doc['kind']}, expected a {kind}")
        return build(doc)
    if kind == "presentation":
        from .presentations import ALIASES

        base = name.split("|", 1)[0]
        if base in BUILTIN_NAMES or base in ALIASES:
            return catalog.resolve_presentation(name)
        if "|" in name:
            spec = name.split("|", 1)[1]
            binds = dict(kv.split("=") for kv in spec.split(","))
            from .scalar import S

            return resolve(kind, base).specialize({k: S(v) for k, v in binds.items()})
    elif name in builtin_names(kind):
        return {"structure": catalog.structure, "coaction": catalog.coaction, "table": catalog.product_table}[kind](name)
    if name in shipped_files()[kind]:
        return _shipped_object(kind, name)
    raise KeyError(f"unknown {kind} {name!r}; known: {', '.join(names(kind))}")


def kind_of(name: str) -> str:
    """Which catalog section a name (or document path) belongs to."""
    if name.endswith((".yaml", ".yml")):
        return load_file(name)["kind"]
    from .presentations import ALIASES

    for kind in KINDS:
        key = name.split("|", 1)[0] if kind == "presentation" else name
        if key in names(kind) or (kind == "presentation" and key in ALIASES):
            return kind
    raise KeyError(f"unknown name {name!r}")
