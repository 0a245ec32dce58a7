"""Reading and writing networks, labellings, plans and encodings."""

from __future__ import annotations

import json
import os
import tempfile
from functools import lru_cache
from importlib import resources

import jsonschema

from .errors import ParseError
from .network import EditPlan, Labelling, LabelledNetwork, SocialNetwork

__all__ = [
    "LABEL_ALIASES",
    "parse_label",
    "format_label",
    "load_schema",
    "validate",
    "network_from_json",
    "network_to_json",
    "read_network",
    "read_edge_list",
    "labelling_to_json",
    "plan_from_json",
    "read_plan",
    "write_atomic",
]

LABEL_ALIASES = {"b": 0, "r": 1, "g": 2}
_TAGS = {0: "b", 1: "r"}


def parse_label(value):
    if isinstance(value, bool):
        raise ParseError(f"bad label {value!r}")
    if isinstance(value, int):
        if value < 0:
            raise ParseError(f"negative label {value}")
        return value
    if isinstance(value, str):
        key = value.strip().lower()
        if key in LABEL_ALIASES:
            return LABEL_ALIASES[key]
        if key.isdigit():
            return int(key)
    raise ParseError(f"bad label {value!r}; expected b, r, g or a non-negative integer")


def format_label(colour: int, palette_size: int = 2):
    return _TAGS[colour] if palette_size == 2 else colour


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    text = resources.files("majority_illusion").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def validate(obj, name: str):
    """Raise :class:`ParseError` unless ``obj`` matches the shipped schema ``name``."""
    try:
        jsonschema.validate(obj, load_schema(name))
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ParseError(f"{name} document invalid at {where}: {exc.message}") from None


def network_from_json(data: dict):
    """Return a :class:`LabelledNetwork` when every node has a label, else a :class:`SocialNetwork`."""
    validate(data, "network")
    nodes = data["nodes"]
    ids = [node["id"] for node in nodes]
    if sorted(ids) != list(range(len(ids))):
        raise ParseError("node ids must be exactly 0..n-1")
    sn = SocialNetwork.from_edges(len(ids), [tuple(e) for e in data["edges"]])
    labels = {node["id"]: node.get("label") for node in nodes}
    if any(label is None for label in labels.values()):
        if any(label is not None for label in labels.values()):
            raise ParseError("either every node carries a label or none does")
        return sn
    colours = tuple(parse_label(labels[i]) for i in range(len(ids)))
    palette = max(2, max(colours, default=0) + 1)
    return LabelledNetwork(sn, Labelling(colours, palette))


def network_to_json(net) -> dict:
    if isinstance(net, LabelledNetwork):
        sn, lab = net.network, net.labelling
        nodes = [{"id": i, "label": format_label(c, lab.palette_size)} for i, c in enumerate(lab.colours)]
    else:
        sn = net
        nodes = [{"id": i} for i in range(sn.node_count)]
    return {"nodes": nodes, "edges": [list(e) for e in sorted(sn.edges)]}


def labelling_to_json(lab: Labelling) -> dict:
    return {"nodes": [{"id": i, "label": format_label(c, lab.palette_size)} for i, c in enumerate(lab.colours)]}


def read_edge_list(path, labels_path=None):
    """Plain ``u v`` lines (``#`` comments); labels come from an ``id label`` sidecar."""
    edges = []
    top = -1
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ParseError(f"expected 'u v', got {line!r}", lineno)
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError(f"non-integer node id in {line!r}", lineno) from None
            edges.append((u, v))
            top = max(top, u, v)
    labels = {}
    if labels_path is not None:
        with open(labels_path) as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                parts = line.split()
                if len(parts) != 2:
                    raise ParseError(f"expected 'id label', got {line!r}", lineno)
                try:
                    node = int(parts[0])
                except ValueError:
                    raise ParseError(f"non-integer node id {parts[0]!r}", lineno) from None
                labels[node] = parse_label(parts[1])
        top = max(top, max(labels, default=-1))
    n = top + 1
    sn = SocialNetwork.from_edges(n, edges)
    if labels_path is None:
        return sn
    missing = [i for i in range(n) if i not in labels]
    if missing:
        raise ParseError(f"labels missing for nodes {missing[:10]}")
    colours = tuple(labels[i] for i in range(n))
    return LabelledNetwork(sn, Labelling(colours, max(2, max(colours, default=0) + 1)))


def read_network(path, labels_path=None):
    """Load JSON (by content) or edge-list text."""
    with open(path) as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        if labels_path is not None:
            raise ParseError("a labels file only applies to edge-list input")
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
        return network_from_json(data)
    return read_edge_list(path, labels_path)


def plan_from_json(data: dict) -> EditPlan:
    validate(data, "plan")
    return EditPlan.of([tuple(p) for p in data["add"]], [tuple(p) for p in data["remove"]])


def read_plan(path) -> EditPlan:
    with open(path) as fh:
        try:
            return plan_from_json(json.load(fh))
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None


def write_atomic(path, text: str):
    """Write ``text`` to ``path`` via a temporary file so readers never see a partial file."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
