"""Canonical JSON files for graphs, list assignments, colorings and traces.

Writers emit keys and sets in a fixed order, so ``dumps(loads(text)) == text``
for any text a writer produced.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping

from .errors import FormatError, GraphError
from .graph import PlaneGraph, build_plane_graph
from .lists import Coloring, ListAssignment


def _dump(obj: Any) -> str:
    return json.dumps(obj, separators=(", ", ": ")) + "\n"


def _parse(text: str, what: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(e.msg, f"{what} line {e.lineno} column {e.colno}") from None


def _int(x: Any, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise FormatError(f"expected an integer, got {x!r}", where)
    return x


def _int_key(k: str, where: str) -> int:
    try:
        return int(k)
    except ValueError:
        raise FormatError(f"vertex key {k!r} is not an integer", where) from None


def _field(doc: Any, name: str, what: str) -> Any:
    if not isinstance(doc, dict):
        raise FormatError("expected a JSON object", what)
    if name not in doc:
        raise FormatError(f"missing field {name!r}", what)
    return doc[name]


def _int_list(x: Any, where: str) -> list[int]:
    if not isinstance(x, list):
        raise FormatError(f"expected an array, got {x!r}", where)
    return [_int(v, f"{where}[{i}]") for i, v in enumerate(x)]


# -- graphs ----------------------------------------------------------------


def graph_to_doc(g: PlaneGraph) -> dict:
    n = len(g.rotation)
    return {
        "n": n,
        "rotation": [list(g.rotation[v]) for v in range(n)],
        "outer": list(g.outer) if g.outer is not None else None,
    }


def dumps_graph(g: PlaneGraph) -> str:
    return _dump(graph_to_doc(g))


def loads_graph(text: str) -> PlaneGraph:
    doc = _parse(text, "graph")
    n = _int(_field(doc, "n", "graph"), "graph.n")
    rot = _field(doc, "rotation", "graph")
    if not isinstance(rot, list) or len(rot) != n:
        raise FormatError(f"expected an array of {n} rotations", "graph.rotation")
    rotation = [_int_list(r, f"graph.rotation[{i}]") for i, r in enumerate(rot)]
    for i, r in enumerate(rotation):
        for j, u in enumerate(r):
            if not 0 <= u < n:
                raise FormatError(f"vertex {u} out of range", f"graph.rotation[{i}][{j}]")
    outer = doc.get("outer")
    if outer is not None:
        outer = _int_list(outer, "graph.outer")
        if len(outer) != 2:
            raise FormatError("expected a directed edge [u, v]", "graph.outer")
        outer = tuple(outer)
    try:
        return build_plane_graph([tuple(r) for r in rotation], outer)
    except GraphError as e:
        raise FormatError(str(e), "graph") from None


# -- list assignments ------------------------------------------------------


def lists_to_doc(lists: ListAssignment) -> dict:
    doc: dict = {"lists": {str(v): sorted(lists.lists[v]) for v in sorted(lists.lists)}}
    if lists.is_rooted:
        doc["root"] = list(lists.root)
        doc["root_pairs"] = [list(p) for p in lists.sorted_pairs()]
    return doc


def dumps_lists(lists: ListAssignment) -> str:
    return _dump(lists_to_doc(lists))


def loads_lists(text: str) -> ListAssignment:
    doc = _parse(text, "lists")
    raw = _field(doc, "lists", "lists")
    if not isinstance(raw, dict):
        raise FormatError("expected a map from vertex id to colors", "lists.lists")
    lists = {}
    for k, cs in raw.items():
        where = f"lists.lists[{k!r}]"
        colors = _int_list(cs, where)
        if len(set(colors)) != len(colors):
            raise FormatError("repeated color", where)
        lists[_int_key(k, where)] = frozenset(colors)
    root = doc.get("root")
    pairs = doc.get("root_pairs")
    if (root is None) != (pairs is None):
        raise FormatError("root and root_pairs must appear together", "lists")
    if root is not None:
        root = tuple(_int_list(root, "lists.root"))
        if len(root) != 2:
            raise FormatError("expected [v1, v2]", "lists.root")
        if not isinstance(pairs, list):
            raise FormatError("expected an array of pairs", "lists.root_pairs")
        ps = []
        for i, p in enumerate(pairs):
            p = _int_list(p, f"lists.root_pairs[{i}]")
            if len(p) != 2:
                raise FormatError("expected [c, d]", f"lists.root_pairs[{i}]")
            ps.append(tuple(p))
        pairs = frozenset(ps)
    try:
        return ListAssignment(lists, root, pairs)
    except ValueError as e:
        raise FormatError(str(e), "lists") from None


# -- colorings and traces --------------------------------------------------


def dumps_coloring(f: Mapping[int, int]) -> str:
    return _dump({str(v): f[v] for v in sorted(f)})


def loads_coloring(text: str) -> Coloring:
    doc = _parse(text, "coloring")
    if not isinstance(doc, dict):
        raise FormatError("expected a map from vertex id to color", "coloring")
    return {_int_key(k, f"coloring[{k!r}]"): _int(c, f"coloring[{k!r}]") for k, c in doc.items()}


def dumps_records(records: list[dict]) -> str:
    return _dump(records)


def read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise FormatError(f"not UTF-8: {e.reason}", str(path)) from None


def write_text(path: str | Path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")
