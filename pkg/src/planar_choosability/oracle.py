"""Exact list coloring by backtracking, independent of the inductive solver."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

from .errors import CapExceeded
from .graph import PlaneGraph
from .lists import Coloring, ListAssignment

DEFAULT_BUDGET = 10**7


class Status(str, enum.Enum):
    FOUND = "Found"
    INFEASIBLE = "Infeasible"
    ABORTED = "Aborted"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class OracleResult:
    status: Status
    coloring: Coloring | None
    nodes_explored: int


class _Budget(Exception):
    pass


def _adjacency(g) -> tuple[list[int], dict[int, set[int]]]:
    if isinstance(g, PlaneGraph):
        return sorted(g.vertices), {v: set(g.adjacency[v]) for v in g.vertices}
    n, edges = g
    adj: dict[int, set[int]] = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return list(range(n)), adj


def _domains(verts: Iterable[int], lists: ListAssignment, pair=None) -> dict[int, set[int]]:
    dom = {v: set(lists.tilde(v)) for v in verts}
    if pair is not None:
        v1, v2 = lists.root
        dom[v1] = {pair[0]}
        dom[v2] = {pair[1]}
    return dom


def _search(adj, dom: dict[int, set[int]], budget: int, nodes: list[int]) -> Coloring | None:
    """MRV backtracking with forward checking; ``dom`` is consumed."""
    f: Coloring = {}
    free = set(dom)

    def rec() -> bool:
        if not free:
            return True
        v = min(free, key=lambda u: (len(dom[u]), u))
        free.remove(v)
        for c in sorted(dom[v]):
            nodes[0] += 1
            if nodes[0] > budget:
                raise _Budget
            pruned = [u for u in adj[v] if u in free and c in dom[u]]
            ok = True
            for u in pruned:
                dom[u].discard(c)
                if not dom[u]:
                    ok = False
            if ok:
                f[v] = c
                if rec():
                    return True
                del f[v]
            for u in pruned:
                dom[u].add(c)
        free.add(v)
        return False

    return dict(sorted(f.items())) if rec() else None


def brute_force_color(g, lists: ListAssignment, budget: int = DEFAULT_BUDGET) -> OracleResult:
    """Find one L-coloring of ``g`` (a PlaneGraph or ``(n, edges)``).

    A rooted assignment is expanded by trying its root pairs in sorted order.
    """
    verts, adj = _adjacency(g)
    nodes = [0]
    pairs = lists.sorted_pairs() if lists.is_rooted else [None]
    try:
        for pair in pairs:
            f = _search(adj, _domains(verts, lists, pair), budget, nodes)
            if f is not None:
                return OracleResult(Status.FOUND, f, nodes[0])
    except _Budget:
        return OracleResult(Status.ABORTED, None, nodes[0])
    return OracleResult(Status.INFEASIBLE, None, nodes[0])


def enumerate_all(g, lists: ListAssignment, cap: int = 100_000) -> list[Coloring]:
    """Every L-coloring, lexicographic in the colors of vertices taken by id."""
    verts, adj = _adjacency(g)
    dom = _domains(verts, lists)
    pairs = set(lists.root_pairs) if lists.is_rooted else None
    root = lists.root
    out: list[Coloring] = []
    f: Coloring = {}

    def rec(i: int) -> None:
        if i == len(verts):
            if pairs is not None and (f[root[0]], f[root[1]]) not in pairs:
                return
            if len(out) == cap:
                raise CapExceeded(f"more than {cap} colorings", out)
            out.append(dict(f))
            return
        v = verts[i]
        for c in sorted(dom[v]):
            if any(f.get(u) == c for u in adj[v]):
                continue
            f[v] = c
            rec(i + 1)
            del f[v]

    rec(0)
    return out
