"""Plane graphs as rotation systems, and the topological queries the solver needs.

A plane graph is stored as a map ``vertex -> cyclic tuple of neighbours``
(clockwise) plus one directed edge ("dart") lying on the outer face. Face
walks use the rule ``(u, v) -> (v, succ_v(u))`` where ``succ_v`` is the
successor of ``u`` in the rotation of ``v``.

Vertex ids are arbitrary non-negative integers internally, so subgraphs keep
the ids of their parent. Files and ``build_plane_graph`` use ``0..n-1``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .errors import (
    AsymmetricRotation,
    BadOuterHint,
    EulerViolation,
    LoopOrMultiEdge,
    NonPlanar,
    NotACycle,
    NotOnBoundary,
    NotSimple,
    NotTwoConnected,
    RootVertex,
)

Dart = tuple[int, int]
FaceWalk = tuple[int, ...]


def face_darts(face: FaceWalk) -> list[Dart]:
    """The directed edges of a face walk, in walk order."""
    k = len(face)
    return [(face[i], face[(i + 1) % k]) for i in range(k)]


@dataclass(frozen=True, eq=False)
class PlaneGraph:
    rotation: Mapping[int, tuple[int, ...]]
    outer: Dart | None = None

    # -- basic structure -------------------------------------------------

    @cached_property
    def _succ(self) -> dict[int, dict[int, int]]:
        succ = {}
        for v, rot in self.rotation.items():
            k = len(rot)
            succ[v] = {rot[i]: rot[(i + 1) % k] for i in range(k)}
        return succ

    @cached_property
    def adjacency(self) -> dict[int, frozenset[int]]:
        return {v: frozenset(rot) for v, rot in self.rotation.items()}

    @property
    def n(self) -> int:
        return len(self.rotation)

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self.rotation))

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted((u, v) for u, rot in self.rotation.items() for v in rot if u < v))

    @property
    def num_edges(self) -> int:
        return sum(len(r) for r in self.rotation.values()) // 2

    def neighbours(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency.get(u, ())

    def succ(self, v: int, u: int) -> int:
        """Neighbour of ``v`` following ``u`` in the rotation at ``v``."""
        return self._succ[v][u]

    def next_dart(self, dart: Dart) -> Dart:
        u, v = dart
        return (v, self._succ[v][u])

    # -- faces -----------------------------------------------------------

    def walk(self, dart: Dart) -> FaceWalk:
        """Vertex sequence of the face containing ``dart``, starting at its tail."""
        start = dart
        out = []
        d = dart
        while True:
            out.append(d[0])
            d = self.next_dart(d)
            if d == start:
                return tuple(out)

    @cached_property
    def faces(self) -> tuple[FaceWalk, ...]:
        seen: set[Dart] = set()
        faces = []
        for v in self.vertices:
            for u in self.rotation[v]:
                if (v, u) in seen:
                    continue
                face = self.walk((v, u))
                seen.update(face_darts(face))
                faces.append(face)
        return tuple(faces)

    @cached_property
    def _dart_face(self) -> dict[Dart, int]:
        out = {}
        for i, face in enumerate(self.faces):
            for d in face_darts(face):
                out[d] = i
        return out

    def face_of(self, dart: Dart) -> int:
        return self._dart_face[dart]

    @property
    def outer_face(self) -> int | None:
        return None if self.outer is None else self._dart_face[self.outer]

    @cached_property
    def outer_walk(self) -> FaceWalk:
        if self.outer is None:
            return tuple(self.vertices[:1])
        return self.walk(self.outer)

    # -- derived graphs --------------------------------------------------

    def restrict(self, keep: Iterable[int], outer: Dart | None = None) -> "PlaneGraph":
        """Induced subgraph on ``keep`` with inherited rotations.

        The outer dart is kept if it survives; otherwise ``outer`` must be
        supplied.
        """
        keep = keep if isinstance(keep, (set, frozenset)) else set(keep)
        rot = {v: tuple(u for u in self.rotation[v] if u in keep) for v in keep}
        if outer is None and self.outer is not None and self.outer[0] in keep and self.outer[1] in keep:
            outer = self.outer
        return PlaneGraph(rot, outer)

    def without(self, drop: Iterable[int], outer: Dart | None = None) -> "PlaneGraph":
        drop = set(drop)
        return self.restrict([v for v in self.rotation if v not in drop], outer)

    def with_outer(self, dart: Dart) -> "PlaneGraph":
        return PlaneGraph(self.rotation, dart)

    # -- validation ------------------------------------------------------

    def components(self) -> list[list[int]]:
        seen: set[int] = set()
        comps = []
        for s in self.vertices:
            if s in seen:
                continue
            seen.add(s)
            comp = [s]
            queue = deque([s])
            while queue:
                v = queue.popleft()
                for u in self.rotation[v]:
                    if u not in seen:
                        seen.add(u)
                        comp.append(u)
                        queue.append(u)
            comps.append(sorted(comp))
        return comps

    def validate(self) -> None:
        """Raise unless the rotation system is a simple planar embedding."""
        for v, rot in self.rotation.items():
            if v in rot or len(set(rot)) != len(rot):
                raise LoopOrMultiEdge(f"vertex {v} has a loop or repeated neighbour")
            for u in rot:
                if u not in self.rotation or v not in self._succ[u]:
                    raise AsymmetricRotation(f"{v} lists {u} but {u} does not list {v}")
        face_count: dict[int, int] = {}
        comp_of = {}
        for i, comp in enumerate(self.components()):
            for v in comp:
                comp_of[v] = i
        for face in self.faces:
            c = comp_of[face[0]]
            face_count[c] = face_count.get(c, 0) + 1
        for i, comp in enumerate(self.components()):
            e = sum(len(self.rotation[v]) for v in comp) // 2
            f = face_count.get(i, 1)
            if len(comp) - e + f != 2:
                raise EulerViolation(
                    f"component of vertex {comp[0]}: V-E+F = {len(comp) - e + f}, not 2"
                )
        if self.outer is not None and not self.has_edge(*self.outer):
            raise BadOuterHint(f"outer dart {self.outer} is not an edge")


def build_plane_graph(
    rotation: Sequence[Sequence[int]], outer_hint: Dart | None = None
) -> PlaneGraph:
    n = len(rotation)
    rot = {}
    for v, nbrs in enumerate(rotation):
        for u in nbrs:
            if not (isinstance(u, int) and 0 <= u < n):
                raise AsymmetricRotation(f"vertex {v} lists unknown vertex {u}")
        rot[v] = tuple(nbrs)
    if outer_hint is not None:
        outer_hint = (int(outer_hint[0]), int(outer_hint[1]))
        if not (0 <= outer_hint[0] < n and outer_hint[1] in rot[outer_hint[0]]):
            raise BadOuterHint(f"outer hint {outer_hint} is not a directed edge")
    elif any(rot.values()):
        raise BadOuterHint("a graph with edges needs an outer hint")
    g = PlaneGraph(rot, outer_hint)
    g.validate()
    return g


def compute_embedding(n: int, edges: Iterable[tuple[int, int]]) -> list[tuple[int, ...]]:
    """A planar rotation system for the abstract graph, or ``NonPlanar``."""
    g = nx.Graph()
    g.add_nodes_from(range(n))
    seen = set()
    for u, v in edges:
        if u == v or not (0 <= u < n and 0 <= v < n):
            raise NotSimple(f"bad edge ({u}, {v})")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise NotSimple(f"repeated edge {key}")
        seen.add(key)
        g.add_edge(u, v)
    planar, emb = nx.check_planarity(g)
    if not planar:
        raise NonPlanar("graph has no planar embedding")
    return [tuple(emb.neighbors_cw_order(v)) if g.degree(v) else () for v in range(n)]


def embed(n: int, edges: Iterable[tuple[int, int]]) -> PlaneGraph:
    """Embed an edge list; the outer face is the one left of the smallest dart."""
    rotation = compute_embedding(n, edges)
    hint = None
    for v, rot in enumerate(rotation):
        if rot:
            hint = (v, min(rot))
            break
    return build_plane_graph(rotation, hint)


def boundary_cycle(g: PlaneGraph) -> FaceWalk:
    walk = g.outer_walk
    if len(set(walk)) != len(walk) or len(walk) < 3:
        raise NotTwoConnected(f"outer walk {walk} is not a cycle")
    return walk


def find_chords(g: PlaneGraph) -> list[tuple[int, int]]:
    cycle = boundary_cycle(g)
    k = len(cycle)
    pos = {v: i for i, v in enumerate(cycle)}
    chords = []
    for a in cycle:
        for b in g.rotation[a]:
            if a < b and b in pos:
                d = (pos[a] - pos[b]) % k
                if d != 1 and d != k - 1:
                    chords.append((a, b))
    return sorted(chords)


def is_facial_triangle(g: PlaneGraph, a: int, b: int, c: int) -> bool:
    """True if the triangle abc bounds a face on either side."""
    s = g._succ
    if s[b][a] == c and s[c][b] == a and s[a][c] == b:
        return True
    return s[a][b] == c and s[c][a] == b and s[b][c] == a


def triangles(g: PlaneGraph) -> Iterable[tuple[int, int, int]]:
    """All triangles ``(a, b, c)`` with ``a < b < c``, in lexicographic order."""
    adj = g.adjacency
    for a in g.vertices:
        na = adj[a]
        for b in sorted(u for u in na if u > a):
            for c in sorted(w for w in na & adj[b] if w > b):
                yield (a, b, c)


def separating_triangles(g: PlaneGraph) -> list[tuple[int, int, int]]:
    """Non-facial triangles of a near-triangulation (each is separating)."""
    return [t for t in triangles(g) if not is_facial_triangle(g, *t)]


def find_separating_triangle(
    g: PlaneGraph, candidates: Sequence[tuple[int, int, int]] | None = None
) -> tuple[int, int, int] | None:
    """First separating triangle in lexicographic order, or None.

    ``candidates`` restricts the search to a known superset, which is valid
    whenever ``g`` is a subgraph of the graph the candidates came from.
    """
    pool = triangles(g) if candidates is None else candidates
    rot = g.rotation
    adj = g.adjacency
    for a, b, c in pool:
        if candidates is not None:
            if a not in rot or b not in rot or c not in rot:
                continue
            if b not in adj[a] or c not in adj[a] or c not in adj[b]:
                continue
        if not is_facial_triangle(g, a, b, c):
            return (a, b, c)
    return None


def _check_cycle(g: PlaneGraph, cycle: Sequence[int]) -> None:
    k = len(cycle)
    if k < 3 or len(set(cycle)) != k:
        raise NotACycle(f"{tuple(cycle)} is not a simple cycle")
    for i in range(k):
        if not g.has_edge(cycle[i], cycle[(i + 1) % k]):
            raise NotACycle(f"{cycle[i]}-{cycle[(i + 1) % k]} is not an edge")


def cycle_sides(g: PlaneGraph, cycle: Sequence[int]) -> tuple[set[int], set[int], Dart]:
    """Split the faces of ``g`` by ``cycle``.

    Returns ``(inside_faces, outside_faces, outside_dart)``: face indices on
    each side (the outside holds the outer face) and the cycle dart whose face
    lies outside.
    """
    _check_cycle(g, cycle)
    k = len(cycle)
    cdarts = set()
    for i in range(k):
        a, b = cycle[i], cycle[(i + 1) % k]
        cdarts.add((a, b))
        cdarts.add((b, a))
    faces = g.faces
    fwd = g.face_of((cycle[0], cycle[1]))
    side = {fwd}
    queue = deque([fwd])
    while queue:
        f = queue.popleft()
        for d in face_darts(faces[f]):
            if d in cdarts:
                continue
            other = g.face_of((d[1], d[0]))
            if other not in side:
                side.add(other)
                queue.append(other)
    rest = set(range(len(faces))) - side
    if g.outer_face in side:
        return rest, side, (cycle[0], cycle[1])
    return side, rest, (cycle[1], cycle[0])


def split_on_cycle(g: PlaneGraph, cycle: Sequence[int]) -> tuple[PlaneGraph, PlaneGraph]:
    """``(Int[C], Ext[C])`` with inherited rotations."""
    inside, outside, out_dart = cycle_sides(g, cycle)

    def part(face_ids: set[int], outer: Dart) -> PlaneGraph:
        keep_darts = set()
        for f in face_ids:
            keep_darts.update(face_darts(g.faces[f]))
        k = len(cycle)
        for i in range(k):
            a, b = cycle[i], cycle[(i + 1) % k]
            keep_darts.add((a, b))
            keep_darts.add((b, a))
        verts = {d[0] for d in keep_darts}
        rot = {v: tuple(u for u in g.rotation[v] if (v, u) in keep_darts) for v in verts}
        return PlaneGraph(rot, outer)

    interior = part(inside, out_dart)
    exterior = part(outside, g.outer)
    return interior, exterior


# -- rooted instances ------------------------------------------------------


@dataclass(frozen=True, eq=False)
class RootedInstance:
    """A 2-connected near-triangulation with a directed root boundary edge."""

    graph: PlaneGraph
    root: tuple[int, int]

    @cached_property
    def boundary(self) -> FaceWalk:
        return self.graph.outer_walk

    @cached_property
    def boundary_pos(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.boundary)}

    @property
    def n(self) -> int:
        return self.graph.n

    def on_boundary(self, v: int) -> bool:
        return v in self.boundary_pos

    def is_root(self, v: int) -> bool:
        return v == self.root[0] or v == self.root[1]

    def boundary_neighbours(self, v: int) -> list[int]:
        """``N(v) ∩ B(G)`` in cyclic boundary order starting after ``v``."""
        pos = self.boundary_pos
        k = len(self.boundary)
        p = pos[v]
        found = [u for u in self.graph.rotation[v] if u in pos]
        return sorted(found, key=lambda u: (pos[u] - p) % k)

    def inner_third(self, p: int, q: int) -> int:
        """Third vertex of the interior triangle on boundary edge ``pq``."""
        pos = self.boundary_pos
        k = len(self.boundary)
        if (pos[p] + 1) % k == pos[q]:
            return self.graph.succ(p, q)
        return self.graph.succ(q, p)

    def check(self) -> None:
        """Raise unless this is a rooted 2-connected near-triangulation."""
        g = self.graph
        g.validate()
        if len(g.components()) != 1:
            raise NotTwoConnected("graph is disconnected")
        walk = boundary_cycle(g)
        b = len(walk)
        if g.num_edges != 3 * g.n - 3 - b:
            raise NotTwoConnected("some interior face is not a triangle")
        v1, v2 = self.root
        pos = self.boundary_pos
        if v1 not in pos or v2 not in pos or (pos[v1] - pos[v2]) % b not in (1, b - 1):
            raise NotOnBoundary(f"root {self.root} is not a boundary edge")


def rooted(graph: PlaneGraph, root: tuple[int, int], check: bool = False) -> RootedInstance:
    inst = RootedInstance(graph, (root[0], root[1]))
    if check:
        inst.check()
    return inst


def primary_boundary_neighbours(inst: RootedInstance, v: int) -> tuple[int, int]:
    if inst.is_root(v):
        raise RootVertex(f"{v} is a root vertex")
    if not inst.on_boundary(v):
        raise NotOnBoundary(f"{v} is not on the boundary")
    nbrs = inst.boundary_neighbours(v)
    pos = inst.boundary_pos
    k = len(inst.boundary)
    p = pos[v]
    r1 = (pos[inst.root[0]] - p) % k
    r2 = (pos[inst.root[1]] - p) % k
    lo, hi = min(r1, r2), max(r1, r2)
    for a, b in zip(nbrs, nbrs[1:]):
        if (pos[a] - p) % k <= lo and hi <= (pos[b] - p) % k:
            return (a, b)
    raise NotTwoConnected(f"no primary boundary neighbours found for {v}")


# -- blocks ----------------------------------------------------------------


@dataclass(frozen=True)
class BlockTree:
    """Blocks of a connected graph in attachment order.

    ``attach[i]`` is the cut vertex block ``i`` shares with earlier blocks
    (``None`` for the first block).
    """

    blocks: tuple[frozenset[int], ...]
    block_edges: tuple[tuple[tuple[int, int], ...], ...]
    cut_vertices: frozenset[int]
    attach: tuple[int | None, ...]
    tree: tuple[tuple[int, int], ...]  # (block index, cut vertex)


def block_decomposition(g: PlaneGraph) -> BlockTree:
    ng = nx.Graph()
    ng.add_nodes_from(g.vertices)
    ng.add_edges_from(g.edges)
    raw = [tuple(sorted((min(e), max(e)) for e in comp)) for comp in nx.biconnected_component_edges(ng)]
    raw.sort(key=lambda es: (min(min(e) for e in es), es))
    if not raw:
        return BlockTree((), (), frozenset(), (), ())
    vsets = [frozenset(v for e in es for v in e) for es in raw]
    cuts = frozenset(nx.articulation_points(ng))
    by_vertex: dict[int, list[int]] = {}
    for i, vs in enumerate(vsets):
        for v in vs:
            by_vertex.setdefault(v, []).append(i)
    order = [0]
    attach: list[int | None] = [None]
    placed = {0}
    queue = deque([0])
    while queue:
        b = queue.popleft()
        for c in sorted(vsets[b] & cuts):
            for nb in by_vertex[c]:
                if nb not in placed:
                    placed.add(nb)
                    order.append(nb)
                    attach.append(c)
                    queue.append(nb)
    tree = tuple(sorted((order.index(i), c) for i in range(len(vsets)) for c in vsets[i] & cuts))
    return BlockTree(
        blocks=tuple(vsets[i] for i in order),
        block_edges=tuple(raw[i] for i in order),
        cut_vertices=cuts,
        attach=tuple(attach),
        tree=tree,
    )


def add_face_apexes(g: PlaneGraph, lists, palette_floor: int = -1):
    """Stellate every non-triangular interior face.

    Returns ``(graph, lists, apexes)``. Each apex gets four fresh negative
    colors so the extended assignment keeps its separation.
    """
    from .lists import ListAssignment

    boundary_cycle(g)
    outer = g.outer_face
    rot = {v: list(r) for v, r in g.rotation.items()}
    new_lists = dict(lists.lists)
    apexes = []
    next_id = max(g.vertices) + 1
    color = palette_floor
    for fi, face in enumerate(g.faces):
        if fi == outer or len(face) <= 3:
            continue
        if len(set(face)) != len(face):
            raise NotTwoConnected(f"face {face} repeats a vertex")
        h = next_id
        next_id += 1
        k = len(face)
        for i in range(k):
            a, b = face[i], face[(i + 1) % k]
            r = rot[b]
            r.insert(r.index(a) + 1, h)
        rot[h] = [face[(k - 1 - i) % k] for i in range(k)]
        new_lists[h] = frozenset(range(color, color - 4, -1))
        color -= 4
        apexes.append(h)
    out = PlaneGraph({v: tuple(r) for v, r in rot.items()}, g.outer)
    return out, ListAssignment(new_lists, lists.root, lists.root_pairs), frozenset(apexes)
