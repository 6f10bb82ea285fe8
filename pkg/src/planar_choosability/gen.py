"""Seeded generators of near-triangulations and list assignments.

All randomness comes from ``random.Random`` (Mersenne Twister MT19937) seeded
with an integer, and only ``randrange`` is used, so streams replay across
platforms and Python versions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Literal

from .errors import PaletteTooSmall
from .graph import PlaneGraph, build_plane_graph
from .lists import ListAssignment

GRAPH_STREAM = 0
LIST_STREAM = 1


def rng_for(seed: int, stream: int) -> random.Random:
    return random.Random((seed << 1) | stream)


@dataclass(frozen=True)
class ListMode:
    kind: Literal["separated", "symmetric", "tcommon"]
    k: int = 4
    s: int = 2
    t: int = 0

    def __post_init__(self):
        if self.k <= 0:
            raise ValueError("list size must be positive")
        if self.kind == "separated" and not (self.k > self.s >= 0):
            raise ValueError("separated mode needs k > s >= 0")
        if self.kind == "tcommon" and not (0 <= self.t <= self.k):
            raise ValueError("t-common mode needs 0 <= t <= k")


def Separated(k: int = 4, s: int = 2) -> ListMode:
    return ListMode("separated", k=k, s=s)


def Symmetric(k: int = 4) -> ListMode:
    return ListMode("symmetric", k=k)


def TCommon(k: int = 4, t: int = 2) -> ListMode:
    return ListMode("tcommon", k=k, t=t)


@dataclass(frozen=True)
class GenSpec:
    kind: Literal["stacked", "polygon", "wheel"]
    n: int = 0
    k: int = 0
    m: int = 0
    seed: int = 0
    list_mode: ListMode = Separated()
    palette_size: int = 9
    flips: int = 0

    def __post_init__(self):
        if self.kind == "stacked" and self.n < 3:
            raise ValueError("stacked triangulations need n >= 3")
        if self.kind in ("polygon", "wheel") and (self.k < 3 or self.m < 0):
            raise ValueError("polygons need k >= 3 and m >= 0")
        if self.palette_size <= 0:
            raise ValueError("palette_size must be positive")


def from_faces(n: int, faces: list[tuple[int, ...]], outer: tuple[int, int]) -> PlaneGraph:
    """Rotation system from consistently oriented face walks covering every dart."""
    succ: dict[int, dict[int, int]] = {v: {} for v in range(n)}
    for face in faces:
        k = len(face)
        for i in range(k):
            succ[face[(i + 1) % k]][face[i]] = face[(i + 2) % k]
    rotation = []
    for v in range(n):
        s = succ[v]
        if not s:
            rotation.append(())
            continue
        start = min(s)
        order = [start]
        u = s[start]
        while u != start:
            order.append(u)
            u = s[u]
        rotation.append(tuple(order))
    return build_plane_graph(rotation, outer)


def _stack(rng: random.Random, n: int, inner: list[tuple[int, int, int]], steps: int) -> int:
    for _ in range(steps):
        i = rng.randrange(len(inner))
        a, b, c = inner[i]
        v = n
        n += 1
        inner[i] = (a, b, v)
        inner.append((b, c, v))
        inner.append((c, a, v))
    return n


def gen_stacked_triangulation(n: int, seed: int) -> PlaneGraph:
    rng = rng_for(seed, GRAPH_STREAM)
    inner = [(0, 1, 2)]
    _stack(rng, 3, inner, n - 3)
    return from_faces(n, inner + [(0, 2, 1)], (0, 2))


def stacked_from_choices(choices: list[int]) -> PlaneGraph:
    """Stacked triangulation inserting each new vertex into face ``choices[i]``."""
    inner = [(0, 1, 2)]
    n = 3
    for i in choices:
        a, b, c = inner[i]
        inner[i] = (a, b, n)
        inner.append((b, c, n))
        inner.append((c, a, n))
        n += 1
    return from_faces(n, inner + [(0, 2, 1)], (0, 2))


def _triangulate_polygon(rng: random.Random, poly: list[int], out: list[tuple[int, int, int]]) -> None:
    stack = [poly]
    while stack:
        p = stack.pop()
        if len(p) < 3:
            continue
        j = 1 + rng.randrange(len(p) - 2)
        out.append((p[0], p[j], p[-1]))
        stack.append(p[: j + 1])
        stack.append(p[j:])


def _flip(rng: random.Random, inner: list[tuple[int, int, int]], count: int) -> None:
    """Random flips of interior edges; keeps the graph simple and the boundary fixed."""
    face_of: dict[tuple[int, int], int] = {}
    adj: dict[int, set[int]] = {}
    for i, (a, b, c) in enumerate(inner):
        for p, q in ((a, b), (b, c), (c, a)):
            face_of[(p, q)] = i
            adj.setdefault(p, set()).add(q)
            adj.setdefault(q, set()).add(p)
    darts = sorted(d for d in face_of if (d[1], d[0]) in face_of and d[0] < d[1])
    if not darts:
        return
    for _ in range(count):
        a, b = darts[rng.randrange(len(darts))]
        i, j = face_of[(a, b)], face_of[(b, a)]
        c = next(v for v in inner[i] if v != a and v != b)
        d = next(v for v in inner[j] if v != a and v != b)
        if d in adj[c]:
            continue
        for p, q in ((a, b), (b, c), (c, a), (b, a), (a, d), (d, b)):
            del face_of[(p, q)]
        inner[i] = (c, a, d)
        inner[j] = (b, c, d)
        for f in (i, j):
            x, y, z = inner[f]
            for p, q in ((x, y), (y, z), (z, x)):
                face_of[(p, q)] = f
        adj[a].discard(b)
        adj[b].discard(a)
        adj[c].add(d)
        adj[d].add(c)
        darts[darts.index((a, b))] = (min(c, d), max(c, d))


def gen_polygon_triangulation(k: int, m: int, seed: int, flips: int = 0) -> PlaneGraph:
    """Triangulated k-gon with m stacked interior vertices, then ``flips`` random
    interior edge flips (flips keep the boundary and the vertex count)."""
    rng = rng_for(seed, GRAPH_STREAM)
    inner: list[tuple[int, int, int]] = []
    _triangulate_polygon(rng, list(range(k)), inner)
    n = _stack(rng, k, inner, m)
    if flips:
        _flip(rng, inner, flips)
    outer = tuple(range(k - 1, -1, -1))
    return from_faces(n, inner + [outer], (k - 1, k - 2))


def gen_wheel(k: int) -> PlaneGraph:
    """Hub ``k`` inside the cycle ``0..k-1``."""
    inner = [(i, (i + 1) % k, k) for i in range(k)]
    outer = tuple(range(k - 1, -1, -1))
    return from_faces(k + 1, inner + [outer], (k - 1, k - 2))


def gen_graph(spec: GenSpec) -> PlaneGraph:
    if spec.kind == "stacked":
        return gen_stacked_triangulation(spec.n, spec.seed)
    if spec.kind == "polygon":
        return gen_polygon_triangulation(spec.k, spec.m, spec.seed, spec.flips)
    return gen_wheel(spec.k)


def _draw(rng: random.Random, pool: list[int], k: int) -> list[int]:
    pool = list(pool)
    for i in range(k):
        j = i + rng.randrange(len(pool) - i)
        pool[i], pool[j] = pool[j], pool[i]
    return pool[:k]


MAX_TRIES = 200
MAX_GROWTH = 64


def gen_list_assignment(g: PlaneGraph, spec: GenSpec) -> ListAssignment:
    mode = spec.list_mode
    rng = rng_for(spec.seed, LIST_STREAM)
    k = mode.k
    palette = spec.palette_size
    lists: dict[int, frozenset[int]] = {}
    if mode.kind == "separated":
        palette = max(palette, k)
        for v in g.vertices:
            placed = False
            for _ in range(MAX_GROWTH):
                for _ in range(MAX_TRIES):
                    cand = frozenset(_draw(rng, range(1, palette + 1), k))
                    if all(len(cand & lists[u]) <= mode.s for u in g.rotation[v] if u in lists):
                        lists[v] = cand
                        placed = True
                        break
                if placed:
                    break
                palette += 1
            if not placed:
                raise PaletteTooSmall(f"could not place a list at vertex {v}")
    elif mode.kind == "symmetric":
        half, odd = divmod(k, 2)
        if palette < half:
            raise PaletteTooSmall("palette smaller than half the list size")
        for v in g.vertices:
            mags = _draw(rng, range(1, palette + 1), half)
            cs = {c for i in mags for c in (i, -i)}
            if odd:
                cs.add(0)
            lists[v] = frozenset(cs)
    else:
        if palette < k:
            raise PaletteTooSmall("palette smaller than the list size")
        common = _draw(rng, range(1, palette + 1), mode.t)
        rest = [c for c in range(1, palette + 1) if c not in common]
        for v in g.vertices:
            lists[v] = frozenset(common) | frozenset(_draw(rng, rest, k - mode.t))
    return ListAssignment(lists)


def generate(spec: GenSpec) -> tuple[PlaneGraph, ListAssignment]:
    g = gen_graph(spec)
    return g, gen_list_assignment(g, spec)


FLIPS_PER_VERTEX = 3


def standard_corpus(
    count: int = 1000, seed: int = 1, list_mode: ListMode = Separated(), max_size: int = 300
) -> list[GenSpec]:
    """Alternating polygon triangulations (k in [4, 12], up to ``max_size``
    interior vertices, mixed by edge flips) and stacked triangulations
    (4 to ``max_size`` vertices)."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        s = rng.getrandbits(63)
        if i % 2 == 0:
            m = (s >> 8) % (max_size + 1)
            out.append(GenSpec("polygon", k=4 + s % 9, m=m, seed=s, list_mode=list_mode,
                               flips=FLIPS_PER_VERTEX * m))
        else:
            out.append(GenSpec("stacked", n=4 + (s >> 8) % (max_size - 3), seed=s,
                               list_mode=list_mode))
    return out
