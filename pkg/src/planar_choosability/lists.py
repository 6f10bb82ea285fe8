"""List assignments, the validity conditions of rooted instances, and coloring checks."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping, NamedTuple

from .errors import NotPrimaryNeighbour, NotRooted, PreconditionUnmet
from .graph import PlaneGraph, RootedInstance, primary_boundary_neighbours

Color = int
Coloring = dict[int, Color]


@dataclass(frozen=True)
class ListAssignment:
    """Per-vertex color sets, optionally with ordered color pairs on a root edge."""

    lists: Mapping[int, frozenset[Color]]
    root: tuple[int, int] | None = None
    root_pairs: frozenset[tuple[Color, Color]] | None = None

    def __post_init__(self):
        if (self.root is None) != (self.root_pairs is None):
            raise ValueError("root and root_pairs must be given together")
        if self.root is not None:
            for c, d in self.root_pairs:
                if c == d:
                    raise ValueError(f"root pair ({c}, {d}) repeats a color")
            v1, v2 = self.root
            if v1 in self.lists or v2 in self.lists:
                raise ValueError("root vertices must not carry plain lists")

    @property
    def is_rooted(self) -> bool:
        return self.root is not None

    def tilde(self, v: int) -> frozenset[Color]:
        if self.root is not None:
            if v == self.root[0]:
                return frozenset(c for c, _ in self.root_pairs)
            if v == self.root[1]:
                return frozenset(d for _, d in self.root_pairs)
        return self.lists.get(v, frozenset())

    def sorted_pairs(self) -> list[tuple[Color, Color]]:
        return sorted(self.root_pairs or ())


def tilde_lists(lists: ListAssignment) -> dict[int, frozenset[Color]]:
    if not lists.is_rooted:
        raise NotRooted("assignment has no root edge")
    out = dict(lists.lists)
    v1, v2 = lists.root
    out[v1] = lists.tilde(v1)
    out[v2] = lists.tilde(v2)
    return out


def truncate(lists: ListAssignment, k: int = 4) -> ListAssignment:
    """Keep the ``k`` smallest colors of every plain list."""
    return ListAssignment(
        {v: frozenset(sorted(cs)[:k]) for v, cs in lists.lists.items()},
        lists.root,
        lists.root_pairs,
    )


def check_separation(g: PlaneGraph, lists: ListAssignment, s: int) -> list[tuple[int, int]]:
    bad = []
    for u, v in g.edges:
        if len(lists.tilde(u) & lists.tilde(v)) > s:
            bad.append((u, v))
    return bad


def is_good_neighbour(inst: RootedInstance, lists: ListAssignment, v: int, u: int) -> bool:
    if u not in primary_boundary_neighbours(inst, v):
        raise NotPrimaryNeighbour(f"{u} is not a primary boundary neighbour of {v}")
    return _good(lists, v, u)


def _good(lists: ListAssignment, v: int, u: int) -> bool:
    lu = lists.tilde(u)
    return len(lu & lists.tilde(v)) <= 1 or len(lu) == 4


def normalize_good_neighbour(lists: ListAssignment, v: int, u: int) -> ListAssignment:
    """Drop the largest shared color from ``u`` so that ``u`` and ``v`` share at most one."""
    lu = lists.tilde(u)
    common = lu & lists.tilde(v)
    if len(lu) != 4 or len(common) != 2:
        raise PreconditionUnmet(f"need |L({u})| = 4 and |L({u}) ∩ L({v})| = 2")
    drop = max(common)
    if lists.root is not None and u in lists.root:
        i = lists.root.index(u)
        pairs = frozenset(p for p in lists.root_pairs if p[i] != drop)
        return ListAssignment(lists.lists, lists.root, pairs)
    new = dict(lists.lists)
    new[u] = lu - {drop}
    return ListAssignment(new, lists.root, lists.root_pairs)


class Verdict(str, enum.Enum):
    VALID_A = "Valid-A"
    VALID_B = "Valid-B"
    INVALID = "Invalid"

    def __str__(self) -> str:
        return self.value


class Violation(NamedTuple):
    kind: str
    vertices: tuple[int, ...]
    detail: str = ""


@dataclass(frozen=True)
class ValidityReport:
    verdict: Verdict
    v_star: int | None = None
    good_neighbour: int | None = None
    violations: tuple[Violation, ...] = ()
    # the assignment after good-neighbour normalization (None when invalid)
    assignment: ListAssignment | None = field(default=None, repr=False)

    @property
    def valid(self) -> bool:
        return self.verdict is not Verdict.INVALID


def _choose_good(inst: RootedInstance, lists: ListAssignment, v_star: int, good: list[int]) -> int:
    v1, v2 = inst.root

    def rank(u):
        if inst.is_root(u) and len(lists.tilde(u)) == 1:
            return (0, u)
        return (1 if u == v2 else 2, u)

    return min(good, key=rank)


def check_valid(
    inst: RootedInstance, lists: ListAssignment, separation: bool = True
) -> ValidityReport:
    """Decide which of conditions (A)/(B) the rooted assignment satisfies.

    With ``separation=False`` the per-edge (*,2) check is skipped; callers use
    this only when every list is a subset of a list already checked.
    """
    bad: list[Violation] = []
    if lists.root is None or tuple(lists.root) != tuple(inst.root):
        return ValidityReport(
            Verdict.INVALID, violations=(Violation("not-rooted", tuple(inst.root)),)
        )
    if separation:
        for u, v in check_separation(inst.graph, lists, 2):
            bad.append(Violation("separation", (u, v), "adjacent lists share more than 2 colors"))
    n_pairs = len(lists.root_pairs)
    deficient = []
    pos = inst.boundary_pos
    for v in inst.graph.rotation:
        if inst.is_root(v):
            continue
        size = len(lists.lists.get(v, ()))
        if v not in pos:
            if size != 4:
                bad.append(Violation("interior-size", (v,), f"interior list has {size} colors"))
        elif size < 2:
            bad.append(Violation("list-too-small", (v,), f"boundary list has {size} colors"))
        elif size == 2:
            deficient.append(v)
    if bad:
        return ValidityReport(Verdict.INVALID, violations=tuple(bad))
    if not deficient:
        if n_pairs >= 1:
            return ValidityReport(Verdict.VALID_A, assignment=lists)
        return ValidityReport(Verdict.INVALID, violations=(Violation("no-root-pair", inst.root),))
    if len(deficient) > 1:
        return ValidityReport(
            Verdict.INVALID,
            violations=(Violation("multiple-deficient", tuple(sorted(deficient))),),
        )
    v_star = deficient[0]
    if n_pairs < 2:
        return ValidityReport(
            Verdict.INVALID,
            v_star=v_star,
            violations=(Violation("too-few-root-pairs", inst.root, f"{n_pairs} pair(s) with a 2-list"),),
        )
    good = [u for u in primary_boundary_neighbours(inst, v_star) if _good(lists, v_star, u)]
    if not good:
        return ValidityReport(
            Verdict.INVALID, v_star=v_star, violations=(Violation("no-good-neighbour", (v_star,)),)
        )
    u = _choose_good(inst, lists, v_star, good)
    if len(lists.tilde(u) & lists.lists[v_star]) > 1:
        lists = normalize_good_neighbour(lists, v_star, u)
    return ValidityReport(Verdict.VALID_B, v_star=v_star, good_neighbour=u, assignment=lists)


class EdgeConflict(NamedTuple):
    u: int
    v: int


class ListBreach(NamedTuple):
    vertex: int
    color: Color


class PairBreach(NamedTuple):
    v1: int
    v2: int
    pair: tuple[Color, Color]


class Uncolored(NamedTuple):
    vertex: int


def verify_coloring(g: PlaneGraph, lists: ListAssignment, f: Mapping[int, Color]) -> list:
    out: list = []
    for v in g.vertices:
        if v not in f:
            out.append(Uncolored(v))
    for u, v in g.edges:
        if u in f and v in f and f[u] == f[v]:
            out.append(EdgeConflict(u, v))
    roots = set(lists.root or ())
    for v in g.vertices:
        if v in roots or v not in f:
            continue
        if f[v] not in lists.lists.get(v, ()):
            out.append(ListBreach(v, f[v]))
    if lists.root is not None:
        v1, v2 = lists.root
        if v1 in f and v2 in f and (f[v1], f[v2]) not in lists.root_pairs:
            out.append(PairBreach(v1, v2, (f[v1], f[v2])))
    return out
