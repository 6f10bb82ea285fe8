"""Inductive (4,2)-list coloring of planar graphs.

``solve_rooted`` follows the case analysis of the induction step by step:
base triangle, separating triangle, boundary chord (with the alternative
coloring cascade when the deficient vertex hides behind every chord), and the
two chordless cases. Every sub-assignment handed to a recursive call is
re-checked with ``check_valid``; a failure raises ``InternalProofViolation``.

``solve`` reduces an arbitrary simple planar graph to rooted instances:
components, then blocks in attachment order, then face stellation.
"""

from __future__ import annotations

import sys
import threading
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    GraphError,
    InternalProofViolation,
    ListTooShort,
    ReservedColor,
    SeparationViolated,
)
from .graph import (
    PlaneGraph,
    RootedInstance,
    add_face_apexes,
    block_decomposition,
    embed,
    find_chords,
    rooted,
    separating_triangles,
    split_on_cycle,
)
from .lists import (
    Coloring,
    ListAssignment,
    ValidityReport,
    Verdict,
    check_separation,
    check_valid,
    truncate,
    verify_coloring,
)

CASE_LABELS = (
    "Base-A",
    "Base-B",
    "SepTriangle",
    "Case1i",
    "Case1ii",
    "Claim1-L′",
    "Claim1-root-pair",
    "Claim1-L″",
    "Claim1-L*",
    "Claim1-L**",
    "Claim1-swap",
    "Case2A",
    "Case2B",
)

_STACK_BYTES = 512 * 1024 * 1024
# below this many vertices the default stack is deep enough
_SHALLOW = 100


@dataclass(frozen=True)
class Step:
    case: str
    n: int
    verdict: str

    def to_record(self) -> dict:
        return {"case": self.case, "n": self.n, "verdict": self.verdict}


@dataclass
class SolveTrace:
    steps: list[Step] = field(default_factory=list)

    def add(self, case: str, n: int, verdict) -> None:
        self.steps.append(Step(case, n, str(verdict)))

    def histogram(self) -> Counter:
        return Counter(s.case for s in self.steps)

    def to_records(self) -> list[dict]:
        return [s.to_record() for s in self.steps]

    def __len__(self) -> int:
        return len(self.steps)


def run_deep(fn, *args, size: int | None = None):
    """Call ``fn(*args)`` on a thread with a large stack; recursion depth is O(n).

    Small inputs (``size`` below a threshold) run on the calling thread.
    """
    if size is not None and size < _SHALLOW:
        return fn(*args)
    box: dict = {}

    def target():
        try:
            box["value"] = fn(*args)
        except BaseException as exc:  # re-raised on the caller's thread
            box["error"] = exc

    if sys.getrecursionlimit() < 200_000:
        sys.setrecursionlimit(200_000)
    old = threading.stack_size(_STACK_BYTES)
    try:
        t = threading.Thread(target=target, name="solver")
        t.start()
        t.join()
    finally:
        threading.stack_size(old)
    if "error" in box:
        raise box["error"]
    return box["value"]


def _outer_dart(inst: RootedInstance, p: int, q: int) -> tuple[int, int]:
    pos = inst.boundary_pos
    return (p, q) if (pos[p] + 1) % len(inst.boundary) == pos[q] else (q, p)


def _restrict_lists(lists: ListAssignment, keep) -> dict[int, frozenset[int]]:
    return {v: cs for v, cs in lists.lists.items() if v in keep}


class _Solver:
    def __init__(self, trace: SolveTrace, full_separation_check: bool = True):
        self.trace = trace
        self.full_check = full_separation_check
        self.validity_checks = 0

    # -- entry -----------------------------------------------------------

    def solve(
        self,
        inst: RootedInstance,
        lists: ListAssignment,
        cands: list | None = None,
        report: ValidityReport | None = None,
    ) -> Coloring:
        if report is None:
            report = self.assert_valid(inst, lists)
        lists = report.assignment
        g = inst.graph
        if g.n == 3:
            label = "Base-A" if report.verdict is Verdict.VALID_A else "Base-B"
            self.trace.add(label, 3, report.verdict)
            return base_triangle(inst, lists, report)
        if cands is None:
            cands = separating_triangles(g)
        else:
            cands = self._live_triangles(g, cands)
        if cands:
            self.trace.add("SepTriangle", g.n, report.verdict)
            return self.separating_triangle(inst, lists, cands[0], cands)
        chords = find_chords(g)
        if chords:
            return self.case1(inst, lists, report, chords)
        if report.verdict is Verdict.VALID_A:
            self.trace.add("Case2A", g.n, report.verdict)
            return self.case2_a(inst, lists)
        self.trace.add("Case2B", g.n, report.verdict)
        return self.case2_b(inst, lists, report)

    def assert_valid(self, inst: RootedInstance, lists: ListAssignment) -> ValidityReport:
        self.validity_checks += 1
        report = check_valid(inst, lists, separation=self.full_check)
        if not report.valid:
            raise InternalProofViolation(
                f"sub-assignment on {inst.n} vertices is invalid: {report.violations}",
                self.trace,
                kind="validity",
            )
        return report

    @staticmethod
    def _live_triangles(g: PlaneGraph, cands: list) -> list:
        from .graph import is_facial_triangle

        adj = g.adjacency
        out = []
        for a, b, c in cands:
            if a in adj and b in adj and c in adj and not is_facial_triangle(g, a, b, c):
                out.append((a, b, c))
        return out

    # -- separating triangle --------------------------------------------

    def separating_triangle(self, inst, lists, tri, cands) -> Coloring:
        g = inst.graph
        interior, exterior = split_on_cycle(g, tri)
        ext_inst = rooted(exterior, inst.root)
        ext_lists = ListAssignment(_restrict_lists(lists, exterior.rotation), lists.root, lists.root_pairs)
        f = self.solve(ext_inst, ext_lists, cands)

        u1, u2, u3 = tri
        walk = interior.outer_walk
        i = walk.index(u1)
        dart = (u1, u2) if walk[(i + 1) % 3] == u2 else (u2, u1)
        g2 = interior.without([u3], outer=dart)
        fu3 = f[u3]
        nb3 = g.adjacency[u3]
        new = {}
        for v in g2.rotation:
            if v == u1 or v == u2:
                continue
            new[v] = lists.lists[v] - {fu3} if v in nb3 else lists.lists[v]
        l2 = ListAssignment(new, (u1, u2), frozenset({(f[u1], f[u2])}))
        g_col = self.solve(rooted(g2, (u1, u2)), l2, cands)
        out = dict(f)
        out.update(g_col)
        return out

    # -- case 1: boundary chord ------------------------------------------

    def _chord_sides(self, inst: RootedInstance, x: int, y: int) -> tuple[list[int], list[int]]:
        """Open boundary arcs ``(root side, far side)`` cut off by chord ``xy``."""
        b = inst.boundary
        k = len(b)
        pos = inst.boundary_pos
        px, py = pos[x], pos[y]
        arc1 = [b[(px + i) % k] for i in range(1, (py - px) % k)]
        arc2 = [b[(py + i) % k] for i in range(1, (px - py) % k)]
        v1, v2 = inst.root
        if v1 in arc1 or v2 in arc1:
            return arc1, arc2
        return arc2, arc1

    def _split_chord(self, inst: RootedInstance, x: int, y: int, far_arc: list[int]):
        g = inst.graph
        far = set(far_arc)
        stack = list(far_arc)
        while stack:
            v = stack.pop()
            for u in g.rotation[v]:
                if u != x and u != y and u not in far:
                    far.add(u)
                    stack.append(u)
        side2 = far | {x, y}
        side1 = {v for v in g.rotation if v not in far}
        v1, v2 = inst.root
        g1 = g.restrict(side1, outer=_outer_dart(inst, v1, v2))
        t = g.succ(y, x)
        dart = (x, y) if t not in far else (y, x)
        g2 = g.restrict(side2, outer=dart)
        return g1, g2

    def case1(self, inst, lists, report, chords) -> Coloring:
        v_star = report.v_star
        sides = {c: self._chord_sides(inst, *c) for c in chords}
        chosen = None
        for c in chords:
            if v_star is None or v_star not in sides[c][1]:
                chosen = c
                break
        if chosen is not None:
            self.trace.add("Case1i", inst.n, report.verdict)
            return self.case1_i(inst, lists, chosen, sides[chosen][1])
        self.trace.add("Case1ii", inst.n, report.verdict)
        chosen = min(chords, key=lambda c: (len(sides[c][0]), c))
        return self.case1_ii(inst, lists, chosen, sides[chosen][1])

    def case1_i(self, inst, lists, chord, far_arc) -> Coloring:
        x, y = chord
        g1, g2 = self._split_chord(inst, x, y, far_arc)
        l1 = ListAssignment(_restrict_lists(lists, g1.rotation), lists.root, lists.root_pairs)
        f = self.solve(rooted(g1, inst.root), l1, [])
        l2 = ListAssignment(
            {v: lists.lists[v] for v in g2.rotation if v != x and v != y},
            (x, y),
            frozenset({(f[x], f[y])}),
        )
        g = self.solve(rooted(g2, (x, y)), l2, [])
        out = dict(f)
        out.update(g)
        return out

    def case1_ii(self, inst, lists, chord, far_arc) -> Coloring:
        x, y = chord
        g1, g2 = self._split_chord(inst, x, y, far_arc)
        pairs = frozenset(lists.sorted_pairs()[:2])
        l1 = ListAssignment(_restrict_lists(lists, g1.rotation), lists.root, pairs)
        inst1 = rooted(g1, inst.root)
        f = self.solve(inst1, l1, [])
        f_alt = self.claim1(inst1, l1, f, x, y)
        if (f_alt[x], f_alt[y]) == (f[x], f[y]):
            raise InternalProofViolation("alternative coloring repeats the chord colors", self.trace)
        l2 = ListAssignment(
            {v: lists.lists[v] for v in g2.rotation if v != x and v != y},
            (x, y),
            frozenset({(f[x], f[y]), (f_alt[x], f_alt[y])}),
        )
        g = self.solve(rooted(g2, (x, y)), l2, [])
        base = f if (g[x], g[y]) == (f[x], f[y]) else f_alt
        out = dict(base)
        out.update(g)
        return out

    # -- the alternative coloring cascade --------------------------------

    def _attempt(self, label, inst, lists) -> Coloring | None:
        report = check_valid(inst, lists, separation=self.full_check)
        self.trace.add(label, inst.n, report.verdict)
        if not report.valid:
            return None
        return self.solve(inst, lists, [], report)

    def _reduced(
        self,
        inst: RootedInstance,
        lists: ListAssignment,
        assign: dict[int, int],
    ) -> tuple[RootedInstance, ListAssignment] | None:
        """Precolor ``assign``, delete those vertices, and prune neighbour lists.

        Returns None if the precoloring is improper or the remainder is not a
        rooted near-triangulation.
        """
        g = inst.graph
        for v, c in assign.items():
            if c not in lists.tilde(v):
                return None
            for u, d in assign.items():
                if u != v and c == d and g.has_edge(u, v):
                    return None
        v1, v2 = inst.root
        h = g.without(assign, outer=_outer_dart(inst, v1, v2))
        new = {}
        pairs = set(lists.root_pairs)
        for v in h.rotation:
            banned = {assign[u] for u in g.rotation[v] if u in assign}
            if v == v1 or v == v2:
                i = 0 if v == v1 else 1
                pairs = {p for p in pairs if p[i] not in banned}
            else:
                new[v] = lists.lists[v] - banned if banned else lists.lists[v]
        sub = rooted(h, inst.root)
        try:
            sub.check()
        except GraphError:
            return None
        return sub, ListAssignment(new, inst.root, frozenset(pairs))

    def _extend(self, label, inst, lists, assign) -> Coloring | None:
        red = self._reduced(inst, lists, assign)
        if red is None:
            self.trace.add(label, inst.n - len(assign), Verdict.INVALID)
            return None
        col = self._attempt(label, *red)
        if col is None:
            return None
        out = dict(col)
        out.update(assign)
        return out

    def claim1(self, inst: RootedInstance, lists: ListAssignment, f: Coloring, x: int, y: int) -> Coloring:
        """Another coloring of the chordless part whose colors on ``x, y`` differ from ``f``."""
        if inst.is_root(y):
            x, y = y, x
        g = inst.graph

        # drop f(y) from y
        new = dict(lists.lists)
        new[y] = lists.lists[y] - {f[y]}
        col = self._attempt("Claim1-L′", inst, ListAssignment(new, lists.root, lists.root_pairs))
        if col is not None:
            return col

        if inst.is_root(x):
            i = inst.root.index(x)
            pairs = frozenset(p for p in lists.root_pairs if p[i] != f[x])
            if pairs:
                col = self._attempt("Claim1-root-pair", inst, ListAssignment(lists.lists, lists.root, pairs))
                if col is not None:
                    return col
        else:
            new = dict(lists.lists)
            new[x] = lists.lists[x] - {f[x]}
            col = self._attempt("Claim1-L″", inst, ListAssignment(new, lists.root, lists.root_pairs))
            if col is not None:
                return col

        # a is recolored, b keeps f(b); a side whose a' shares no neighbour
        # with b besides z and a goes first, the other side is the fallback
        sides = []
        for swapped, (a, b) in enumerate(((x, y), (y, x))):
            if inst.is_root(a) or inst.is_root(b):
                continue
            a_prime = next(u for u in inst.boundary_neighbours(a) if u != b)
            z = inst.inner_third(a, b)
            clear = not (g.adjacency[a_prime] & g.adjacency[b]) - {z, a}
            sides.append((not clear, swapped, a, b))
        for _, swapped, a, b in sorted(sides):
            a_prime = next(u for u in inst.boundary_neighbours(a) if u != b)
            b_prime = next(u for u in inst.boundary_neighbours(b) if u != a)
            z = inst.inner_third(a, b)
            if swapped:
                self.trace.add("Claim1-swap", inst.n, Verdict.VALID_A)
            spare = sorted(lists.lists[b] - {f[b]})
            lz = lists.lists[z]
            options = [
                c for c in spare
                if c in lists.lists[a] and c != f[a] and len(lz & {f[b], c}) <= 1
            ]
            for c in options:
                col = self._extend("Claim1-L*", inst, lists, {a: c, b: f[b]})
                if col is not None:
                    return col
                if inst.is_root(a_prime) or a_prime == b_prime:
                    continue
                for c2 in spare:
                    if c2 == c or c2 not in lists.lists[a]:
                        continue
                    col = self._extend("Claim1-L**", inst, lists, {a_prime: c, a: c2, b: f[b]})
                    if col is not None:
                        return col
        raise InternalProofViolation(
            f"no alternative coloring found for chord ({x}, {y}) on {inst.n} vertices", self.trace
        )

    # -- case 2: chordless boundary --------------------------------------

    def case2_a(self, inst: RootedInstance, lists: ListAssignment) -> Coloring:
        g = inst.graph
        v1, v2 = inst.root
        c1, c2 = lists.sorted_pairs()[0]
        b = inst.boundary
        k = len(b)
        p2 = inst.boundary_pos[v2]
        u = b[(p2 + 1) % k] if b[(p2 + 1) % k] != v1 else b[(p2 - 1) % k]
        w = inst.inner_third(v1, v2)
        z = inst.inner_third(v2, u)
        lw = lists.lists[w]
        lu = lists.lists[u]
        if c2 not in lw and w == z and lw & lu:
            c_prime = min(lw & lu)
            avail = sorted(lw - {c1, c_prime})
        else:
            avail = sorted(lw - {c1, c2})
        if len(avail) < 2:
            raise InternalProofViolation(f"interior vertex {w} has too few spare colors", self.trace)
        c3, c4 = avail[:2]
        q = (p2 + 1) % k
        dart = (b[q], b[(q + 1) % k])
        h = g.without([v2], outer=dart)
        nb2 = g.adjacency[v2]
        new = {}
        for v in h.rotation:
            if v == v1 or v == w:
                continue
            new[v] = lists.lists[v] - {c2} if v in nb2 else lists.lists[v]
        sub = ListAssignment(new, (v1, w), frozenset({(c1, c3), (c1, c4)}))
        col = self.solve(rooted(h, (v1, w)), sub, [])
        col[v2] = c2
        return col

    def case2_b(self, inst: RootedInstance, lists: ListAssignment, report: ValidityReport) -> Coloring:
        v_star, u = report.v_star, report.good_neighbour
        c = min(lists.lists[v_star] - lists.tilde(u))
        red = self._reduced_unchecked(inst, lists, v_star, c)
        col = self.solve(*red, [])
        col[v_star] = c
        return col

    def _reduced_unchecked(self, inst, lists, v, c):
        g = inst.graph
        v1, v2 = inst.root
        h = g.without([v], outer=_outer_dart(inst, v1, v2))
        nb = g.adjacency[v]
        new = {}
        pairs = lists.root_pairs
        for x in h.rotation:
            if x == v1 or x == v2:
                if x in nb:
                    i = 0 if x == v1 else 1
                    pairs = frozenset(p for p in pairs if p[i] != c)
            else:
                new[x] = lists.lists[x] - {c} if x in nb else lists.lists[x]
        return rooted(h, inst.root), ListAssignment(new, inst.root, pairs)


def base_triangle(inst: RootedInstance, lists: ListAssignment, report: ValidityReport) -> Coloring:
    v1, v2 = inst.root
    (v3,) = [v for v in inst.graph.rotation if v != v1 and v != v2]
    l3 = lists.lists[v3]
    pairs = lists.sorted_pairs()
    if report.verdict is Verdict.VALID_A:
        c1, c2 = pairs[0]
        c3 = min(l3 - {c1, c2})
        return {v1: c1, v2: c2, v3: c3}
    (a1, a2), (b1, b2) = pairs[0], pairs[1]
    if a1 == b1:
        c3 = min(l3 - {a1})
        c1, c2 = (a1, a2) if a2 != c3 else (b1, b2)
    elif a2 == b2:
        c3 = min(l3 - {a2})
        c1, c2 = (a1, a2) if a1 != c3 else (b1, b2)
    elif report.good_neighbour == v2:
        c1, c2 = (a1, a2) if a2 not in l3 else (b1, b2)
        c3 = min(l3 - {c1})
    else:
        c1, c2 = (a1, a2) if a1 not in l3 else (b1, b2)
        c3 = min(l3 - {c2})
    if c3 in (c1, c2):
        raise InternalProofViolation("base triangle branch produced a clash")
    return {v1: c1, v2: c2, v3: c3}


def solve_rooted(
    inst: RootedInstance, lists: ListAssignment, full_separation_check: bool = True
) -> tuple[Coloring, SolveTrace]:
    trace = SolveTrace()
    solver = _Solver(trace, full_separation_check)
    col = run_deep(solver.solve, inst, lists, size=inst.n)
    return col, trace


# -- top level -------------------------------------------------------------


def _greedy(v: int, lists: ListAssignment, taken: Iterable[int]) -> int:
    return min(lists.lists[v] - set(taken))


def solve(
    graph: PlaneGraph | tuple[int, Sequence[tuple[int, int]]],
    lists: ListAssignment,
    full_separation_check: bool = True,
) -> tuple[Coloring, SolveTrace]:
    """Color a simple planar graph from a (4,2)-list assignment.

    ``graph`` is a ``PlaneGraph`` or ``(n, edges)``; edge lists are embedded
    first. Lists longer than 4 are cut to their 4 smallest colors.
    """
    g = graph if isinstance(graph, PlaneGraph) else embed(*graph)
    if isinstance(graph, PlaneGraph):
        g.validate()
    for v in g.vertices:
        cs = lists.lists.get(v, frozenset())
        if len(cs) < 4:
            raise ListTooShort(f"vertex {v} has {len(cs)} colors, need 4")
        if min(cs) < 0:
            raise ReservedColor(f"vertex {v} uses a negative color")
    bad = check_separation(g, lists, 2)
    if bad:
        raise SeparationViolated(f"edges {bad[:5]} share more than 2 colors")
    lists = truncate(ListAssignment({v: lists.lists[v] for v in g.vertices}))
    trace = SolveTrace()
    solver = _Solver(trace, full_separation_check)
    coloring = run_deep(_solve_all, solver, g, lists, size=2 * g.n)
    if verify_coloring(g, lists, coloring):
        raise InternalProofViolation("final coloring failed verification", trace)
    return coloring, trace


def _solve_all(solver: _Solver, g: PlaneGraph, lists: ListAssignment) -> Coloring:
    f: Coloring = {}
    for comp in g.components():
        if len(comp) == 1:
            f[comp[0]] = min(lists.lists[comp[0]])
            continue
        sub = g.restrict(comp)
        tree = block_decomposition(sub)
        for verts, edges, cut in zip(tree.blocks, tree.block_edges, tree.attach):
            if len(edges) == 1:
                (a, b), = edges
                for v, other in ((a, b), (b, a)):
                    if v not in f:
                        f[v] = _greedy(v, lists, [f[other]] if other in f else [])
                continue
            f.update(_solve_block(solver, g, verts, lists, cut, f))
    return f


def _solve_block(solver, g, verts, lists, cut, f) -> Coloring:
    if cut is not None:
        v1 = cut
    else:
        v1 = min(verts)
    block = g.restrict(verts)
    v2 = min(block.adjacency[v1])
    block = block.with_outer((v1, v2))
    plain = ListAssignment({v: lists.lists[v] for v in verts})
    stell, ext, apexes = add_face_apexes(block, plain)
    inst = rooted(stell, (v1, v2))
    l1, l2 = ext.lists[v1], ext.lists[v2]
    if cut is not None:
        c = f[v1]
        pairs = frozenset((c, d) for d in l2 if d != c)
    else:
        pairs = frozenset(sorted((c, d) for c in l1 for d in l2 if c != d)[:2])
    rest = {v: cs for v, cs in ext.lists.items() if v != v1 and v != v2}
    col = solver.solve(inst, ListAssignment(rest, (v1, v2), pairs))
    return {v: c for v, c in col.items() if v not in apexes}
