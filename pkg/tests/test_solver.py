import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from planar_choosability.errors import (
    InternalProofViolation,
    ListTooShort,
    NonPlanar,
    ReservedColor,
    SeparationViolated,
)
from planar_choosability.gen import (
    GenSpec,
    from_faces,
    gen_list_assignment,
    gen_stacked_triangulation,
    generate,
    stacked_from_choices,
)
from planar_choosability.graph import embed, rooted
from planar_choosability.lists import ListAssignment, Verdict, check_valid, verify_coloring
from planar_choosability.oracle import enumerate_all
from planar_choosability.solver import CASE_LABELS, base_triangle, solve, solve_rooted

from conftest import case1ii_fixture, fs, rooted_triangle, wheel

K4_EDGES = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
K4_LISTS = ListAssignment({0: fs(1, 2, 3, 4), 1: fs(3, 4, 5, 6), 2: fs(5, 6, 7, 8), 3: fs(7, 8, 1, 2)})


def cases(trace):
    return [s.case for s in trace.steps]


def plain(lists: dict) -> ListAssignment:
    return ListAssignment({v: frozenset(cs) for v, cs in lists.items()})


def rooted_lists(lists: dict, pairs) -> ListAssignment:
    return ListAssignment({v: frozenset(cs) for v, cs in lists.items()}, (0, 1), frozenset(pairs))


# -- base triangle ---------------------------------------------------------


@pytest.mark.parametrize(
    "pairs, l3, expected, label",
    [
        ({(1, 2)}, {2, 3, 4}, (1, 2, 3), "Base-A"),
        ({(1, 2), (1, 3)}, {1, 4}, (1, 2, 4), "Base-B"),
        ({(1, 2), (3, 4)}, {2, 5}, (3, 4, 2), "Base-B"),
    ],
)
def test_base_triangle_examples(pairs, l3, expected, label):
    inst, L = rooted_triangle(pairs, l3)
    f, trace = solve_rooted(inst, L)
    assert (f[0], f[1], f[2]) == expected
    assert cases(trace) == [label]
    assert verify_coloring(inst.graph, L, f) == []


def test_base_triangle_direct():
    inst, L = rooted_triangle({(1, 2), (3, 4)}, {2, 5})
    report = check_valid(inst, L)
    assert report.good_neighbour == 1
    assert base_triangle(inst, L, report) == {0: 3, 1: 4, 2: 2}


# -- whole pipeline ----------------------------------------------------------


def test_k4_from_edges():
    f, trace = solve((4, K4_EDGES), K4_LISTS)
    assert f == {0: 1, 1: 3, 2: 5, 3: 2}
    assert cases(trace) == ["Case2A", "Base-A"]
    assert f in enumerate_all((4, K4_EDGES), K4_LISTS)


def test_stacked_with_separating_triangle():
    g = stacked_from_choices([0, 0])
    L = plain({0: {1, 2, 3, 4}, 1: {3, 4, 5, 6}, 2: {5, 6, 7, 8}, 3: {7, 8, 1, 2}, 4: {1, 3, 5, 7}})
    f, trace = solve(g, L)
    assert f == {0: 1, 1: 3, 2: 5, 3: 2, 4: 5}
    assert cases(trace) == ["SepTriangle", "Case2A", "Base-A", "Base-A"]


def test_stacked_50_frozen():
    g, L = generate(GenSpec("stacked", n=50, seed=7))
    f, trace = solve(g, L)
    assert verify_coloring(g, L, f) == []
    assert len(trace) == 93
    assert dict(trace.histogram()) == {"SepTriangle": 14, "Case2A": 2, "Base-A": 46, "Case1i": 31}


def test_lists_longer_than_four_are_accepted():
    L = ListAssignment({v: cs | {20 + v} for v, cs in K4_LISTS.lists.items()})
    f, _ = solve((4, K4_EDGES), L)
    assert verify_coloring(embed(4, K4_EDGES), L, f) == []


def test_disconnected_and_sparse_inputs():
    # two components: a path with a pendant vertex, and an isolated vertex
    edges = [(0, 1), (1, 2), (1, 3)]
    L = plain({0: {1, 2, 3, 4}, 1: {1, 2, 5, 6}, 2: {1, 5, 7, 8}, 3: {2, 6, 7, 8}, 4: {1, 2, 3, 4}})
    f, _ = solve((5, edges), L)
    assert verify_coloring(embed(5, edges), L, f) == []


def test_cut_vertex_between_triangles():
    # bowtie: triangles 0,1,2 and 2,3,4 share vertex 2
    edges = [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]
    L = plain({0: {1, 2, 3, 4}, 1: {1, 2, 5, 6}, 2: {1, 3, 5, 7}, 3: {1, 3, 6, 8}, 4: {2, 5, 6, 8}})
    f, _ = solve((5, edges), L)
    assert verify_coloring(embed(5, edges), L, f) == []
    assert f in enumerate_all((5, edges), L)


def test_quadrilateral_face_uses_apex_not_in_answer():
    edges = [(0, 1), (1, 2), (2, 3), (3, 0)]
    L = plain({0: {1, 2, 3, 4}, 1: {1, 2, 5, 6}, 2: {1, 2, 7, 8}, 3: {1, 2, 5, 6}})
    f, _ = solve((4, edges), L)
    assert sorted(f) == [0, 1, 2, 3]
    assert all(c > 0 for c in f.values())
    assert verify_coloring(embed(4, edges), L, f) == []


# -- preconditions -----------------------------------------------------------


def test_rejects_non_planar():
    n = 5
    edges = list(itertools.combinations(range(n), 2))
    L = plain({v: {1 + 4 * v, 2 + 4 * v, 3 + 4 * v, 4 + 4 * v} for v in range(n)})
    with pytest.raises(NonPlanar):
        solve((n, edges), L)


def test_rejects_short_list():
    L = ListAssignment({**K4_LISTS.lists, 3: fs(7, 8, 1)})
    with pytest.raises(ListTooShort):
        solve((4, K4_EDGES), L)


def test_rejects_negative_color():
    L = ListAssignment({**K4_LISTS.lists, 3: fs(7, 8, 1, -2)})
    with pytest.raises(ReservedColor):
        solve((4, K4_EDGES), L)


def test_rejects_three_shared_colors():
    L = ListAssignment({**K4_LISTS.lists, 1: fs(1, 2, 3, 9)})
    with pytest.raises(SeparationViolated):
        solve((4, K4_EDGES), L)


def test_rooted_rejects_invalid_assignment():
    inst, L = rooted_triangle({(1, 2)}, {2, 3})
    with pytest.raises(InternalProofViolation) as e:
        solve_rooted(inst, L)
    assert e.value.kind == "validity"


# -- chordless cases on the 5-wheel ----------------------------------------


@pytest.mark.parametrize(
    "lists, pairs, expected",
    [
        (  # plain choice of the two colors for the hub
            {2: {3, 7, 8}, 3: {4, 5, 6}, 4: {6, 7, 8}, 5: {2, 3, 4, 5}},
            {(1, 2)},
            {0: 1, 1: 2, 2: 7, 3: 4, 4: 6, 5: 3},
        ),
        (  # hub and next boundary vertex share a color, which is held back
            {2: {3, 7, 8}, 3: {6, 7, 9}, 4: {6, 7, 8}, 5: {3, 4, 5, 6}},
            {(1, 2)},
            {0: 1, 1: 2, 2: 3, 3: 7, 4: 6, 5: 4},
        ),
    ],
)
def test_case2a_wheel(lists, pairs, expected):
    g = wheel(5)
    inst = rooted(g, (0, 1), check=True)
    L = rooted_lists(lists, pairs)
    f, trace = solve_rooted(inst, L)
    assert f == expected
    assert cases(trace)[0] == "Case2A"
    assert verify_coloring(g, L, f) == []


def test_case2a_with_distinct_third_vertices():
    g = from_faces(7, [(0, 1, 5), (1, 6, 5), (1, 2, 6), (2, 3, 6), (3, 5, 6), (3, 4, 5), (4, 0, 5),
                       (4, 3, 2, 1, 0)], (4, 3))
    L = rooted_lists({2: {3, 7, 8}, 3: {4, 5, 6}, 4: {6, 7, 8}, 5: {2, 3, 4, 5}, 6: {2, 5, 6, 7}}, {(1, 2)})
    f, trace = solve_rooted(rooted(g, (0, 1), check=True), L)
    assert f == {0: 1, 1: 2, 2: 3, 3: 4, 4: 6, 5: 3, 6: 5}
    assert cases(trace)[0] == "Case2A"


@pytest.mark.parametrize(
    "lists, pairs, expected",
    [
        (
            {2: {1, 5, 6}, 3: {1, 2}, 4: {6, 7, 8}, 5: {2, 3, 4, 5}},
            {(7, 8), (8, 9)},
            {0: 7, 1: 8, 2: 1, 3: 2, 4: 6, 5: 3},
        ),
        (  # the deficient vertex sits next to a root, whose pairs get restricted
            {2: {5, 6, 7}, 3: {3, 5, 6}, 4: {1, 3}, 5: {2, 4, 5, 8}},
            {(1, 2), (3, 2)},
            {0: 3, 1: 2, 2: 5, 3: 3, 4: 1, 5: 4},
        ),
    ],
)
def test_case2b_wheel(lists, pairs, expected):
    g = wheel(5)
    inst = rooted(g, (0, 1), check=True)
    L = rooted_lists(lists, pairs)
    assert check_valid(inst, L).verdict is Verdict.VALID_B
    f, trace = solve_rooted(inst, L)
    assert f == expected
    assert cases(trace)[0] == "Case2B"


# -- chords and the alternative coloring -------------------------------------


def test_case1i_then_case2a():
    inst, L = case1ii_fixture()
    L = ListAssignment({**L.lists, 3: fs(6, 7, 9)}, (0, 1), fs((1, 2)))
    f, trace = solve_rooted(inst, L)
    assert cases(trace) == ["Case1i", "Base-A", "Case2A", "Case1i", "Base-A", "Base-A"]
    assert verify_coloring(inst.graph, L, f) == []


def test_case1ii_fixture():
    inst, L = case1ii_fixture()
    f, trace = solve_rooted(inst, L)
    assert f == {0: 1, 1: 2, 2: 5, 3: 6, 4: 4, 5: 3}
    assert cases(trace) == [
        "Case1ii", "Base-A", "Claim1-L′", "Claim1-root-pair", "Base-A",
        "Case2B", "Case1i", "Base-A", "Base-A",
    ]


def _four_wheels():
    # two 4-wheels glued along chord 2-5; the root edge 0-1 lies on the first
    return from_faces(8, [(0, 1, 6), (1, 2, 6), (2, 5, 6), (5, 0, 6), (2, 3, 7), (3, 4, 7), (4, 5, 7),
                          (5, 2, 7), (5, 4, 3, 2, 1, 0)], (1, 0))


def _wheel_and_four_wheel():
    # 5-wheel on 0,1,2,3,6 and 4-wheel on 3,4,5,6, glued along chord 3-6
    return from_faces(9, [(0, 1, 7), (1, 2, 7), (2, 3, 7), (3, 6, 7), (6, 0, 7), (3, 4, 8), (4, 5, 8),
                          (5, 6, 8), (6, 3, 8), (6, 5, 4, 3, 2, 1, 0)], (1, 0))


CLAIM1_FIXTURES = {
    "root-pair": (
        _four_wheels,
        {2: {2, 3, 8}, 3: {1, 3}, 4: {3, 5, 6, 7}, 5: {2, 4, 5}, 6: {2, 4, 6, 7}, 7: {1, 2, 4, 6}},
        {(6, 7), (7, 6)},
        {0: 7, 1: 6, 2: 3, 3: 1, 4: 3, 5: 2, 6: 4, 7: 4},
        "Claim1-root-pair",
    ),
    "second-list": (
        _wheel_and_four_wheel,
        {2: {1, 2, 4}, 3: {3, 6, 8}, 4: {4, 8}, 5: {1, 2, 8}, 6: {3, 4, 6}, 7: {2, 4, 5, 7},
         8: {3, 5, 7, 8}},
        {(3, 4), (6, 2)},
        {0: 3, 1: 4, 2: 1, 3: 3, 4: 4, 5: 1, 6: 4, 7: 2, 8: 5},
        "Claim1-L″",
    ),
    "recolor-both": (
        _wheel_and_four_wheel,
        {2: {3, 6, 8}, 3: {3, 5, 6}, 4: {3, 7}, 5: {1, 3, 4}, 6: {2, 3, 6}, 7: {1, 2, 6, 8},
         8: {1, 2, 3, 5}},
        {(3, 8), (6, 8)},
        {0: 3, 1: 8, 2: 6, 3: 3, 4: 7, 5: 3, 6: 2, 7: 1, 8: 1},
        "Claim1-L*",
    ),
    # both neighbours of the chord ends are roots; once rejected every side
    "roots-on-both-sides": (
        _four_wheels,
        {2: {2, 6, 7}, 3: {4, 8}, 4: {4, 5, 8}, 5: {3, 6, 7}, 6: {5, 6, 7, 8}, 7: {1, 3, 5, 6}},
        {(6, 7), (7, 6)},
        {0: 6, 1: 7, 2: 2, 3: 4, 4: 5, 5: 3, 6: 5, 7: 1},
        "Claim1-L*",
    ),
}


@pytest.mark.parametrize("name", sorted(CLAIM1_FIXTURES))
def test_claim1_fixtures(name):
    make, lists, pairs, expected, label = CLAIM1_FIXTURES[name]
    g = make()
    L = rooted_lists(lists, pairs)
    inst = rooted(g, (0, 1), check=True)
    assert check_valid(inst, L).valid
    f, trace = solve_rooted(inst, L)
    assert f == expected
    assert label in trace.histogram()
    assert verify_coloring(g, L, f) == []
    assert f in enumerate_all(g, L)


def test_claim1_on_triangle_gives_new_chord_colors():
    from planar_choosability.solver import SolveTrace, _Solver

    inst, L = rooted_triangle({(1, 2), (3, 4)}, {1, 3, 5})
    f = {0: 1, 1: 2, 2: 5}
    solver = _Solver(SolveTrace())
    alt = solver.claim1(inst, L, f, 0, 2)
    assert alt == {0: 1, 1: 2, 2: 3}
    assert [(s.case, s.verdict) for s in solver.trace.steps] == [("Claim1-L′", "Valid-B"), ("Base-B", "Valid-B")]
    assert (alt[0], alt[2]) != (f[0], f[2])
    assert alt in enumerate_all(inst.graph, L)


# -- properties --------------------------------------------------------------


def test_trace_labels_are_known():
    g, L = generate(GenSpec("polygon", k=8, m=40, seed=3, flips=120))
    _, trace = solve(g, L)
    assert set(trace.histogram()) <= set(CASE_LABELS)


def test_deterministic():
    g, L = generate(GenSpec("polygon", k=6, m=60, seed=11, flips=180))
    f1, t1 = solve(g, L)
    f2, t2 = solve(g, L)
    assert f1 == f2
    assert t1.to_records() == t2.to_records()


@given(st.integers(4, 40), st.integers(0, 2**32), st.floats(0.3, 1.0))
def test_random_planar_subgraphs(n, seed, keep):
    """Drop edges from a stacked triangulation; the result stays planar but
    can have cut vertices, several components and long faces."""
    g = gen_stacked_triangulation(n, seed)
    rng = random.Random(seed)
    edges = [e for e in g.edges if rng.random() < keep]
    _, L = generate(GenSpec("stacked", n=n, seed=seed))
    f, _ = solve((n, edges), L)
    h = embed(n, edges)
    assert verify_coloring(h, L, f) == []
    assert min(f.values()) > 0


@given(st.integers(0, 2**32))
def test_solver_agrees_with_oracle_on_small_stacks(seed):
    g, L = generate(GenSpec("stacked", n=6, seed=seed))
    f, _ = solve(g, L)
    assert f in enumerate_all(g, L)


def test_random_trees():
    for seed in range(5):
        h = embed(30, list(nx.random_labeled_tree(30, seed=seed).edges()))
        L = gen_list_assignment(h, GenSpec("stacked", n=30, seed=seed, palette_size=5))
        f, _ = solve(h, L)
        assert verify_coloring(h, L, f) == []
