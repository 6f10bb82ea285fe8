import os

from hypothesis import HealthCheck, settings

from planar_choosability.gen import from_faces, gen_wheel
from planar_choosability.graph import rooted
from planar_choosability.lists import ListAssignment

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=25, deadline=None, derandomize=True)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def fs(*colors):
    return frozenset(colors)


def triangle():
    return from_faces(3, [(0, 1, 2), (0, 2, 1)], (0, 2))


def rooted_triangle(pairs, l3):
    inst = rooted(triangle(), (0, 1), check=True)
    return inst, ListAssignment({2: frozenset(l3)}, (0, 1), frozenset(pairs))


def wheel(k=5):
    """Hub ``k`` inside the cycle 0..k-1."""
    return gen_wheel(k)


def case1ii_fixture():
    """Boundary 0,1,2,3,4 with chord 0-2 and interior hub 5 on the far side.

    The deficient vertex 3 lies behind the only chord, and the triangle
    side forces the first alternative list to fail."""
    g = from_faces(6, [(0, 1, 2), (0, 2, 5), (2, 3, 5), (3, 4, 5), (4, 0, 5), (0, 4, 3, 2, 1)], (1, 0))
    lists = ListAssignment(
        {2: fs(1, 2, 5), 3: fs(6, 7), 4: fs(3, 4, 6, 8), 5: fs(3, 4, 5, 7)},
        (0, 1),
        fs((1, 2), (2, 1)),
    )
    return rooted(g, (0, 1), check=True), lists


def pytest_terminal_summary(terminalreporter):
    lines = []
    for key in ("passed", "failed"):
        for rep in terminalreporter.stats.get(key, []):
            if rep.when == "call":
                lines += [value for name, value in rep.user_properties if name == "verdict"]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
