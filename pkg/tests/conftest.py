import itertools

from hypothesis import settings
from hypothesis import strategies as st

from fanok3.linalg import det

settings.register_profile("default", deadline=None)
settings.load_profile("default")

L26 = ((2, 4), (4, 2))
L28 = ((4, 0), (0, -2))
L31 = ((0, 2, 2), (2, 0, 2), (2, 2, 0))


@st.composite
def even_grams(draw, max_rank=3, max_entry=6, nonsingular=True):
    n = draw(st.integers(1, max_rank))
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = 2 * draw(st.integers(-max_entry // 2, max_entry // 2))
        for j in range(i + 1, n):
            g[i][j] = g[j][i] = draw(st.integers(-max_entry, max_entry))
    if nonsingular:
        from hypothesis import assume

        assume(det(g) != 0)
    return g


@st.composite
def unimodular(draw, n, steps=6):
    """Product of random elementary matrices and sign flips."""
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(draw(st.integers(0, steps))):
        if n == 1:
            break
        i, j = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
        if i == j:
            continue
        k = draw(st.integers(-2, 2))
        for r in range(n):
            m[r][j] += k * m[r][i]
    for j in range(n):
        if draw(st.booleans()):
            for r in range(n):
                m[r][j] = -m[r][j]
    return m


def brute_elements(divisors):
    return list(itertools.product(*(range(d) for d in divisors)))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
