"""Shared fixtures, hypothesis strategies and brute-force oracles.

The oracles here never call into the matching engine, so they can check it.
"""

from __future__ import annotations

import random
from functools import lru_cache

import pytest
from hypothesis import strategies as st

from bipramsey.assets import FIGURE1_BASE, STAR_K4_5X5, STAR_K5_6X6, load_asset
from bipramsey.colouring import Colouring
from bipramsey.constructions import latin_base


def brute_matching_number(edges: set[tuple[int, int]], n_left: int) -> int:
    """Largest matching by DP over (next X vertex, used Y set)."""
    nbrs = [sorted(j for (i, j) in edges if i == x) for x in range(n_left)]

    @lru_cache(maxsize=None)
    def best(x: int, used: int) -> int:
        if x == n_left:
            return 0
        out = best(x + 1, used)
        for j in nbrs[x]:
            if not used >> j & 1:
                out = max(out, 1 + best(x + 1, used | 1 << j))
        return out

    return best(0, 0)


def brute_cover_number(edges: set[tuple[int, int]], n_left: int, wx=None, wy=None) -> int:
    """Minimum (weighted) vertex cover: try every X subset, the Y part is forced."""
    wx = wx or [1] * n_left
    best = None
    for bits in range(1 << n_left):
        ys = {j for (i, j) in edges if not bits >> i & 1}
        cost = sum(wx[i] for i in range(n_left) if bits >> i & 1)
        cost += sum((wy[j] if wy else 1) for j in ys)
        if best is None or cost < best:
            best = cost
    return best


def brute_components(col: Colouring, colour: int) -> list[tuple[frozenset, frozenset]]:
    """Union-find components of one colour class, as (X set, Y set)."""
    parent = {}

    def find(a):
        parent.setdefault(a, a)
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(col.n_left):
        for j in range(col.n_right):
            if col[i, j] == colour:
                parent[find(("x", i))] = find(("y", j))
    groups: dict = {}
    for v in list(parent):
        groups.setdefault(find(v), set()).add(v)
    return [
        (frozenset(i for s, i in g if s == "x"), frozenset(j for s, j in g if s == "y"))
        for g in groups.values()
    ]


def random_colouring(rng: random.Random, n_left: int, n_right: int, k: int, p_absent=0.0) -> Colouring:
    rows = [
        [0 if rng.random() < p_absent else rng.randint(1, k) for _ in range(n_right)]
        for _ in range(n_left)
    ]
    return Colouring(n_left, n_right, k, tuple(map(tuple, rows)))


@st.composite
def colourings(draw, max_side=5, max_k=4, complete=False):
    n_left = draw(st.integers(1, max_side))
    n_right = draw(st.integers(1, max_side))
    k = draw(st.integers(1, max_k))
    low = 1 if complete else 0
    rows = draw(
        st.lists(
            st.lists(st.integers(low, k), min_size=n_right, max_size=n_right),
            min_size=n_left, max_size=n_left,
        )
    )
    return Colouring(n_left, n_right, k, tuple(map(tuple, rows)))


@pytest.fixture(scope="session")
def latin3() -> Colouring:
    return latin_base(3)


@pytest.fixture(scope="session")
def figure1_base() -> Colouring:
    return load_asset(FIGURE1_BASE)


@pytest.fixture(scope="session")
def star_k4() -> Colouring:
    return load_asset(STAR_K4_5X5)


@pytest.fixture(scope="session")
def star_k5() -> Colouring:
    return load_asset(STAR_K5_6X6)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record one pass/fail line per acceptance criterion for the terminal summary."""

    def record(number: int, passed: bool, detail: str) -> None:
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'} {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
