"""Exact decision of ``K_{N,M} -> CM(n+1)`` for tiny instances.

Depth-first search assigns colours cell by cell in row-major order and keeps
only colourings that are lexicographically minimal (row-major reading) under
row, column and colour permutations.  Pruning rules, all sound for that
canonical form:

* colours are introduced in first-occurrence order;
* adjacent columns, restricted to the rows filled so far, stay sorted;
* after each completed row, the filled prefix must be minimal among the
  images obtained by permuting those rows, the columns and the colours
  (such images fix every later row, so a smaller prefix stays smaller for
  every completion);
* a cell is abandoned as soon as the component of its new edge has a
  matching with more than ``n`` edges, since adding edges never shrinks it.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator

from .colouring import Colouring
from .matching import bfs_component, matching_number, mono_cm_free

MAX_RAW_BITS = 40
DEFAULT_NODE_BUDGET = 50_000_000


class BudgetExceeded(RuntimeError):
    def __init__(self, message: str, N: int | None = None) -> None:
        super().__init__(message)
        self.N = N


def raw_bits(N: int, M: int, k: int) -> float:
    return N * M * math.log2(k) if k > 1 else 0.0


def check_budget(N: int, M: int, k: int) -> None:
    bits = raw_bits(N, M, k)
    if bits > MAX_RAW_BITS:
        raise BudgetExceeded(
            f"K_{{{N},{M}}} with {k} colours has {bits:.1f} raw bits > {MAX_RAW_BITS}", N
        )


def is_prefix_minimal(rows: list[tuple[int, ...]], k: int) -> bool:
    """Is ``rows`` minimal among its images under row x column x colour permutations?"""
    r = len(rows)
    target = tuple(rows)
    for perm in itertools.permutations(range(r)):
        ordered = [rows[p] for p in perm]
        for relabel in itertools.permutations(range(1, k + 1)):
            table = (0,) + relabel
            cols = sorted(zip(*(tuple(table[c] for c in row) for row in ordered)))
            image = tuple(zip(*cols))
            if image < target:
                return False
    return True


def canonical_form(col: Colouring) -> tuple[tuple[int, ...], ...]:
    """Minimal row-major image over the whole symmetry group (brute force)."""
    best = None
    for perm in itertools.permutations(range(col.n_left)):
        ordered = [col.edges[p] for p in perm]
        for relabel in itertools.permutations(range(1, col.k + 1)):
            table = (0,) + relabel
            cols = sorted(zip(*(tuple(table[c] for c in row) for row in ordered)))
            image = tuple(zip(*cols))
            if best is None or image < best:
                best = image
    return best


@dataclass
class SearchStats:
    nodes: int = 0
    leaves: int = 0


@dataclass
class Decision:
    N: int
    M: int
    k: int
    n: int
    arrowing: bool
    witness: Colouring | None
    stats: SearchStats = field(default_factory=SearchStats)


def _canonical_free(
    N: int, M: int, k: int, n: int, node_budget: int, stats: SearchStats, symmetry: bool = True
) -> Iterator[Colouring]:
    grid = [[0] * M for _ in range(N)]
    ax = [[0] * N for _ in range(k + 1)]
    ay = [[0] * M for _ in range(k + 1)]
    # tied[j]: columns j-1 and j agree on every completed row
    tied = [True] * M

    def excess(c: int, i: int) -> bool:
        xm, ym = bfs_component(ax[c], ay[c], 1 << i, 0)
        if xm.bit_count() <= n or ym.bit_count() <= n:
            return False
        return matching_number(ax[c], xm) > n

    def rec(cell: int, used: int) -> Iterator[Colouring]:
        stats.nodes += 1
        if stats.nodes > node_budget:
            raise BudgetExceeded(f"node budget {node_budget} exhausted on K_{{{N},{M}}}", N)
        i, j = divmod(cell, M)
        if cell == N * M:
            stats.leaves += 1
            yield Colouring(N, M, k, tuple(map(tuple, grid)))
            return
        top = min(k, used + 1) if symmetry else k
        low = 1
        if symmetry and j > 0 and tied[j]:
            low = grid[i][j - 1]
        for c in range(low, top + 1):
            grid[i][j] = c
            ax[c][i] |= 1 << j
            ay[c][j] |= 1 << i
            if not excess(c, i):
                if j == M - 1:
                    yield from _after_row(i, cell, max(used, c))
                else:
                    yield from rec(cell + 1, max(used, c))
            ax[c][i] &= ~(1 << j)
            ay[c][j] &= ~(1 << i)
        grid[i][j] = 0

    def _after_row(i: int, cell: int, used: int) -> Iterator[Colouring]:
        if symmetry:
            rows = [tuple(r) for r in grid[: i + 1]]
            if i > 0 and rows[i] < rows[i - 1]:
                return
            if not is_prefix_minimal(rows, k):
                return
            saved = tied[:]
            for jj in range(1, M):
                tied[jj] = tied[jj] and grid[i][jj] == grid[i][jj - 1]
            yield from rec(cell + 1, used)
            tied[:] = saved
        else:
            yield from rec(cell + 1, used)

    yield from rec(0, 0)


def enumerate_canonical(
    N: int, M: int, k: int, n: int, node_budget: int = DEFAULT_NODE_BUDGET,
    symmetry: bool = True,
) -> list[Colouring]:
    """All complete colourings without a monochromatic connected (n+1)-matching.

    With ``symmetry`` on, exactly one representative per isomorphism class.
    """
    check_budget(N, M, k)
    return list(_canonical_free(N, M, k, n, node_budget, SearchStats(), symmetry))


def exhaustive_decide(
    N: int, M: int, k: int, n: int, node_budget: int = DEFAULT_NODE_BUDGET
) -> Decision:
    """Decide whether every k-colouring of ``K_{N,M}`` has a monochromatic CM(n+1).

    Raises :class:`BudgetExceeded` instead of returning a truncated answer.
    """
    if min(N, M, k, n) < 1:
        raise ValueError("N, M, k and n must be positive")
    check_budget(N, M, k)
    stats = SearchStats()
    for witness in _canonical_free(N, M, k, n, node_budget, stats):
        if not witness.is_complete or not mono_cm_free(witness, n + 1):
            raise RuntimeError("search produced an unsound witness")
        return Decision(N, M, k, n, False, witness, stats)
    return Decision(N, M, k, n, True, None, stats)


@dataclass
class RamseyValue:
    k: int
    n: int
    value: int | None
    witness: Colouring | None
    decisions: list[Decision]
    unresolved_at: int | None = None

    @property
    def resolved(self) -> bool:
        return self.value is not None


def compute_r(k: int, n: int, N_max: int, node_budget: int = DEFAULT_NODE_BUDGET) -> RamseyValue:
    """Smallest ``N <= N_max`` with ``K_{N,N} -> CM(n+1)`` in ``k`` colours.

    Carries the witness for ``N - 1``.  A budget failure at some ``N`` is
    re-raised as :class:`BudgetExceeded` with ``N`` attached.
    """
    decisions = []
    witness = None
    for N in range(1, N_max + 1):
        d = exhaustive_decide(N, N, k, n, node_budget)
        decisions.append(d)
        if d.arrowing:
            return RamseyValue(k, n, N, witness, decisions)
        witness = d.witness
    return RamseyValue(k, n, None, witness, decisions)
