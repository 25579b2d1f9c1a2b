"""Simulated annealing over edge colourings.

The objective is the total excess ``sum(max(0, nu(C) - n))`` over all
monochromatic components ``C``; it is zero exactly when the colouring has no
monochromatic connected ``(n+1)``-matching.  A move recolours one present
edge, so only the component of that edge in its old colour and the (at most
two) components of its endpoints in the new colour need re-matching.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .colouring import ABSENT, Colouring
from .constructions import (
    FIGURE1_ABSENT,
    FIGURE1_COLOURS,
    FIGURE1_SIZE,
    merge_cover_violations,
)
from .matching import (
    bfs_component,
    colour_adjacency,
    component_masks,
    iter_bits,
    matching_number,
)

MODES = ("cm-free", "star-forest", "figure1")


@dataclass(frozen=True)
class SearchConfig:
    mode: str
    N: int
    M: int
    k: int
    n: int = 1
    seed: int = 0
    max_steps: int = 10**7
    restarts: int = 32
    initial_temperature: Fraction = Fraction(2)
    cooling_factor: Fraction = Fraction(995, 1000)
    steps_per_temperature: int = 100

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}, expected one of {MODES}")
        if self.mode == "figure1" and (self.N, self.M, self.k, self.n) != (
            FIGURE1_SIZE, FIGURE1_SIZE, FIGURE1_COLOURS, 1,
        ):
            raise ValueError("figure1 mode requires N = M = 7, k = 5, n = 1")
        if self.mode == "star-forest" and self.n != 1:
            raise ValueError("star-forest mode requires n = 1")
        if min(self.N, self.M, self.k, self.n) < 1:
            raise ValueError("N, M, k and n must be positive")
        if self.max_steps < 1 or self.restarts < 1 or self.steps_per_temperature < 1:
            raise ValueError("max_steps, restarts and steps_per_temperature must be positive")
        if self.initial_temperature <= 0:
            raise ValueError("initial_temperature must be positive")
        if not 0 < self.cooling_factor < 1:
            raise ValueError("cooling_factor must lie in (0, 1)")

    @classmethod
    def for_mode(cls, mode: str, **kw) -> "SearchConfig":
        if mode == "figure1":
            kw = {"N": FIGURE1_SIZE, "M": FIGURE1_SIZE, "k": FIGURE1_COLOURS, "n": 1, **kw}
        elif mode == "star-forest":
            kw = {"n": 1, **kw}
        return cls(mode=mode, **kw)


@dataclass(frozen=True)
class SearchOutcome:
    best: Colouring
    objective: int
    steps_used: int
    success: bool
    seed_echo: int
    restarts_used: int
    best_restart: int

    def metadata(self, cfg: SearchConfig) -> list[str]:
        return [
            f"mode: {cfg.mode}",
            f"seed: {self.seed_echo}",
            f"restart: {self.best_restart}",
            f"steps: {self.steps_used}",
            f"objective: {self.objective}",
        ]


def objective(col: Colouring, n: int) -> int:
    """Total excess of component matching numbers over ``n``."""
    total = 0
    for c in range(1, col.k + 1):
        adj_x, adj_y = colour_adjacency(col, c)
        for xm, _ in component_masks(adj_x, adj_y):
            total += max(0, matching_number(adj_x, xm) - n)
    return total


def figure1_objective(col: Colouring) -> int:
    """Star-forest excess plus the fewest edges ``{u_0, v_0}`` fails to cover over merge colours."""
    return objective(col, 1) + min(merge_cover_violations(col, c) for c in range(1, col.k + 1))


def mode_objective(col: Colouring, cfg: SearchConfig) -> int:
    if cfg.mode == "figure1":
        return figure1_objective(col)
    return objective(col, cfg.n)


class _Annealer:
    """Mutable per-restart state: colour grid plus per-colour bitset adjacency.

    The annealing energy is the objective itself when ``n >= 2``.  For
    ``n = 1`` it is the number of edges whose endpoints both have degree at
    least two in the edge's colour; that count vanishes exactly on star
    forests, like the objective, but separates near-solutions far better.
    """

    def __init__(self, cfg: SearchConfig, rng: random.Random) -> None:
        self.cfg = cfg
        self.n = cfg.n
        self.k = cfg.k
        self.figure1 = cfg.mode == "figure1"
        self.stars = cfg.n == 1
        absent = {FIGURE1_ABSENT} if self.figure1 else set()
        self.cells = [
            (i, j) for i in range(cfg.N) for j in range(cfg.M) if (i, j) not in absent
        ]
        self.grid = [[ABSENT] * cfg.M for _ in range(cfg.N)]
        self.ax = [[0] * cfg.N for _ in range(cfg.k + 1)]
        self.ay = [[0] * cfg.M for _ in range(cfg.k + 1)]
        for i, j in self.cells:
            c = rng.randrange(1, cfg.k + 1)
            self.grid[i][j] = c
            self.ax[c][i] |= 1 << j
            self.ay[c][j] |= 1 << i
        if self.stars:
            self.base = sum(self._bad_at(c, i) for c in range(1, self.k + 1) for i in range(cfg.N))
        else:
            self.base = objective(self.snapshot(), self.n)
        if self.figure1:
            self.merge = [0] + [self._merge_violations(c) for c in range(1, self.k + 1)]

    def snapshot(self) -> Colouring:
        return Colouring(self.cfg.N, self.cfg.M, self.k, tuple(map(tuple, self.grid)))

    def energy(self) -> int:
        if self.figure1:
            return self.base + min(self.merge[1:])
        return self.base

    def _penalty(self, c: int, xm: int, ym: int) -> int:
        n = self.n
        if xm.bit_count() <= n or ym.bit_count() <= n:
            return 0
        return max(0, matching_number(self.ax[c], xm) - n)

    def _bad_at(self, c: int, i: int) -> int:
        """Edges at ``x_i`` of colour ``c`` with both endpoints of ``c``-degree >= 2."""
        nbrs = self.ax[c][i]
        if nbrs & (nbrs - 1) == 0:
            return 0
        ay = self.ay[c]
        return sum(1 for j in iter_bits(nbrs) if ay[j] & (ay[j] - 1))

    def _bad_near(self, c: int, i: int, j: int) -> int:
        """Bad ``c``-edges incident to ``x_i`` or ``y_j``."""
        total = self._bad_at(c, i)
        nbrs = self.ay[c][j]
        if nbrs & (nbrs - 1) == 0:
            return total
        ax = self.ax[c]
        # x_i y_j itself is already counted from the x_i side
        for u in iter_bits(nbrs & ~(1 << i)):
            if ax[u] & (ax[u] - 1):
                total += 1
        return total

    def _merge_violations(self, c: int) -> int:
        u0, v0 = FIGURE1_ABSENT
        ax = self.ax[c]
        xm, ym = bfs_component(ax, self.ay[c], 1 << u0, 1 << v0)
        return sum((ax[i] & ym & ~(1 << v0)).bit_count() for i in iter_bits(xm & ~(1 << u0)))

    def _toggle(self, i: int, j: int, old: int, new: int) -> None:
        bx, by = 1 << j, 1 << i
        self.ax[old][i] &= ~bx
        self.ay[old][j] &= ~by
        self.ax[new][i] |= bx
        self.ay[new][j] |= by
        self.grid[i][j] = new

    def _excess_delta(self, i: int, j: int, a: int, b: int) -> int:
        axa, aya, axb, ayb = self.ax[a], self.ay[a], self.ax[b], self.ay[b]
        bit_i, bit_j = 1 << i, 1 << j
        old_a = bfs_component(axa, aya, bit_i, 0)
        bi = bfs_component(axb, ayb, bit_i, 0)
        before = self._penalty(a, *old_a) + self._penalty(b, *bi)
        if bi[1] & bit_j:
            merged = bi
        else:
            bj = bfs_component(axb, ayb, 0, bit_j)
            before += self._penalty(b, *bj)
            merged = (bi[0] | bj[0], bi[1] | bj[1])
        self._toggle(i, j, a, b)
        ai = bfs_component(axa, aya, bit_i, 0)
        after = self._penalty(a, *ai) + self._penalty(b, *merged)
        if not ai[1] & bit_j:
            after += self._penalty(a, old_a[0] & ~ai[0], old_a[1] & ~ai[1])
        return after - before

    def _stars_delta(self, i: int, j: int, a: int, b: int) -> int:
        before = self._bad_near(a, i, j) + self._bad_near(b, i, j)
        self._toggle(i, j, a, b)
        return self._bad_near(a, i, j) + self._bad_near(b, i, j) - before

    def try_move(self, i: int, j: int, b: int, temperature: float, rng: random.Random) -> None:
        """Recolour ``x_i y_j`` to ``b``; keep it by the Metropolis rule."""
        a = self.grid[i][j]
        if self.stars:
            base_delta = self._stars_delta(i, j, a, b)
        else:
            base_delta = self._excess_delta(i, j, a, b)
        delta = base_delta
        if self.figure1:
            old_merge = min(self.merge[1:])
            saved = self.merge[a], self.merge[b]
            self.merge[a] = self._merge_violations(a)
            self.merge[b] = self._merge_violations(b)
            delta += min(self.merge[1:]) - old_merge

        if delta <= 0 or rng.random() < math.exp(-delta / temperature):
            self.base += base_delta
            return
        self._toggle(i, j, b, a)
        if self.figure1:
            self.merge[a], self.merge[b] = saved


def _run_restart(cfg: SearchConfig, restart: int) -> tuple[Colouring, int]:
    rng = random.Random(cfg.seed + restart)
    state = _Annealer(cfg, rng)
    best_energy = state.energy()
    best = state.snapshot()
    if best_energy == 0 or cfg.k == 1:
        return best, 0
    temperature = float(cfg.initial_temperature)
    cooling = float(cfg.cooling_factor)
    cells = state.cells
    n_cells = len(cells)
    k = cfg.k
    grid = state.grid
    for step in range(1, cfg.max_steps + 1):
        i, j = cells[rng.randrange(n_cells)]
        b = rng.randrange(1, k)
        if b >= grid[i][j]:
            b += 1
        state.try_move(i, j, b, temperature, rng)
        energy = state.energy()
        if energy < best_energy:
            best_energy = energy
            best = state.snapshot()
            if energy == 0:
                return best, step
        if step % cfg.steps_per_temperature == 0:
            temperature *= cooling
    return best, cfg.max_steps


def anneal(cfg: SearchConfig) -> SearchOutcome:
    """Run up to ``cfg.restarts`` restarts (restart ``r`` seeded ``seed + r``).

    Stops at the first restart reaching objective zero; otherwise returns the
    lowest-objective result, ties going to the earliest restart.  The reported
    objective is always recomputed from scratch on the returned colouring.
    """
    best: tuple[Colouring, int, int] | None = None
    steps = 0
    used = 0
    for r in range(cfg.restarts):
        col, used_here = _run_restart(cfg, r)
        value = mode_objective(col, cfg)
        steps += used_here
        used = r + 1
        if best is None or value < best[1]:
            best = (col, value, r)
        if value == 0:
            break
    col, value, r = best
    return SearchOutcome(col, value, steps, value == 0, cfg.seed, used, r)
