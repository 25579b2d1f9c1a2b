"""Lower-bound colourings: Latin bases, blow-ups and the 6.5n construction.

Every generator re-checks its output with the matching engine and raises
:class:`ConstructionError` rather than return an unverified colouring.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .colouring import Colouring
from .matching import (
    bfs_component,
    colour_adjacency,
    components,
    iter_bits,
    max_matching,
    mono_cm_free,
)

FIGURE1_SIZE = 7
FIGURE1_COLOURS = 5
# u_0 is X-vertex 0, v_0 is Y-vertex 0; their edge is the one left out
FIGURE1_ABSENT = (0, 0)


class ConstructionError(ValueError):
    pass


@dataclass(frozen=True)
class BlowupWeights:
    x_weights: tuple[int, ...]
    y_weights: tuple[int, ...]
    allow_zero: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "x_weights", tuple(int(w) for w in self.x_weights))
        object.__setattr__(self, "y_weights", tuple(int(w) for w in self.y_weights))
        lowest = 0 if self.allow_zero else 1
        for w in self.x_weights + self.y_weights:
            if w < lowest:
                raise ValueError(f"blow-up weight {w} is below {lowest}")

    @classmethod
    def uniform(cls, base: Colouring, weight: int) -> "BlowupWeights":
        return cls((weight,) * base.n_left, (weight,) * base.n_right)


def latin_base(k: int) -> Colouring:
    """``K_{k,k}`` with colour ``(i + j) mod k + 1``: every class a perfect matching."""
    if k < 1:
        raise ValueError("k must be positive")
    return Colouring(k, k, k, tuple(tuple((i + j) % k + 1 for j in range(k)) for i in range(k)))


def blow_up(base: Colouring, w: BlowupWeights) -> Colouring:
    """Replace vertex ``v`` by ``weight(v)`` copies and each edge by a uniform block."""
    if len(w.x_weights) != base.n_left or len(w.y_weights) != base.n_right:
        raise ValueError(
            f"weights have lengths ({len(w.x_weights)}, {len(w.y_weights)}), "
            f"base is {base.n_left}x{base.n_right}"
        )
    xs = [i for i, wt in enumerate(w.x_weights) for _ in range(wt)]
    ys = [j for j, wt in enumerate(w.y_weights) for _ in range(wt)]
    if not xs or not ys:
        raise ValueError("blow-up would have an empty side")
    rows = tuple(tuple(base.edges[i][j] for j in ys) for i in xs)
    return Colouring(len(xs), len(ys), base.k, rows)


def star_forest(col: Colouring) -> bool:
    """Every monochromatic component has cover number at most one."""
    return mono_cm_free(col, 2)


@dataclass
class Figure1Check:
    passed: bool
    violations: list[str] = field(default_factory=list)
    merge_colour: int | None = None

    def __bool__(self) -> bool:
        return self.passed


def merge_cover_violations(base: Colouring, colour: int) -> int:
    """Edges left uncovered by ``{u_0, v_0}`` once ``u_0 v_0`` is added in ``colour``.

    The merged component is the union of the ``colour``-components of ``u_0``
    and ``v_0`` plus the new edge, which is itself always covered.
    """
    adj_x, adj_y = colour_adjacency(base, colour)
    u0, v0 = FIGURE1_ABSENT
    xm, ym = bfs_component(adj_x, adj_y, 1 << u0, 1 << v0)
    return sum((adj_x[i] & ym & ~(1 << v0)).bit_count() for i in iter_bits(xm & ~(1 << u0)))


def verify_figure1_base(base: Colouring, merge_colour: int | None = None) -> Figure1Check:
    """Check the properties the 6.5n construction needs from its 7x7 base.

    With ``merge_colour`` unset, the smallest colour that works is reported.
    """
    problems = []
    if (base.n_left, base.n_right) != (FIGURE1_SIZE, FIGURE1_SIZE):
        problems.append(f"base is {base.n_left}x{base.n_right}, expected 7x7")
    if base.k != FIGURE1_COLOURS:
        problems.append(f"base has k={base.k}, expected 5")
    if problems:
        return Figure1Check(False, problems)
    absent = base.absent_edges()
    if absent != [FIGURE1_ABSENT]:
        problems.append(f"absent edges are {absent}, expected exactly [(0, 0)]")
    for c in range(1, base.k + 1):
        for comp in components(base, c):
            cert = max_matching(base, comp)
            if cert.size > 1:
                problems.append(
                    f"colour {c} component X{sorted(comp.x_vertices)} Y{sorted(comp.y_vertices)} "
                    f"is not a star (cover number {cert.size})"
                )
    if problems:
        return Figure1Check(False, problems)
    candidates = [merge_colour] if merge_colour is not None else range(1, base.k + 1)
    for c in candidates:
        if 1 <= c <= base.k and merge_cover_violations(base, c) == 0:
            return Figure1Check(True, [], c)
    if merge_colour is not None:
        problems.append(f"{{u0, v0}} does not cover the merged component in colour {merge_colour}")
    else:
        problems.append("no colour admits the cover {u0, v0} after inserting u0v0")
    return Figure1Check(False, problems)


def thm15_weights(n: int) -> BlowupWeights:
    side = (n // 2,) + (n,) * (FIGURE1_SIZE - 1)
    return BlowupWeights(side, side, allow_zero=True)


def thm15_construction(n: int, base: Colouring, merge_colour: int | None = None) -> Colouring:
    """5-coloured ``K_{floor(6.5n), floor(6.5n)}`` with no monochromatic connected (n+1)-matching.

    Inserts ``u_0 v_0`` in the merge colour, then blows up index 0 by
    ``n // 2`` and every other index by ``n``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    check = verify_figure1_base(base, merge_colour)
    if not check:
        raise ConstructionError("invalid Figure-1 base: " + "; ".join(check.violations))
    merged = base.with_edge(*FIGURE1_ABSENT, check.merge_colour)
    out = blow_up(merged, thm15_weights(n))
    expected = (13 * n) // 2
    if out.n_left != expected or out.n_right != expected or not out.is_complete:
        raise ConstructionError(f"construction is not a complete K_{{{expected},{expected}}}")
    if not mono_cm_free(out, n + 1):
        raise ConstructionError(f"construction contains a monochromatic connected {n + 1}-matching")
    return out
