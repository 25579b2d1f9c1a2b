"""Monochromatic components, maximum matchings and König covers.

Adjacency is kept as Python integers used as bitsets: ``adj_x[i]`` has bit
``j`` set iff ``x_i y_j`` is an edge of the colour in question, and
``adj_y[j]`` is the transpose.  The low-level helpers operating on these
masks are shared with the search engine, which calls them in its inner loop.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .colouring import Colouring, Side, VertexRef


def iter_bits(mask: int) -> Iterator[int]:
    """Indices of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def colour_adjacency(col: Colouring, colour: int) -> tuple[list[int], list[int]]:
    adj_x = [0] * col.n_left
    adj_y = [0] * col.n_right
    for i, row in enumerate(col.edges):
        for j, c in enumerate(row):
            if c == colour:
                adj_x[i] |= 1 << j
                adj_y[j] |= 1 << i
    return adj_x, adj_y


def bfs_component(
    adj_x: Sequence[int], adj_y: Sequence[int], xmask: int = 0, ymask: int = 0
) -> tuple[int, int]:
    """Close the seed vertex sets ``(xmask, ymask)`` under adjacency."""
    fx, fy = xmask, ymask
    while fx or fy:
        ny = 0
        for i in iter_bits(fx):
            ny |= adj_x[i]
        nx = 0
        for j in iter_bits(fy):
            nx |= adj_y[j]
        fy = ny & ~ymask
        fx = nx & ~xmask
        xmask |= fx
        ymask |= fy
    return xmask, ymask


def component_masks(adj_x: Sequence[int], adj_y: Sequence[int]) -> list[tuple[int, int]]:
    """All components with at least one edge, ordered by smallest X index."""
    out = []
    seen = 0
    for i, nbrs in enumerate(adj_x):
        if not nbrs or seen >> i & 1:
            continue
        xm, ym = bfs_component(adj_x, adj_y, 1 << i, 0)
        seen |= xm
        out.append((xm, ym))
    return out


def hopcroft_karp(adj_x: Sequence[int], xmask: int) -> dict[int, int]:
    """Maximum matching of the bipartite graph induced on X-vertices ``xmask``.

    Returns ``{x: y}``.  Phases grow shortest augmenting paths (BFS layering
    from free X vertices) and vertices are always scanned in ascending index
    order, so the result is a deterministic function of the input.
    """
    xs = list(iter_bits(xmask))
    match_x: dict[int, int] = {}
    match_y: dict[int, int] = {}
    while True:
        dist: dict[int, int] = {}
        queue = [u for u in xs if u not in match_x]
        for u in queue:
            dist[u] = 0
        found = False
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            for v in iter_bits(adj_x[u]):
                w = match_y.get(v)
                if w is None:
                    found = True
                elif w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if not found:
            return match_x

        def augment(u: int) -> bool:
            for v in iter_bits(adj_x[u]):
                w = match_y.get(v)
                if w is None or (dist.get(w) == dist[u] + 1 and augment(w)):
                    match_x[u] = v
                    match_y[v] = u
                    return True
            dist[u] = -1
            return False

        for u in xs:
            if u not in match_x:
                augment(u)


def matching_number(adj_x: Sequence[int], xmask: int) -> int:
    return len(hopcroft_karp(adj_x, xmask))


def konig_cover(
    adj_x: Sequence[int], xmask: int, ymask: int, match_x: dict[int, int]
) -> tuple[int, int]:
    """Minimum vertex cover ``(X \\ Z) | (Y & Z)`` from a maximum matching.

    ``Z`` is the set reachable from unmatched X vertices by alternating paths.
    """
    match_y = {v: u for u, v in match_x.items()}
    zx = xmask & ~mask_of(match_x)
    zy = 0
    frontier = zx
    while frontier:
        ny = 0
        for u in iter_bits(frontier):
            ny |= adj_x[u]
        ny &= ~zy
        zy |= ny
        frontier = 0
        for v in iter_bits(ny):
            w = match_y.get(v)
            if w is not None and not zx >> w & 1:
                frontier |= 1 << w
        zx |= frontier
    return xmask & ~zx, ymask & zy


@dataclass(frozen=True)
class Component:
    colour: int
    x_vertices: frozenset[int]
    y_vertices: frozenset[int]
    edge_count: int

    @property
    def xmask(self) -> int:
        return mask_of(self.x_vertices)

    @property
    def ymask(self) -> int:
        return mask_of(self.y_vertices)

    @property
    def size(self) -> int:
        return len(self.x_vertices) + len(self.y_vertices)

    def vertices(self) -> list[VertexRef]:
        return [VertexRef(Side.X, i) for i in sorted(self.x_vertices)] + [
            VertexRef(Side.Y, j) for j in sorted(self.y_vertices)
        ]

    def __contains__(self, v: VertexRef) -> bool:
        pool = self.x_vertices if v.side is Side.X else self.y_vertices
        return v.index in pool


@dataclass(frozen=True)
class CoverCertificate:
    """A maximum matching and a minimum cover of one component.

    ``len(cover) == len(matching)`` together with disjointness and coverage
    proves both optimal, so :meth:`verify` needs no solver.
    """

    component: Component
    matching: tuple[tuple[int, int], ...]
    cover: tuple[VertexRef, ...]

    @property
    def size(self) -> int:
        return len(self.matching)

    def verify(self, col: Colouring) -> list[str]:
        """Problems found with this certificate against ``col``; empty if sound."""
        comp = self.component
        problems = []
        xs = [i for i, _ in self.matching]
        ys = [j for _, j in self.matching]
        if len(set(xs)) != len(xs) or len(set(ys)) != len(ys):
            problems.append("matching edges share a vertex")
        for i, j in self.matching:
            if col[i, j] != comp.colour or i not in comp.x_vertices:
                problems.append(f"matching edge X{i}-Y{j} is not in the component")
        cx = {v.index for v in self.cover if v.side is Side.X}
        cy = {v.index for v in self.cover if v.side is Side.Y}
        for i in comp.x_vertices:
            for j, c in enumerate(col.edges[i]):
                if c == comp.colour and i not in cx and j not in cy:
                    problems.append(f"edge X{i}-Y{j} is uncovered")
        if len(self.cover) != len(self.matching):
            problems.append(f"|cover| = {len(self.cover)} != |matching| = {len(self.matching)}")
        return problems


def _check_colour(col: Colouring, colour: int) -> None:
    if not 1 <= colour <= col.k:
        raise ValueError(f"colour {colour} out of range 1..{col.k}")


def _make_component(colour: int, adj_x: Sequence[int], xm: int, ym: int) -> Component:
    edges = sum((adj_x[i] & ym).bit_count() for i in iter_bits(xm))
    return Component(colour, frozenset(iter_bits(xm)), frozenset(iter_bits(ym)), edges)


def components(col: Colouring, colour: int) -> list[Component]:
    """Monochromatic components of ``colour``; isolated vertices are skipped."""
    _check_colour(col, colour)
    adj_x, adj_y = colour_adjacency(col, colour)
    return [_make_component(colour, adj_x, xm, ym) for xm, ym in component_masks(adj_x, adj_y)]


def all_components(col: Colouring) -> list[Component]:
    return [comp for c in range(1, col.k + 1) for comp in components(col, c)]


def max_matching(col: Colouring, comp: Component) -> CoverCertificate:
    _check_colour(col, comp.colour)
    adj_x, adj_y = colour_adjacency(col, comp.colour)
    if not comp.x_vertices:
        raise ValueError("component has no X vertices")
    seed = min(comp.x_vertices)
    xm, ym = bfs_component(adj_x, adj_y, 1 << seed, 0)
    if _make_component(comp.colour, adj_x, xm, ym) != comp:
        raise ValueError("component is inconsistent with the colouring")
    match_x = hopcroft_karp(adj_x, xm)
    cx, cy = konig_cover(adj_x, xm, ym, match_x)
    cover = tuple(VertexRef(Side.X, i) for i in iter_bits(cx)) + tuple(
        VertexRef(Side.Y, j) for j in iter_bits(cy)
    )
    return CoverCertificate(comp, tuple(sorted(match_x.items())), cover)


def connected_matching_number(col: Colouring, colour: int) -> int:
    _check_colour(col, colour)
    adj_x, adj_y = colour_adjacency(col, colour)
    return max(
        (matching_number(adj_x, xm) for xm, _ in component_masks(adj_x, adj_y)),
        default=0,
    )


def connected_matching_numbers(col: Colouring) -> dict[int, int]:
    return {c: connected_matching_number(col, c) for c in range(1, col.k + 1)}


def mono_cm_free(col: Colouring, target: int) -> bool:
    """True iff no colour has a connected matching with ``target`` edges."""
    return all(connected_matching_number(col, c) < target for c in range(1, col.k + 1))


def find_connected_matching(col: Colouring, target: int) -> CoverCertificate | None:
    """Certificate of the first component whose matching has ``>= target`` edges."""
    for comp in all_components(col):
        cert = max_matching(col, comp)
        if cert.size >= target:
            return cert
    return None
