"""Edge-coloured complete bipartite graphs and the ``bicol`` text format.

A colouring of ``K_{N,M}`` is an ``N x M`` matrix whose rows index the left
side ``X`` and whose columns index the right side ``Y``.  Entry ``0`` marks an
absent edge; entries ``1..k`` are colours.

File format::

    # comment lines are ignored
    bicol <N> <M> <k>
    <M space-separated integers>      (N rows)
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

ABSENT = 0
HEADER_TAG = "bicol"


class ParseError(ValueError):
    """Malformed ``bicol`` input; ``line`` is 1-based (0 if at end of input)."""

    def __init__(self, line: int, message: str) -> None:
        self.line = line
        self.message = message
        where = f"line {line}" if line else "end of input"
        super().__init__(f"{where}: {message}")


class Side(enum.Enum):
    X = "X"
    Y = "Y"

    @property
    def other(self) -> "Side":
        return Side.Y if self is Side.X else Side.X


@dataclass(frozen=True)
class VertexRef:
    side: Side
    index: int

    def __str__(self) -> str:
        return f"{self.side.value}{self.index}"

    def __lt__(self, other: "VertexRef") -> bool:
        return (self.side.value, self.index) < (other.side.value, other.index)


@dataclass(frozen=True)
class Colouring:
    """An immutable ``k``-colouring of (a subgraph of) ``K_{N,M}``."""

    n_left: int
    n_right: int
    k: int
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.n_left < 1 or self.n_right < 1 or self.k < 1:
            raise ValueError(
                f"dimensions must be positive, got N={self.n_left} M={self.n_right} k={self.k}"
            )
        rows = tuple(tuple(int(c) for c in row) for row in self.edges)
        if len(rows) != self.n_left:
            raise ValueError(f"expected {self.n_left} rows, got {len(rows)}")
        for i, row in enumerate(rows):
            if len(row) != self.n_right:
                raise ValueError(f"row {i} has {len(row)} entries, expected {self.n_right}")
            for c in row:
                if not 0 <= c <= self.k:
                    raise ValueError(f"row {i} has entry {c} outside [0, {self.k}]")
        object.__setattr__(self, "edges", rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], k: int | None = None) -> "Colouring":
        rows = [list(r) for r in rows]
        if k is None:
            k = max((max(r) for r in rows if r), default=1) or 1
        return cls(len(rows), len(rows[0]) if rows else 0, k, tuple(map(tuple, rows)))

    @classmethod
    def monochromatic(cls, n_left: int, n_right: int, k: int = 1, colour: int = 1) -> "Colouring":
        return cls(n_left, n_right, k, tuple((colour,) * n_right for _ in range(n_left)))

    def __getitem__(self, xy: tuple[int, int]) -> int:
        i, j = xy
        return self.edges[i][j]

    @property
    def is_complete(self) -> bool:
        return all(c != ABSENT for row in self.edges for c in row)

    def absent_edges(self) -> list[tuple[int, int]]:
        return [
            (i, j)
            for i, row in enumerate(self.edges)
            for j, c in enumerate(row)
            if c == ABSENT
        ]

    def with_edge(self, i: int, j: int, colour: int) -> "Colouring":
        rows = [list(r) for r in self.edges]
        rows[i][j] = colour
        return Colouring(self.n_left, self.n_right, self.k, tuple(map(tuple, rows)))

    def degree(self, v: VertexRef, colour: int) -> int:
        if v.side is Side.X:
            return sum(1 for c in self.edges[v.index] if c == colour)
        return sum(1 for row in self.edges if row[v.index] == colour)

    def vertices(self) -> Iterable[VertexRef]:
        for i in range(self.n_left):
            yield VertexRef(Side.X, i)
        for j in range(self.n_right):
            yield VertexRef(Side.Y, j)


def parse_colouring(text: str) -> Colouring:
    """Parse ``bicol`` text.  Raises :class:`ParseError` naming the bad line."""
    lines = text.split("\n")
    if text.endswith("\n"):
        lines.pop()
    content = [
        (lineno, line.rstrip())
        for lineno, line in enumerate(lines, start=1)
        if not line.startswith("#")
    ]
    # blank lines are only tolerated after the last row
    it = iter(content)
    header = None
    for lineno, line in it:
        if line.strip():
            header = (lineno, line)
            break
        raise ParseError(lineno, "blank line before header")
    if header is None:
        raise ParseError(0, "missing 'bicol' header")
    lineno, line = header
    fields = line.split(" ")
    if len(fields) != 4 or fields[0] != HEADER_TAG:
        raise ParseError(lineno, f"malformed header {line!r}, expected 'bicol <N> <M> <k>'")
    try:
        n_left, n_right, k = (_parse_int(f) for f in fields[1:])
    except ValueError:
        raise ParseError(lineno, f"malformed header {line!r}, dimensions must be integers") from None
    if n_left < 1 or n_right < 1 or k < 1:
        raise ParseError(lineno, "dimensions N, M, k must be positive")

    rows: list[tuple[int, ...]] = []
    last = lineno
    for lineno, line in it:
        if len(rows) == n_left:
            if line.strip():
                raise ParseError(lineno, f"too many rows, expected {n_left}")
            continue
        last = lineno
        if not line.strip():
            raise ParseError(lineno, f"blank line where row {len(rows)} was expected")
        fields = line.split(" ")
        if len(fields) != n_right:
            raise ParseError(lineno, f"row has {len(fields)} entries, expected {n_right}")
        try:
            row = tuple(_parse_int(f) for f in fields)
        except ValueError:
            raise ParseError(lineno, f"non-integer entry in {line!r}") from None
        for c in row:
            if not 0 <= c <= k:
                raise ParseError(lineno, f"entry {c} out of range [0, {k}]")
        rows.append(row)
    if len(rows) != n_left:
        raise ParseError(last if rows else 0, f"expected {n_left} rows, got {len(rows)}")
    return Colouring(n_left, n_right, k, tuple(rows))


def _parse_int(field: str) -> int:
    if not field.isdigit() or not field.isascii():
        raise ValueError(field)
    return int(field)


def emit_colouring(col: Colouring, comments: Sequence[str] = ()) -> str:
    """Serialise ``col`` to canonical ``bicol`` text, with optional ``#`` comments first."""
    out = [f"# {c}" if c else "#" for c in comments]
    out.append(f"{HEADER_TAG} {col.n_left} {col.n_right} {col.k}")
    out.extend(" ".join(str(c) for c in row) for row in col.edges)
    return "\n".join(out) + "\n"


def read_colouring(path) -> Colouring:
    with open(path, encoding="utf-8") as fh:
        return parse_colouring(fh.read())


def read_comments(text: str) -> list[str]:
    """Comment bodies of ``text`` (``#`` and one following space stripped)."""
    out = []
    for line in text.split("\n"):
        if line.startswith("#"):
            body = line[1:]
            out.append(body[1:] if body.startswith(" ") else body)
    return out


def write_colouring(path, col: Colouring, comments: Sequence[str] = ()) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(emit_colouring(col, comments))
