"""Special-vertex audits of colourings without a monochromatic CM(n+1).

Fix the canonical König cover ``tau_i`` of every monochromatic component
``C_i`` (see :func:`bipramsey.matching.max_matching`).  A vertex is *special*
if it lies in exactly one cover, and then it is special in that cover's
colour.  A non-special vertex of ``tau_i`` is *somewhat special* for ``C_i``
if ``tau_i`` holds a special vertex on the other side.  On this ledger the
module checks four statements:

* ``high-degree-cover``: a vertex with at least ``n+1`` edges of colour ``c``
  lies in the cover of its ``c``-component;
* ``special-degree``: a special vertex of colour ``c`` in ``X`` has
  ``c``-degree at least ``M - (k-1)n`` (``N - (k-1)n`` in ``Y``);
* ``special-sides``: a colour with two or more special components has all
  its special vertices on one side;
* ``special-count``: the number ``s`` of special vertices is at least
  ``NM/n - (N+M)(k-2) + T(min(N,M)/n - k)``, ``T`` counting somewhat special
  (vertex, component) pairs.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from .colouring import Colouring, Side, VertexRef
from .matching import (
    Component,
    CoverCertificate,
    all_components,
    find_connected_matching,
    max_matching,
)


class AuditPreconditionError(ValueError):
    """The colouring is outside the audits' standing assumptions.

    ``kind`` is one of ``"not-complete"``, ``"cm-present"``, ``"too-small"``;
    for ``"cm-present"``, ``witness`` is the offending certificate.
    """

    def __init__(self, kind: str, message: str, witness: CoverCertificate | None = None) -> None:
        super().__init__(message)
        self.kind = kind
        self.witness = witness


@dataclass(frozen=True)
class ComponentEntry:
    component: Component
    cover: frozenset[VertexRef]
    x: int
    y: int
    z: int
    w: int
    t: int

    @property
    def colour(self) -> int:
        return self.component.colour


@dataclass
class VertexEntry:
    vertex: VertexRef
    covers: list[int]
    special: bool
    special_colour: int | None
    somewhat_special_in: list[int]

    @property
    def somewhat_special(self) -> bool:
        return bool(self.somewhat_special_in)


@dataclass
class SpecialReport:
    col: Colouring
    n: int
    components: list[ComponentEntry]
    vertices: dict[VertexRef, VertexEntry]
    s: int
    T: int

    def special_vertices(self, colour: int | None = None) -> list[VertexRef]:
        return [
            v for v, e in self.vertices.items()
            if e.special and (colour is None or e.special_colour == colour)
        ]

    def uncovered(self) -> list[VertexRef]:
        return [v for v, e in self.vertices.items() if not e.covers]

    def ledger_violations(self) -> list[str]:
        """Per-component inequalities every report must satisfy."""
        out = []
        for idx, e in enumerate(self.components):
            if e.x + e.y > self.n:
                out.append(f"component {idx}: x + y = {e.x + e.y} > n = {self.n}")
            if e.z < e.y:
                out.append(f"component {idx}: z = {e.z} < y = {e.y}")
            if e.w < e.x:
                out.append(f"component {idx}: w = {e.w} < x = {e.x}")
        return out


@dataclass
class CheckResult:
    name: str
    passed: bool
    violations: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.passed


@dataclass
class CountResult:
    s: int
    T: int
    rhs: Fraction
    passed: bool

    @property
    def margin(self) -> Fraction:
        return self.s - self.rhs


def check_preconditions(col: Colouring, n: int) -> None:
    if n < 1:
        raise ValueError("n must be positive")
    if not col.is_complete:
        raise AuditPreconditionError(
            "not-complete", f"colouring has {len(col.absent_edges())} absent edge(s)"
        )
    witness = find_connected_matching(col, n + 1)
    if witness is not None:
        raise AuditPreconditionError(
            "cm-present",
            f"colour {witness.component.colour} has a connected {witness.size}-matching "
            f"{list(witness.matching)}",
            witness,
        )
    bound = col.k * n + 1
    if col.n_left < bound or col.n_right < bound:
        raise AuditPreconditionError(
            "too-small",
            f"N = {col.n_left}, M = {col.n_right} but both must be at least kn+1 = {bound}",
        )


def build_special_report(col: Colouring, n: int) -> SpecialReport:
    check_preconditions(col, n)
    comps = all_components(col)
    covers = [frozenset(max_matching(col, comp).cover) for comp in comps]

    membership: dict[VertexRef, list[int]] = {v: [] for v in col.vertices()}
    for idx, cover in enumerate(covers):
        for v in cover:
            membership[v].append(idx)

    special_sides: dict[int, set[Side]] = defaultdict(set)
    for v, owners in membership.items():
        if len(owners) == 1:
            special_sides[owners[0]].add(v.side)

    entries = []
    somewhat: dict[VertexRef, list[int]] = defaultdict(list)
    for idx, (comp, cover) in enumerate(zip(comps, covers)):
        t = 0
        for v in sorted(cover):
            if len(membership[v]) > 1 and v.side.other in special_sides[idx]:
                t += 1
                somewhat[v].append(idx)
        x = sum(1 for v in cover if v.side is Side.X)
        y = len(cover) - x
        entries.append(
            ComponentEntry(comp, cover, x, y, len(comp.x_vertices) - x, len(comp.y_vertices) - y, t)
        )

    vertices = {}
    for v, owners in membership.items():
        special = len(owners) == 1
        vertices[v] = VertexEntry(
            v, owners, special, comps[owners[0]].colour if special else None, somewhat[v]
        )
    s = sum(1 for e in vertices.values() if e.special)
    T = sum(e.t for e in entries)
    return SpecialReport(col, n, entries, vertices, s, T)


def _cover_of(report: SpecialReport, v: VertexRef, colour: int) -> ComponentEntry | None:
    for e in report.components:
        if e.colour == colour and v in e.component:
            return e
    return None


def check_high_degree_claim(col: Colouring, n: int, report: SpecialReport | None = None) -> CheckResult:
    report = report or build_special_report(col, n)
    bad = []
    for v in col.vertices():
        for c in range(1, col.k + 1):
            if col.degree(v, c) >= n + 1:
                entry = _cover_of(report, v, c)
                if entry is None or v not in entry.cover:
                    bad.append(f"{v} has colour-{c} degree {col.degree(v, c)} but is not in its cover")
    return CheckResult("high-degree-cover", not bad, bad)


def check_special_degree(col: Colouring, n: int, report: SpecialReport | None = None) -> CheckResult:
    report = report or build_special_report(col, n)
    bad = []
    for v in report.special_vertices():
        c = report.vertices[v].special_colour
        other = col.n_right if v.side is Side.X else col.n_left
        bound = other - (col.k - 1) * n
        d = col.degree(v, c)
        if d < bound:
            bad.append(f"{v} is special in colour {c} with degree {d} < {bound}")
    return CheckResult("special-degree", not bad, bad)


def check_special_sides(col: Colouring, n: int, report: SpecialReport | None = None) -> CheckResult:
    report = report or build_special_report(col, n)
    bad = []
    for c in range(1, col.k + 1):
        specials = report.special_vertices(c)
        owners = {report.vertices[v].covers[0] for v in specials}
        sides = {v.side for v in specials}
        if len(owners) >= 2 and len(sides) > 1:
            bad.append(
                f"colour {c} has {len(owners)} special components and special vertices on both sides: "
                + ", ".join(map(str, specials))
            )
    return CheckResult("special-sides", not bad, bad)


def special_count_bound(N: int, M: int, k: int, n: int, T: int) -> Fraction:
    return Fraction(N * M, n) - (N + M) * (k - 2) + T * (Fraction(min(N, M), n) - k)


def audit_special_count(col: Colouring, n: int, report: SpecialReport | None = None) -> CountResult:
    report = report or build_special_report(col, n)
    rhs = special_count_bound(col.n_left, col.n_right, col.k, n, report.T)
    return CountResult(report.s, report.T, rhs, report.s >= rhs)


@dataclass
class AuditSummary:
    report: SpecialReport
    checks: list[CheckResult]
    count: CountResult

    @property
    def passed(self) -> bool:
        return all(self.checks) and self.count.passed

    def lines(self) -> list[str]:
        r = self.report
        col = r.col
        out = [f"audit N={col.n_left} M={col.n_right} k={col.k} n={r.n}"]
        for e in r.components:
            out.append(f"component colour={e.colour} x={e.x} y={e.y} z={e.z} w={e.w} t={e.t}")
        out.append(f"s {r.s}")
        out.append(f"T {r.T}")
        out.append(f"rhs {self.count.rhs}")
        out.append(f"margin {self.count.margin}")
        for chk in self.checks:
            out.append(f"{chk.name} {'pass' if chk.passed else 'fail'}")
            out.extend(f"  violation: {msg}" for msg in chk.violations)
        out.append(f"special-count {'pass' if self.count.passed else 'fail'}")
        out.append(f"result {'pass' if self.passed else 'fail'}")
        return out


def run_audit(col: Colouring, n: int) -> AuditSummary:
    report = build_special_report(col, n)
    checks = [
        check_high_degree_claim(col, n, report),
        check_special_degree(col, n, report),
        check_special_sides(col, n, report),
    ]
    return AuditSummary(report, checks, audit_special_count(col, n, report))
