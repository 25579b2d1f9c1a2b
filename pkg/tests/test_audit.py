from fractions import Fraction

import pytest

from bipramsey.audit import (
    AuditPreconditionError,
    build_special_report,
    check_high_degree_claim,
    run_audit,
    special_count_bound,
)
from bipramsey.colouring import Colouring
from bipramsey.constructions import BlowupWeights, blow_up, latin_base, thm15_construction


def test_bound_is_exact_rational():
    assert special_count_bound(13, 13, 5, 2, 0) == Fraction(13, 2)
    assert special_count_bound(13, 13, 5, 2, 4) == Fraction(13, 2) + 4 * Fraction(3, 2)
    assert special_count_bound(5, 5, 4, 1, 0) == 5
    assert isinstance(special_count_bound(7, 6, 3, 4, 1), Fraction)


def test_star_asset_n1(star_k4):
    summary = run_audit(star_k4, 1)
    assert summary.passed
    r = summary.report
    assert r.s >= 5 + r.T
    assert summary.count.rhs == 5 + r.T * (5 - 4)


def test_thm15_n2(figure1_base):
    col = thm15_construction(2, figure1_base)
    summary = run_audit(col, 2)
    assert summary.passed, summary.lines()
    assert summary.count.rhs == Fraction(13, 2) + Fraction(3, 2) * summary.report.T
    assert summary.count.margin == summary.report.s - summary.count.rhs


def test_too_small():
    with pytest.raises(AuditPreconditionError) as info:
        run_audit(latin_base(3), 1)
    assert info.value.kind == "too-small"


def test_cm_present_carries_witness():
    with pytest.raises(AuditPreconditionError) as info:
        run_audit(Colouring.monochromatic(2, 2), 1)
    assert info.value.kind == "cm-present"
    assert info.value.witness.size == 2


def test_not_complete(star_k4):
    with pytest.raises(AuditPreconditionError) as info:
        run_audit(star_k4.with_edge(0, 0, 0), 1)
    assert info.value.kind == "not-complete"


def _corpus(figure1_base, star_k4, star_k5):
    yield star_k4, 1
    yield star_k5, 1
    for n in (2, 3):
        yield thm15_construction(n, figure1_base), n
        for base in (star_k4, star_k5):
            yield blow_up(base, BlowupWeights.uniform(base, n)), n


def test_corpus_passes_all_checks(figure1_base, star_k4, star_k5):
    for col, n in _corpus(figure1_base, star_k4, star_k5):
        summary = run_audit(col, n)
        assert summary.passed, (col.n_left, col.k, n, summary.lines())
        assert summary.report.ledger_violations() == []
        assert summary.report.uncovered() == []


def test_report_bookkeeping(figure1_base):
    col = thm15_construction(3, figure1_base)
    r = build_special_report(col, 3)
    assert r.s == len(r.special_vertices())
    assert r.T == sum(len(e.somewhat_special_in) for e in r.vertices.values())
    for e in r.components:
        assert e.x + e.y == len(e.cover)
        assert e.x + e.z == len(e.component.x_vertices)
        assert e.y + e.w == len(e.component.y_vertices)
    for v in r.special_vertices():
        entry = r.vertices[v]
        assert len(entry.covers) == 1
        assert r.components[entry.covers[0]].colour == entry.special_colour


def test_high_degree_claim_detects_a_bad_cover(star_k4):
    r = build_special_report(star_k4, 1)
    # drop a high-degree vertex from every cover it belongs to
    victim = next(
        v for v in star_k4.vertices()
        if any(star_k4.degree(v, c) >= 2 for c in range(1, 5))
    )
    for idx, e in enumerate(r.components):
        if victim in e.cover:
            r.components[idx] = e.__class__(
                e.component, e.cover - {victim}, e.x, e.y, e.z, e.w, e.t
            )
    result = check_high_degree_claim(star_k4, 1, r)
    assert not result
    assert any(str(victim) in msg for msg in result.violations)


def test_summary_lines_layout(star_k4):
    lines = run_audit(star_k4, 1).lines()
    assert lines[0] == "audit N=5 M=5 k=4 n=1"
    assert [line.split()[0] for line in lines[-5:]] == [
        "high-degree-cover", "special-degree", "special-sides", "special-count", "result",
    ]
    assert lines[-1] == "result pass"
