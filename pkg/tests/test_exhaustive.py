import pytest

from bipramsey.exhaustive import (
    BudgetExceeded,
    canonical_form,
    check_budget,
    compute_r,
    enumerate_canonical,
    exhaustive_decide,
    is_prefix_minimal,
)
from bipramsey.matching import mono_cm_free


def test_two_colours_k22_has_witness():
    d = exhaustive_decide(2, 2, 2, 1)
    assert not d.arrowing
    assert d.witness.is_complete and mono_cm_free(d.witness, 2)


def test_two_colours_k33_arrows():
    d = exhaustive_decide(3, 3, 2, 1)
    assert d.arrowing and d.witness is None


def test_three_colours_k33_witness_and_k44_arrows():
    assert not exhaustive_decide(3, 3, 3, 1).arrowing
    assert exhaustive_decide(4, 4, 3, 1).arrowing


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_r1_is_n_plus_1(n):
    result = compute_r(1, n, n + 1)
    assert result.value == n + 1
    assert result.witness.n_left == n


def test_r2_and_r3():
    assert compute_r(2, 1, 5).value == 3
    r3 = compute_r(3, 1, 5)
    assert r3.value == 4
    assert r3.witness.n_left == 3 and mono_cm_free(r3.witness, 2)


def test_unresolved_when_max_too_small():
    result = compute_r(3, 1, 3)
    assert not result.resolved
    assert result.witness.n_left == 3


def test_budget_gate_reports_n():
    with pytest.raises(BudgetExceeded) as info:
        compute_r(4, 2, 20)
    assert info.value.N == 5


def test_raw_bit_gate():
    check_budget(4, 4, 3)
    with pytest.raises(BudgetExceeded):
        check_budget(5, 5, 4)


def test_node_budget():
    with pytest.raises(BudgetExceeded):
        exhaustive_decide(4, 4, 3, 1, node_budget=10)


def test_prefix_minimal_examples():
    assert is_prefix_minimal([(1, 1, 2)], 2)
    assert not is_prefix_minimal([(1, 2, 2)], 2)
    assert not is_prefix_minimal([(2, 1)], 2)
    assert is_prefix_minimal([(1, 1), (1, 2)], 2)
    assert not is_prefix_minimal([(1, 2), (1, 1)], 2)
    assert is_prefix_minimal([(1, 1), (2, 2)], 2)
    assert not is_prefix_minimal([(1, 1), (2, 1)], 2)


@pytest.mark.parametrize(
    "N,M,k,n",
    [(2, 2, 2, 1), (2, 2, 2, 2), (3, 3, 2, 1), (3, 3, 2, 2), (2, 3, 2, 1), (3, 2, 3, 1), (3, 3, 3, 1)],
)
def test_pruning_keeps_one_representative_per_orbit(N, M, k, n):
    everything = enumerate_canonical(N, M, k, n, symmetry=False)
    assert all(mono_cm_free(c, n + 1) for c in everything)
    orbits = {canonical_form(c) for c in everything}
    reps = enumerate_canonical(N, M, k, n)
    assert len(reps) == len(orbits)
    assert {canonical_form(c) for c in reps} == orbits
    assert all(c.edges == canonical_form(c) for c in reps)
