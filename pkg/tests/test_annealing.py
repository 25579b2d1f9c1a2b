import random
from fractions import Fraction

import pytest

from bipramsey.annealing import (
    SearchConfig,
    _Annealer,
    _run_restart,
    anneal,
    figure1_objective,
    objective,
)
from bipramsey.colouring import Colouring, Side, VertexRef
from bipramsey.constructions import (
    latin_base,
    merge_cover_violations,
    star_forest,
    thm15_construction,
    verify_figure1_base,
)
from bipramsey.matching import mono_cm_free


def test_objective_examples(figure1_base):
    assert objective(latin_base(3), 1) == 0
    assert objective(Colouring.monochromatic(4, 4), 1) == 3
    assert objective(Colouring.monochromatic(4, 4), 4) == 0
    assert objective(thm15_construction(2, figure1_base), 2) == 0


def test_figure1_objective_of_asset(figure1_base):
    assert figure1_objective(figure1_base) == 0


@pytest.mark.parametrize(
    "kw",
    [
        {"mode": "nope", "N": 2, "M": 2, "k": 2},
        {"mode": "figure1", "N": 6, "M": 7, "k": 5},
        {"mode": "star-forest", "N": 2, "M": 2, "k": 2, "n": 2},
        {"mode": "cm-free", "N": 0, "M": 2, "k": 2},
        {"mode": "cm-free", "N": 2, "M": 2, "k": 2, "cooling_factor": Fraction(1)},
        {"mode": "cm-free", "N": 2, "M": 2, "k": 2, "initial_temperature": Fraction(0)},
    ],
)
def test_config_rejects_bad_values(kw):
    with pytest.raises(ValueError):
        SearchConfig(**kw)


def test_for_mode_fills_figure1_dimensions():
    cfg = SearchConfig.for_mode("figure1", seed=3)
    assert (cfg.N, cfg.M, cfg.k, cfg.n) == (7, 7, 5, 1)


def test_star_forest_k4_5x5():
    out = anneal(SearchConfig.for_mode("star-forest", N=5, M=5, k=4, seed=1))
    assert out.success and out.objective == 0
    assert star_forest(out.best) and out.best.is_complete


def test_cm_free_small():
    out = anneal(SearchConfig.for_mode("cm-free", N=4, M=4, k=2, n=2, seed=0))
    assert out.success
    assert mono_cm_free(out.best, 3)


def test_impossible_instance_reports_best_effort():
    # every 3-colouring of K_{4,4} has a monochromatic connected 2-matching
    cfg = SearchConfig.for_mode("cm-free", N=4, M=4, k=3, n=1, seed=0, max_steps=2000, restarts=3)
    out = anneal(cfg)
    assert not out.success
    assert out.objective == objective(out.best, 1) > 0
    assert out.restarts_used == 3


def test_figure1_seed2():
    out = anneal(SearchConfig.for_mode("figure1", seed=2, max_steps=300_000, restarts=2))
    assert out.success
    check = verify_figure1_base(out.best)
    assert check.passed, check.violations


def test_same_seed_same_result():
    cfg = SearchConfig.for_mode("cm-free", N=5, M=5, k=3, n=1, seed=9, max_steps=3000, restarts=2)
    assert anneal(cfg) == anneal(cfg)


def test_restart_r_uses_seed_plus_r():
    base = dict(N=5, M=5, k=3, n=1, max_steps=1500)
    assert _run_restart(SearchConfig.for_mode("cm-free", seed=4, **base), 1) == _run_restart(
        SearchConfig.for_mode("cm-free", seed=5, **base), 0
    )


@pytest.mark.parametrize("mode,n", [("cm-free", 1), ("cm-free", 2), ("star-forest", 1), ("figure1", 1)])
def test_incremental_energy_matches_recomputation(mode, n):
    kw = {} if mode == "figure1" else {"N": 6, "M": 5, "k": 3, "n": n}
    cfg = SearchConfig.for_mode(mode, **kw)
    rng = random.Random(13)
    state = _Annealer(cfg, rng)
    for _ in range(400):
        i, j = state.cells[rng.randrange(len(state.cells))]
        b = rng.choice([c for c in range(1, cfg.k + 1) if c != state.grid[i][j]])
        state.try_move(i, j, b, 0.7, rng)
        snap = state.snapshot()
        if state.stars:
            expected = sum(
                1
                for x in range(cfg.N)
                for y in range(cfg.M)
                if snap[x, y]
                and snap.degree(VertexRef(Side.X, x), snap[x, y]) >= 2
                and snap.degree(VertexRef(Side.Y, y), snap[x, y]) >= 2
            )
        else:
            expected = objective(snap, n)
        assert state.base == expected
        if mode == "figure1":
            assert state.merge[1:] == [merge_cover_violations(snap, c) for c in range(1, 6)]
        if state.energy() == 0:
            assert (figure1_objective(snap) if mode == "figure1" else objective(snap, n)) == 0

