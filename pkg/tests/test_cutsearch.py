import numpy as np
import pytest

from hardcut.cutsearch import (
    EXACT,
    LOCAL_SEARCH,
    RANDOM_RESTART,
    SPECTRAL_SWEEP,
    exact_balanced_min_cut,
    find_cut,
    local_search_refine,
    randomized_search,
    spectral_sweep_cut,
)
from hardcut.errors import HardCutError
from hardcut.graph import complete_graph, generate_regular
from hardcut.handlebody import VertexCut, build_model, model_lower_bound

from conftest import balanced_min_cut_oracle, boundary_oracle

EPS = 0.009


@pytest.fixture
def k4_model():
    return build_model(complete_graph(4), 2)


def check_result(model, result, eps):
    m = model.vertex_count
    total = model.params.total_handlebody_volume
    u1, u2 = result.side_volumes
    assert u1 > eps * total and u2 > eps * total
    holes = boundary_oracle(model.graph.edges, result.cut.indices)
    assert result.boundary == holes
    assert result.area == pytest.approx(holes * model.params.cut_disc_area, rel=1e-12)
    assert 2 * result.cut.size <= m


class TestExact:
    def test_k4_small_eps(self, k4_model):
        res = exact_balanced_min_cut(k4_model, EPS)
        assert res.method == EXACT
        assert res.boundary == 3 and res.cut.size == 1
        assert res.area == pytest.approx(3 * k4_model.params.cut_disc_area)
        assert res.evaluations == 14

    def test_k4_pairs_only(self, k4_model):
        res = exact_balanced_min_cut(k4_model, 0.3)
        assert res.boundary == 4 and res.cut.size == 2

    @pytest.mark.parametrize("eps", [0.5, 0.75])
    def test_no_balanced(self, k4_model, eps):
        with pytest.raises(HardCutError) as exc:
            exact_balanced_min_cut(k4_model, eps)
        assert exc.value.code == "NO_BALANCED_CUT"

    def test_too_large(self):
        model = build_model(generate_regular(30, 3, 0), 3)
        with pytest.raises(HardCutError) as exc:
            exact_balanced_min_cut(model, EPS)
        assert exc.value.code == "TOO_LARGE"

    @pytest.mark.parametrize("eps", [EPS, 0.1, 0.2, 0.3])
    def test_matches_oracle(self, small_model, eps):
        res = exact_balanced_min_cut(small_model, eps)
        m = small_model.vertex_count
        assert res.boundary == balanced_min_cut_oracle(m, small_model.graph.edges, eps)
        check_result(small_model, res, eps)


class TestSpectralSweep:
    def test_k4_tie_rule(self, k4_model):
        res = spectral_sweep_cut(k4_model, 0.3)
        assert res.method == SPECTRAL_SWEEP
        assert {frozenset(res.cut.indices), frozenset(res.cut.complement().indices)} == {
            frozenset({0, 1}),
            frozenset({2, 3}),
        }
        assert res.area == pytest.approx(4 * k4_model.params.cut_disc_area)

    def test_not_below_exact(self, small_model):
        for eps in (EPS, 0.2):
            assert spectral_sweep_cut(small_model, eps).boundary >= exact_balanced_min_cut(small_model, eps).boundary

    @pytest.mark.parametrize("m", [64, 216])
    def test_large(self, m):
        model = build_model(generate_regular(m, 3, 1), round(m ** (1 / 3)))
        res = spectral_sweep_cut(model, EPS)
        check_result(model, res, EPS)


class TestLocalSearch:
    def test_from_optimum(self, small_model):
        best = exact_balanced_min_cut(small_model, EPS)
        res = local_search_refine(small_model, best.cut, EPS, 3)
        assert res.method == LOCAL_SEARCH
        assert res.boundary == best.boundary

    def test_k4_refines(self, k4_model):
        start = VertexCut.from_indices(4, [0, 1])
        res = local_search_refine(k4_model, start, EPS, 0)
        assert res.boundary == 3
        assert res.area == pytest.approx(3 * k4_model.params.cut_disc_area)

    def test_unbalanced_start(self, k4_model):
        with pytest.raises(HardCutError) as exc:
            local_search_refine(k4_model, VertexCut.from_indices(4, []), EPS, 0)
        assert exc.value.code == "UNBALANCED_START"

    def test_never_worse_and_deterministic(self):
        model = build_model(generate_regular(64, 3, 4), 4)
        rng = np.random.default_rng(11)
        for trial in range(10):
            mask = rng.random(64) < 0.4
            start_holes = boundary_oracle(model.graph.edges, np.flatnonzero(mask))
            a = local_search_refine(model, mask, EPS, trial)
            b = local_search_refine(model, mask, EPS, trial)
            assert a == b
            assert a.boundary <= start_holes
            check_result(model, a, EPS)

    def test_swaps_preserve_balance_bounds(self):
        model = build_model(generate_regular(20, 3, 5), 3)
        eps = 0.45
        # only |S| = 10 is balanced, so improvements must come from swaps
        start = VertexCut.from_indices(20, range(0, 20, 2))
        res = local_search_refine(model, start, eps, 0)
        assert res.cut.size == 10
        assert res.boundary <= boundary_oracle(model.graph.edges, range(0, 20, 2))


class TestRandomized:
    def test_single_restart_is_refined_sweep(self, small_model):
        sweep = spectral_sweep_cut(small_model, EPS)
        ref = local_search_refine(small_model, sweep.cut, EPS, 5)
        res = randomized_search(small_model, EPS, restarts=1, seed=5)
        assert res.method == RANDOM_RESTART
        assert res.cut == ref.cut and res.area == ref.area

    def test_reproducible(self):
        model = build_model(generate_regular(64, 3, 2), 4)
        a = randomized_search(model, EPS, restarts=10, seed=3)
        b = randomized_search(model, EPS, restarts=10, seed=3)
        assert a == b and a.to_text() == b.to_text()

    def test_above_theorem_bound(self, small_model):
        res = randomized_search(small_model, EPS, restarts=5, seed=0)
        assert res.area >= model_lower_bound(small_model, EPS)
        assert res.boundary >= exact_balanced_min_cut(small_model, EPS).boundary
        check_result(small_model, res, EPS)

    def test_restarts_validated(self, k4_model):
        with pytest.raises(ValueError):
            randomized_search(k4_model, EPS, restarts=0)


def test_find_cut_dispatch(small_model):
    assert find_cut(small_model, EPS, "exact").method == EXACT
    assert find_cut(small_model, EPS, "spectral").method == SPECTRAL_SWEEP
    assert find_cut(small_model, EPS, "local").method == LOCAL_SEARCH
    assert find_cut(small_model, EPS, "random", restarts=3).method == RANDOM_RESTART
    with pytest.raises(ValueError):
        find_cut(small_model, EPS, "annealing")


def test_serialized_block(k4_model):
    text = exact_balanced_min_cut(k4_model, EPS).to_text()
    assert text == (
        "method=EXACT\n"
        f"area={3 * k4_model.params.cut_disc_area!r}\n"
        "size=1\n"
        "membership=0001\n"
        "evaluations=14\n"
    )
