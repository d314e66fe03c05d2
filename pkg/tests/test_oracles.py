import math

import pytest

from srdtree import (
    DemandOutOfRange,
    EdgeAttrs,
    InstanceTooLarge,
    UnknownProblemTag,
    build_tree,
    srd,
)
from srdtree.oracles import (
    brute_bh,
    brute_mcsdiptc_inf,
    brute_sdiptc_inf,
    grid_sdipt_inf,
    parametric_mcsdipt_inf,
    witness_feasible,
)


def unit_path(n):
    edges = [(i, "s" if i == 1 else f"v{i-1}", f"v{i}") for i in range(1, n + 1)]
    attrs = EdgeAttrs(
        w={e: 1.0 for e in range(1, n + 1)},
        u={e: 2.0 for e in range(1, n + 1)},
        c={e: 1.0 for e in range(1, n + 1)},
    )
    return build_tree(edges, attrs), attrs


def unit_star(n):
    edges = [(i, "s", f"t{i}") for i in range(1, n + 1)]
    attrs = EdgeAttrs(
        w={e: 0.0 for e in range(1, n + 1)},
        u={e: 1.0 for e in range(1, n + 1)},
        c={e: 1.0 for e in range(1, n + 1)},
    )
    return build_tree(edges, attrs), attrs


class TestGridBudgetMax:
    def test_broom(self, broom):
        tree, attrs = broom
        got = grid_sdipt_inf(tree, attrs, 2.0)
        assert got.objective == pytest.approx(11.0, abs=1e-9)
        assert got.witness_set == frozenset({1, 2, 3})

    def test_zero_budget(self, broom):
        tree, attrs = broom
        got = grid_sdipt_inf(tree, attrs, 0.0)
        assert got.objective == pytest.approx(4.0)
        assert got.witness_set == frozenset()


class TestBruteBudgetMaxCapped:
    def test_broom_single_change(self, broom):
        tree, attrs = broom
        got = brute_sdiptc_inf(tree, attrs, 2.0, 1)
        assert got.objective == pytest.approx(8.0)
        assert got.witness_set == frozenset({1})

    def test_broom_uncapped(self, broom):
        tree, attrs = broom
        got = brute_sdiptc_inf(tree, attrs, 2.0, 3)
        assert got.objective == pytest.approx(11.0)

    def test_size_guard(self):
        tree, attrs = unit_path(21)
        with pytest.raises(InstanceTooLarge):
            brute_sdiptc_inf(tree, attrs, 1.0, 2)


class TestParametricDemandMin:
    def test_broom_fractional_level(self, broom):
        tree, attrs = broom
        got = parametric_mcsdipt_inf(tree, attrs, 8.0)
        assert got.objective == pytest.approx(8.0 / 7.0, abs=1e-9)
        assert srd(tree, got.witness_weights) == pytest.approx(8.0, abs=1e-6)

    def test_demand_bounds(self, broom):
        tree, attrs = broom
        with pytest.raises(DemandOutOfRange):
            parametric_mcsdipt_inf(tree, attrs, 4.0)
        with pytest.raises(DemandOutOfRange):
            parametric_mcsdipt_inf(tree, attrs, 14.0)


class TestBruteDemandMinCapped:
    def test_broom_single_change(self, broom):
        tree, attrs = broom
        got = brute_mcsdiptc_inf(tree, attrs, 7.0, 1)
        assert got.feasible
        assert got.objective == pytest.approx(1.5, abs=1e-9)
        assert got.witness_set == frozenset({1})

    def test_infeasible(self):
        tree, attrs = unit_star(3)
        got = brute_mcsdiptc_inf(tree, attrs, 2.0, 1)
        assert not got.feasible
        assert got.objective == math.inf

    def test_trivial_demand(self, broom):
        tree, attrs = broom
        got = brute_mcsdiptc_inf(tree, attrs, 3.0, 1)
        assert got.objective == 0
        assert got.witness_set == frozenset()

    def test_guards(self):
        tree, attrs = unit_path(13)
        with pytest.raises(InstanceTooLarge):
            brute_mcsdiptc_inf(tree, attrs, 14.0, 1)
        small_tree, small_attrs = unit_path(4)
        with pytest.raises(InstanceTooLarge):
            brute_mcsdiptc_inf(small_tree, small_attrs, 5.0, 5)


class TestBruteBottleneck:
    def test_budget_max(self, broom):
        tree, attrs = broom
        got = brute_bh(tree, attrs, "sdipt", budget=1.0)
        assert got.objective == pytest.approx(12.0)
        assert got.witness_set == frozenset({1, 3})

    def test_budget_max_capped(self, broom):
        tree, attrs = broom
        got = brute_bh(tree, attrs, "sdiptc", budget=2.0, max_changes=1)
        assert got.objective == pytest.approx(8.0)
        assert got.witness_set == frozenset({1})

    def test_demand_min(self, broom):
        tree, attrs = broom
        got = brute_bh(tree, attrs, "mcsdipt", demand=9.0)
        assert got.objective == pytest.approx(1.0)

    def test_demand_min_capped(self, star4):
        tree, attrs = star4
        got = brute_bh(tree, attrs, "mcsdiptc", demand=2.0, max_changes=2)
        assert got.objective == pytest.approx(2.0)
        assert got.witness_set == frozenset({3, 4})

    def test_demand_min_capped_infeasible(self, broom):
        tree, attrs = broom
        got = brute_bh(tree, attrs, "mcsdiptc", demand=9.0, max_changes=1)
        assert not got.feasible

    def test_trivial_demand(self, broom):
        tree, attrs = broom
        got = brute_bh(tree, attrs, "mcsdipt", demand=3.0)
        assert got.objective == 0

    def test_unknown_tag(self, broom):
        tree, attrs = broom
        with pytest.raises(UnknownProblemTag):
            brute_bh(tree, attrs, "sdipt_plus", budget=1.0)

    def test_size_guard(self):
        tree, attrs = unit_path(13)
        with pytest.raises(InstanceTooLarge):
            brute_bh(tree, attrs, "sdipt", budget=1.0)


class TestWitnessFeasible:
    def test_accepts_in_box_vector(self, broom):
        tree, attrs = broom
        weights = {1: 3.0, 2: 1.0, 3: 1.0}
        assert witness_feasible(tree, attrs, weights, budget=2.0, max_changes=1)

    def test_rejects_budget_overrun(self, broom):
        tree, attrs = broom
        weights = {1: 3.0, 2: 1.0, 3: 1.0}
        assert not witness_feasible(tree, attrs, weights, budget=1.0)

    def test_rejects_box_violation(self, broom):
        tree, attrs = broom
        weights = {1: 3.5, 2: 1.0, 3: 1.0}
        assert not witness_feasible(tree, attrs, weights, budget=100.0)

    def test_rejects_too_many_changes(self, broom):
        tree, attrs = broom
        weights = {1: 3.0, 2: 2.0, 3: 1.0}
        assert not witness_feasible(tree, attrs, weights, budget=9.0, max_changes=1)

    def test_rejects_unmet_demand(self, broom):
        tree, attrs = broom
        weights = {1: 3.0, 2: 1.0, 3: 1.0}
        assert not witness_feasible(tree, attrs, weights, demand=11.0)

    def test_bottleneck_price_reading(self, broom):
        tree, attrs = broom
        weights = {1: 1.0, 2: 1.1, 3: 1.0}
        # under the dearest-edge reading a tiny raise still costs c(e)
        assert not witness_feasible(tree, attrs, weights, budget=1.0, norm="bh")
        assert witness_feasible(tree, attrs, weights, budget=2.0, norm="bh")
