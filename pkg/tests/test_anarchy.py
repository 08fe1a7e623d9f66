import numpy as np
import pytest
from hypothesis import given, strategies as st

from netgame.anarchy import AnarchyReport, UndefinedRatioError, \
    anarchy_report_degree, anarchy_report_link_bias, communal_utility_change, \
    pareto_targets, price_of_anarchy, summary_table, whatif_remove
from netgame.games import LinkBiasGame
from netgame.solvers import stable_graph_link_bias

from conftest import TABLE_DEGREE, TABLE_EIG_CENTRALITY, TABLE_POA_DIFF, \
    TABLE_UTILITY_CHANGE

nonzero = st.integers(-60, 60).filter(lambda v: v != 0)


@st.composite
def integer_games(draw, min_n=2, max_n=7):
    n = draw(st.integers(min_n, max_n))
    c = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if i != j:
                c[i, j] = draw(nonzero)
    return LinkBiasGame(c)


class TestPriceOfAnarchy:
    def test_complete_example_ratio(self):
        assert price_of_anarchy(1077, 1487, "ratio") == pytest.approx(
            0.724277, abs=1e-6)

    def test_cost_difference(self):
        assert price_of_anarchy(6, 0, "difference", orientation="cost") == 6

    def test_no_anarchy(self):
        assert price_of_anarchy(5, 5, "ratio") == 1
        assert price_of_anarchy(5, 5, "difference") == 0

    def test_ratio_undefined_for_zero_denominator(self):
        with pytest.raises(UndefinedRatioError, match="difference"):
            price_of_anarchy(0, 0, "ratio")

    def test_unknown_mode(self):
        with pytest.raises(ValueError, match="mode"):
            price_of_anarchy(1, 1, "quotient")


class TestCommunalUtilityChange:
    def test_table_values(self, complete_example):
        assert communal_utility_change(complete_example, 9) == 576
        assert communal_utility_change(complete_example, 0) == 178
        assert communal_utility_change(complete_example, 5) == 42

    def test_index_error(self, complete_example):
        with pytest.raises(IndexError):
            communal_utility_change(complete_example, 10)

    @given(integer_games())
    def test_non_negative_and_zero_iff_isolated(self, game):
        stable = stable_graph_link_bias(game).graph
        for i in range(game.n):
            du = communal_utility_change(game, i)
            assert du >= 0
            assert (du == 0) == (stable.degree(i) == 0)

    @given(integer_games())
    def test_total_change_double_counts_stable_value(self, game):
        total = sum(communal_utility_change(game, i) for i in range(game.n))
        assert total == pytest.approx(2 * stable_graph_link_bias(game).objective)


class TestWhatIfRemove:
    def test_remove_vertex_ten(self, complete_example):
        r = whatif_remove(complete_example, 9)
        assert r.report_after.worst_stable_value == 501
        assert r.report_after.best_value == 789
        assert round(r.report_after.poa_ratio, 3) == 0.635

    def test_remove_vertex_one(self, complete_example):
        r = whatif_remove(complete_example, 0)
        assert r.report_after.worst_stable_value == 899
        assert r.report_after.best_value == 1220
        assert round(r.report_after.poa_ratio, 4) == 0.7369

    def test_removing_isolated_vertex_changes_nothing(self):
        # vertex 2 has no mutually beneficial link and no beneficial pair sum
        game = LinkBiasGame([[0, -3, 5], [-4, 0, 9], [5, 9, 0]])
        r = whatif_remove(game, 2)
        assert r.communal_utility_change == 0
        assert r.report_after.worst_stable_value == \
            r.report_before.worst_stable_value

    def test_errors(self, complete_example):
        with pytest.raises(IndexError):
            whatif_remove(complete_example, 10)
        with pytest.raises(ValueError, match="at least 2"):
            whatif_remove(LinkBiasGame([[0.0]]), 0)

    @given(integer_games())
    def test_consistency_law(self, game):
        for i in range(game.n):
            r = whatif_remove(game, i)
            assert r.report_after.worst_stable_value == pytest.approx(
                r.report_before.worst_stable_value - r.communal_utility_change)


class TestSummaryTable:
    def test_full_table_reproduction(self, complete_example):
        rows = summary_table(complete_example)
        assert tuple(r.communal_utility_change for r in rows) == TABLE_UTILITY_CHANGE
        assert tuple(r.degree for r in rows) == TABLE_DEGREE
        for row, eig, poa in zip(rows, TABLE_EIG_CENTRALITY, TABLE_POA_DIFF):
            assert row.eig_centrality == pytest.approx(eig, abs=1e-3)
            assert row.delta_poa_ratio == pytest.approx(poa, abs=1e-6)

    def test_two_player_game(self):
        game = LinkBiasGame([[0, -2], [-3, 0]])
        rows = summary_table(game)
        assert [r.communal_utility_change for r in rows] == [5, 5]

    def test_rows_in_vertex_order(self, complete_example):
        rows = summary_table(complete_example)
        assert [r.removed for r in rows] == list(range(10))


class TestParetoTargets:
    def test_vertex_ten_is_ideal(self, complete_example):
        rows = summary_table(complete_example)
        targets = pareto_targets(rows)
        assert 9 in targets

    def test_vertex_three_when_ten_unavailable(self, complete_example):
        rows = [r for r in summary_table(complete_example) if r.removed != 9]
        assert 2 in pareto_targets(rows)

    def test_single_row(self, complete_example):
        row = whatif_remove(complete_example, 3)
        assert pareto_targets([row]) == {3}

    def test_empty_table_rejected(self):
        with pytest.raises(ValueError, match="non-empty"):
            pareto_targets([])

    @given(integer_games())
    def test_nonempty_and_mutually_nondominating(self, game):
        rows = summary_table(game)
        targets = pareto_targets(rows)
        assert targets
        by_id = {r.removed: r for r in rows}

        def coords(r):
            delta = -np.inf if r.delta_poa_ratio is None else r.delta_poa_ratio
            return r.communal_utility_change, delta

        chosen = [coords(by_id[t]) for t in targets]
        for au, ad in chosen:
            for bu, bd in chosen:
                dominates = (bu >= au and bd >= ad and (bu > au or bd > ad))
                assert not dominates


class TestAnarchyReports:
    def test_link_bias_report(self, complete_example):
        rep = anarchy_report_link_bias(complete_example)
        assert rep.worst_stable_value == 1077
        assert rep.best_value == 1487
        assert rep.poa_difference == 410
        assert rep.poa_ratio == pytest.approx(1077 / 1487)
        assert rep.orientation == "reward"

    def test_degree_report_uniform_five(self):
        rep = anarchy_report_degree((5,) * 10)
        assert rep.orientation == "cost"
        assert rep.best_value == 0
        assert rep.worst_stable_value == 8
        assert rep.poa_difference == 8
        assert rep.poa_ratio is None

    def test_degree_report_trivial(self):
        assert anarchy_report_degree((0, 0, 0)).poa_difference == 0

    def test_degree_report_three_ones(self):
        rep = anarchy_report_degree((1, 1, 1))
        assert rep.worst_stable_value == 1
        assert rep.best_value == 1
        assert rep.poa_difference == 0
        assert rep.poa_ratio == 1

    def test_report_validation(self):
        with pytest.raises(ValueError, match="non-negative"):
            AnarchyReport(5, 1, -4, None, "reward")
        with pytest.raises(ValueError, match="orientation"):
            AnarchyReport(1, 1, 0, None, "sideways")


def test_utility_change_correlates_with_degree():
    """Rank correlation between stable degree and utility change is
    positive on average over random games."""
    rng = np.random.default_rng(21)
    correlations = []
    for _ in range(40):
        n = int(rng.integers(5, 9))
        c = rng.integers(-60, 60, size=(n, n)).astype(float)
        np.fill_diagonal(c, 0)
        game = LinkBiasGame(c)
        stable = stable_graph_link_bias(game).graph
        degrees = np.array([stable.degree(i) for i in range(n)], dtype=float)
        changes = np.array([communal_utility_change(game, i) for i in range(n)])
        if np.ptp(degrees) == 0 or np.ptp(changes) == 0:
            continue
        rd = np.argsort(np.argsort(degrees))
        rc = np.argsort(np.argsort(changes))
        correlations.append(np.corrcoef(rd, rc)[0, 1])
    assert np.mean(correlations) > 0.3
