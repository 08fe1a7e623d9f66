"""Network formation games: stable graphs, price of anarchy, what-ifs."""

from .anarchy import AnarchyReport, WhatIfResult, anarchy_report_degree, \
    anarchy_report_link_bias, communal_utility_change, pareto_targets, \
    price_of_anarchy, summary_table, whatif_remove
from .games import DegreeSequenceGame, LinkBiasGame, StrategyMatrix, \
    communal_value, graph_from_strategies, is_pairwise_stable_degree, \
    is_pairwise_stable_link_bias, payoff_degree, payoff_link_bias, \
    strategies_from_costs
from .graphs import Graph, degree_sequence, eigenvector_centrality, \
    is_graphical, l1_distance, realize_graphical
from .simulate import SimulationBatch, batch_statistics, simulate_batch, \
    simulate_once
from .solvers import SolveResult, best_graph_degree, best_graph_link_bias, \
    brute_force_best_graph, brute_force_worst_stable, construct_cost_matrix, \
    stable_graph_link_bias, worst_stable_degree

__all__ = [
    "AnarchyReport", "WhatIfResult", "anarchy_report_degree",
    "anarchy_report_link_bias", "communal_utility_change", "pareto_targets",
    "price_of_anarchy", "summary_table", "whatif_remove",
    "DegreeSequenceGame", "LinkBiasGame", "StrategyMatrix", "communal_value",
    "graph_from_strategies", "is_pairwise_stable_degree",
    "is_pairwise_stable_link_bias", "payoff_degree", "payoff_link_bias",
    "strategies_from_costs",
    "Graph", "degree_sequence", "eigenvector_centrality", "is_graphical",
    "l1_distance", "realize_graphical",
    "SimulationBatch", "batch_statistics", "simulate_batch", "simulate_once",
    "SolveResult", "best_graph_degree", "best_graph_link_bias",
    "brute_force_best_graph", "brute_force_worst_stable",
    "construct_cost_matrix", "stable_graph_link_bias", "worst_stable_degree",
]

__version__ = "0.1.0"
