# Graph core: representation, generators, traversal and file format
from .models import Graph, BfsTree
from .traversal import bfs, bfs_over_lists, diameter, distance_matrix, eccentricity, is_connected
from .generator import (
    DegreeStats, gen_erdos_renyi, sample_connected_erdos_renyi, er_probability,
    complete_graph, path_graph, cycle_graph, star_graph, barbell_graph,
    circulant_graph, ring_of_cliques, regularize, degree_stats,
)
from .io import format_edge_list, parse_edge_list, read_edge_list, write_edge_list

__all__ = [
    'Graph', 'BfsTree', 'bfs', 'bfs_over_lists', 'diameter', 'distance_matrix',
    'eccentricity', 'is_connected', 'DegreeStats', 'gen_erdos_renyi',
    'sample_connected_erdos_renyi', 'er_probability', 'complete_graph', 'path_graph',
    'cycle_graph', 'star_graph', 'barbell_graph', 'circulant_graph', 'ring_of_cliques',
    'regularize', 'degree_stats', 'format_edge_list', 'parse_edge_list',
    'read_edge_list', 'write_edge_list',
]
