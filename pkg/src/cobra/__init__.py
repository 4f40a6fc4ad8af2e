# Multi-COBRA walks: configuration, engine and analysis
from .models import CobraConfig, MultiCobraAssignment, SubgraphView
from .engine import (
    SlotSends, SlotTable, build_slot_table, dispatch_holder, dispatch_slots, run_multi_cobra,
)
from .analysis import (
    WalkCoverage, UniformityStats, coverage_report, edge_weight_histogram,
    check_weight_bound, subgraph_diameter, marginal_uniformity_test,
)

__all__ = [
    'CobraConfig', 'MultiCobraAssignment', 'SubgraphView', 'SlotSends', 'SlotTable',
    'build_slot_table', 'dispatch_holder', 'dispatch_slots', 'run_multi_cobra', 'WalkCoverage',
    'UniformityStats', 'coverage_report', 'edge_weight_histogram', 'check_weight_bound',
    'subgraph_diameter', 'marginal_uniformity_test',
]
