# Tree packing built from multi-COBRA subgraphs
from .tree_packing import (
    TreePacking, PackingCheck, CheckResult, PackingReport, build_tree_packing,
    verify_packing, tree_diameter, packing_weight, depths_from_parents,
)

__all__ = [
    'TreePacking', 'PackingCheck', 'CheckResult', 'PackingReport', 'build_tree_packing',
    'verify_packing', 'tree_diameter', 'packing_weight', 'depths_from_parents',
]
