# Multi-message broadcast over tree packings
from .models import MessageSet, BroadcastTrace, TRACE_COLUMNS, read_trace_rows
from .pipeline import (
    downcast_single_tree, assign_messages, edge_offsets, broadcast_over_packing,
    naive_bfs_broadcast, lower_bound_rounds, multi_source_reduction,
)

__all__ = [
    'MessageSet', 'BroadcastTrace', 'TRACE_COLUMNS', 'read_trace_rows',
    'downcast_single_tree', 'assign_messages', 'edge_offsets', 'broadcast_over_packing',
    'naive_bfs_broadcast', 'lower_bound_rounds', 'multi_source_reduction',
]
