# Bandwidth gadgets, the set-splitting reduction and exact small-instance oracles
from .models import (
    BandwidthGraph, ReductionInstance, ReductionGraph, SaturationResult, TransformedGraph,
)
from .bandwidth import (
    bandwidth_to_congest, bandwidth_to_congest_with_cliques, global_min_cut,
    verify_mincut_sandwich, verify_diameter_sandwich,
)
from .flow import (
    time_expanded_saturation, verify_flow_certificate, per_sink_round_bounds, opt_sandwich_check,
)
from .instances import (
    build_sqrtk_instance, build_setsplit_reduction, random_bandwidth_graph,
    random_reduction_instance, mincut,
)
from .decide import (
    simulate_bandwidth_schedule, forward_layered, forwarding_schedule, targets_saturated,
    find_saturating_split, decide_saturation_round4, brute_force_set_splitting,
)
from .layered import (
    LayeredCheck, layered_transform, lift_layered_schedule, simulate_unit_schedule,
    check_layered_equivalence,
)

__all__ = [
    'BandwidthGraph', 'ReductionInstance', 'ReductionGraph', 'SaturationResult', 'TransformedGraph',
    'bandwidth_to_congest', 'bandwidth_to_congest_with_cliques', 'global_min_cut',
    'verify_mincut_sandwich', 'verify_diameter_sandwich',
    'time_expanded_saturation', 'verify_flow_certificate', 'per_sink_round_bounds', 'opt_sandwich_check',
    'build_sqrtk_instance', 'build_setsplit_reduction', 'random_bandwidth_graph',
    'random_reduction_instance', 'mincut',
    'simulate_bandwidth_schedule', 'forward_layered', 'forwarding_schedule', 'targets_saturated',
    'find_saturating_split', 'decide_saturation_round4', 'brute_force_set_splitting',
    'LayeredCheck', 'layered_transform', 'lift_layered_schedule', 'simulate_unit_schedule',
    'check_layered_equivalence',
]
