"""
Spectral Report
λ₂, gap, mixing-time bounds and (for small graphs) conductance in one record
"""
from dataclasses import asdict, dataclass
from typing import Optional

from .matrices import conductance_exact, lambda2, normalized_adjacency, second_eigenvalue
from .mixing import mixing_bounds_from_gap, mixing_time_empirical
from ..graphs.models import Graph
from ..services.config_service import config_service
from ..utils.log import get_logger

logger = get_logger('spectral')


@dataclass
class SpectralReport:
    """Spectral summary of a graph.

    lambda2 is the second largest absolute eigenvalue of Ā. The mixing bounds
    use lazy_lambda = (1 + μ₂)/2 with μ₂ the second largest signed eigenvalue,
    the second eigenvalue of the lazy walk the simulator actually runs.
    """
    n: int
    lambda2: float
    spectral_gap: float
    signed_lambda2: float
    lazy_lambda: float
    mixing_lower: float
    mixing_upper: float
    conductance: Optional[float] = None
    mixing_empirical: Optional[int] = None

    def to_dict(self) -> dict:
        return asdict(self)


def spectral_report(g: Graph, mixing_tolerance: Optional[float] = None,
                    empirical: bool = False) -> SpectralReport:
    matrix = normalized_adjacency(g)
    lam = lambda2(matrix)
    signed = second_eigenvalue(matrix)
    lazy = (1.0 + signed) / 2.0
    lower, upper = mixing_bounds_from_gap(lazy, g.node_count)

    conductance = None
    if g.node_count <= config_service.get_int('conductance_max_nodes') and g.node_count >= 2:
        conductance = conductance_exact(g)
    else:
        logger.info(f"conductance skipped for n={g.node_count}")

    mixing = None
    if empirical:
        mixing = mixing_time_empirical(g.without_self_loops(), mixing_tolerance)

    return SpectralReport(
        n=g.node_count, lambda2=lam, spectral_gap=1.0 - lam, signed_lambda2=signed,
        lazy_lambda=lazy, mixing_lower=lower, mixing_upper=upper,
        conductance=conductance, mixing_empirical=mixing,
    )
