"""
Normalized Adjacency Spectra
D^-1/2 A D^-1/2, second eigenvalues, diagonal perturbations and exact conductance
"""
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from ..graphs.models import Graph
from ..services.config_service import config_service
from ..utils.errors import (
    BudgetExceededError, IsolatedNodeError, InvalidParameterError, SpectralError,
)

SYMMETRY_TOLERANCE = 1e-12
WEYL_SLACK = 1e-9


@dataclass
class NormalizedMatrix:
    """Symmetric normalized adjacency of order n"""
    order: int
    entries: np.ndarray

    def __post_init__(self):
        if self.entries.shape != (self.order, self.order):
            raise InvalidParameterError(f"entries must be {self.order}x{self.order}")
        if not np.allclose(self.entries, self.entries.T, rtol=0.0, atol=SYMMETRY_TOLERANCE):
            raise SpectralError("normalized matrix is not symmetric")


@dataclass
class DiagonalPerturbation:
    """Diagonal E with 0 <= E_ii <= epsilon < 1"""
    entries: np.ndarray
    epsilon: float

    def __post_init__(self):
        self.entries = np.asarray(self.entries, dtype=float)
        if not 0.0 <= self.epsilon < 1.0:
            raise InvalidParameterError(f"epsilon must lie in [0, 1), got {self.epsilon}")
        if (self.entries < 0).any() or (self.entries > self.epsilon + 1e-15).any():
            raise InvalidParameterError("perturbation entries must lie in [0, epsilon]")


class WeylCheck(NamedTuple):
    lambda2_before: float
    lambda2_after: float
    bound_ok: bool


def normalized_from_matrix(adjacency: np.ndarray) -> NormalizedMatrix:
    """Normalize a nonnegative symmetric matrix by its row sums"""
    adjacency = np.asarray(adjacency, dtype=float)
    degrees = adjacency.sum(axis=1)
    isolated = np.flatnonzero(degrees <= 0)
    if isolated.size:
        raise IsolatedNodeError(int(isolated[0]))
    scale = 1.0 / np.sqrt(degrees)
    entries = adjacency * scale[:, None] * scale[None, :]
    entries = (entries + entries.T) / 2.0
    return NormalizedMatrix(order=len(degrees), entries=entries)


def normalized_adjacency(g: Graph) -> NormalizedMatrix:
    """Ā of g; c self-loops add c to both A_vv and D_vv"""
    return normalized_from_matrix(g.adjacency_matrix())


def eigenvalues(m: NormalizedMatrix) -> np.ndarray:
    """All eigenvalues in ascending order"""
    max_order = config_service.get_int('eigen_max_order')
    if m.order > max_order:
        raise BudgetExceededError(f"dense eigensolve limited to order {max_order}, got {m.order}")
    try:
        return np.linalg.eigvalsh(m.entries)
    except np.linalg.LinAlgError as e:
        raise SpectralError("symmetric eigensolver did not converge",
                            {'order': m.order, 'reason': str(e),
                             'finite': bool(np.isfinite(m.entries).all())})


def lambda2(m: NormalizedMatrix) -> float:
    """Second largest eigenvalue in absolute value"""
    if m.order == 1:
        return 0.0
    magnitudes = np.sort(np.abs(eigenvalues(m)))[::-1]
    return float(min(1.0, magnitudes[1]))


def second_eigenvalue(m: NormalizedMatrix) -> float:
    """Second largest signed eigenvalue"""
    if m.order == 1:
        return 0.0
    return float(eigenvalues(m)[-2])


def regularization_perturbation(g: Graph) -> DiagonalPerturbation:
    """E with E_ii = Δ/deg(v_i) - 1, the perturbation that regularize applies"""
    degrees = g.degrees().astype(float)
    if (degrees == 0).any():
        raise IsolatedNodeError(int(np.flatnonzero(degrees == 0)[0]))
    entries = degrees.max() / degrees - 1.0
    return DiagonalPerturbation(entries=entries, epsilon=float(entries.max()))


def weyl_shift_check(g: Graph, e: DiagonalPerturbation) -> WeylCheck:
    """Compare λ₂ before and after adding D·E to the diagonal against the 6ε bound"""
    if g.has_self_loops:
        raise InvalidParameterError("weyl_shift_check expects a graph without self-loops")
    if len(e.entries) != g.node_count:
        raise InvalidParameterError("perturbation size does not match the graph")
    adjacency = g.adjacency_matrix()
    perturbed = adjacency + np.diag(g.degrees() * e.entries)
    before = lambda2(normalized_from_matrix(adjacency))
    after = lambda2(normalized_from_matrix(perturbed))
    return WeylCheck(before, after, after <= before + 6.0 * e.epsilon + WEYL_SLACK)


def conductance_exact(g: Graph, max_nodes: Optional[int] = None) -> float:
    """min |∂S| / vol(S) over nonempty S with vol(S) <= vol(V)/2, by exhaustive enumeration"""
    n = g.node_count
    max_nodes = max_nodes or config_service.get_int('conductance_max_nodes')
    if n > max_nodes:
        raise BudgetExceededError(f"exact conductance limited to {max_nodes} nodes, got {n}")
    if n < 2:
        raise InvalidParameterError("conductance needs at least two nodes")

    volumes = g.slot_counts().astype(np.int64)
    if (volumes == 0).any():
        raise IsolatedNodeError(int(np.flatnonzero(volumes == 0)[0]))
    total = int(volumes.sum())
    edge_list = list(g.edges())
    us = np.array([u for u, _, _ in edge_list], dtype=np.int64)
    vs = np.array([v for _, v, _ in edge_list], dtype=np.int64)
    weights = np.array([c for _, _, c in edge_list], dtype=np.int64)
    shifts = np.arange(n, dtype=np.int64)

    best = np.inf
    full = (1 << n) - 1
    chunk = 1 << 16
    for start in range(1, full, chunk):
        masks = np.arange(start, min(start + chunk, full), dtype=np.int64)
        bits = (masks[:, None] >> shifts) & 1
        vol = bits @ volumes
        cut = (bits[:, us] ^ bits[:, vs]) @ weights if weights.size else np.zeros(len(masks), dtype=np.int64)
        eligible = 2 * vol <= total
        if eligible.any():
            best = min(best, float((cut[eligible] / vol[eligible]).min()))
    return float(best)
