"""
Experiment Analysis
Scaling fits, per-n log constants and w.h.p. fractions over experiment records
"""
import math
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence

import numpy as np

from .models import STAGE_BROADCAST, STAGE_PACKING, ExperimentRecord
from ..services.config_service import config_service
from ..utils.errors import InvalidParameterError

DEFAULT_MODEL = "a·log²n + b·logn·k/δ"


class ScalingFit(NamedTuple):
    a: float
    b: float
    residual: float     # ||y - Xβ|| / ||y||


class LogConstantFit(NamedTuple):
    per_n: Dict[int, float]     # median(field) / log2 n
    constant: float             # largest per-n value
    stability: float            # largest / smallest per-n value

    def stable_within(self, factor: float) -> bool:
        return self.stability <= factor


def fit_scaling_arrays(n: Sequence[float], k_over_delta: Sequence[float],
                       rounds: Sequence[float]) -> ScalingFit:
    """Least squares for rounds ≈ a·log2²n + b·log2 n·k/δ"""
    n = np.asarray(n, dtype=float)
    ratio = np.asarray(k_over_delta, dtype=float)
    y = np.asarray(rounds, dtype=float)
    if len(np.unique(n)) < 3:
        raise InvalidParameterError("scaling fit needs at least three distinct n values")
    log_n = np.log2(n)
    design = np.column_stack([log_n ** 2, log_n * ratio])
    if np.linalg.matrix_rank(design) < 2:
        raise InvalidParameterError("scaling fit design matrix is rank deficient")
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    norm = np.linalg.norm(y)
    residual = float(np.linalg.norm(y - design @ coef) / norm) if norm else 0.0
    return ScalingFit(float(coef[0]), float(coef[1]), residual)


def fit_scaling(records: Iterable[ExperimentRecord], model: str = DEFAULT_MODEL) -> ScalingFit:
    if model != DEFAULT_MODEL:
        raise InvalidParameterError(f"unsupported scaling model '{model}'")
    rows = [r for r in records if r.stage == STAGE_BROADCAST and r.ok and r.broadcast_rounds is not None]
    return fit_scaling_arrays([r.n for r in rows], [r.k / r.min_degree for r in rows],
                              [r.broadcast_rounds for r in rows])


def fit_log_constant(records: Iterable[ExperimentRecord], field: str) -> LogConstantFit:
    """Median of a packing field divided by log2 n, for every n present"""
    by_n: Dict[int, List[float]] = {}
    for r in records:
        if r.stage == STAGE_PACKING and r.ok and getattr(r, field) is not None:
            by_n.setdefault(r.n, []).append(float(getattr(r, field)))
    if not by_n:
        raise InvalidParameterError(f"no successful packing records carry '{field}'")
    per_n = {n: float(np.median(values)) / math.log2(n) for n, values in sorted(by_n.items())}
    smallest, largest = min(per_n.values()), max(per_n.values())
    stability = largest / smallest if smallest > 0 else math.inf
    return LogConstantFit(per_n, largest, stability)


def whp_fraction(flags: Iterable[bool]) -> float:
    flags = list(flags)
    if not flags:
        raise InvalidParameterError("w.h.p. fraction of an empty sample")
    return sum(1 for f in flags if f) / len(flags)


def whp_passes(flags: Iterable[bool], threshold: Optional[float] = None) -> bool:
    threshold = config_service.get_float('whp_threshold') if threshold is None else threshold
    return whp_fraction(flags) >= threshold
