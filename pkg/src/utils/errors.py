"""
Simulator Exceptions
One hierarchy so callers can catch MCBSimError at the command boundary
"""
from typing import List, Optional


class MCBSimError(Exception):
    """Base class for every error raised by the simulator"""


class InvalidParameterError(MCBSimError, ValueError):
    """An argument lies outside its documented domain"""


class ConfigError(MCBSimError):
    """A configuration value or experiment file is malformed"""


class DisconnectedGraphError(MCBSimError):
    """The operation needs a connected graph"""

    def __init__(self, message: str, unreachable: Optional[List[int]] = None):
        super().__init__(message)
        self.unreachable = unreachable or []


class IsolatedNodeError(MCBSimError):
    """A node has zero slots, so the degree matrix is singular"""

    def __init__(self, node: int):
        super().__init__(f"node {node} is isolated")
        self.node = node


class SpectralError(MCBSimError):
    """Eigendecomposition failed"""

    def __init__(self, message: str, diagnostics: Optional[dict] = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class MixingTimeoutError(MCBSimError):
    """The edge walk did not reach the tolerance within t_max steps"""

    def __init__(self, t_max: int, deviation: float, tolerance: float):
        super().__init__(
            f"mixing not reached within t_max={t_max} "
            f"(deviation {deviation:.3e} > tolerance {tolerance:.3e})"
        )
        self.t_max = t_max
        self.deviation = deviation
        self.tolerance = tolerance


class BudgetExceededError(MCBSimError):
    """An exhaustive search was asked to run beyond its size budget"""


class CobraError(MCBSimError):
    """Invalid multi-COBRA configuration or input graph"""


class CoverageError(MCBSimError):
    """Some walks did not cover the graph"""

    def __init__(self, uncovered: List[int]):
        super().__init__(f"{len(uncovered)} walk(s) did not cover the graph: {uncovered[:10]}")
        self.uncovered = uncovered


class InternalConsistencyError(MCBSimError):
    """A construction-guaranteed property was violated"""


class PackingError(MCBSimError):
    """Tree packing input or output is invalid"""


class BroadcastError(MCBSimError):
    """Broadcast input is invalid or a schedule broke CONGEST bandwidth"""


class EmbeddingError(MCBSimError):
    """Embedding could not be completed"""

    def __init__(self, message: str, exhausted: Optional[List[int]] = None):
        super().__init__(message)
        self.exhausted = exhausted or []


class HardnessError(MCBSimError):
    """A gadget construction was given inconsistent input"""
