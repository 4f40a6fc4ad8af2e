"""
Configuration Service
String-valued defaults overridable through MCBSIM_<KEY> environment variables
"""
import os
from typing import Dict, Optional

from dotenv import load_dotenv

from ..utils.errors import ConfigError

load_dotenv()

# Simulator constants. Values are strings, parsed by the typed getters.
DEFAULT_CONFIG: Dict[str, str] = {
    'c_p': '20',                          # p = c_p * ln n / n for random-graph suites
    'cover_constant': '8',                # phases = ceil(cover_constant * log2 n)
    'mixing_tolerance_exponent': '2',     # tolerance = n^-exponent
    'mixing_t_max_factor': '10',          # t_max = factor * n
    'retry_cap_factor': '10',             # retry cap = ceil(factor * log2 n)
    'c_est': '1',                         # charge for the mixing-time estimator
    'whp_threshold': '0.95',
    'max_retries': '3',
    'seed_increment': '1',
    'connect_attempts': '10',
    'degree_log_density': '300',          # p(n-1) = density * ln n in the degree concentration check
    'degree_check_draws': '100000',
    'conductance_max_nodes': '22',
    'mixing_max_states': '20000',
    'eigen_max_order': '5000',
    'set_splitting_max_elements': '20',
    'decide_max_elements': '8',
    'saturation_round_cap': '256',
    'flood_fallback': 'false',
    'tau_mode': 'bound',
    'results_db_path': 'mcbsim_results.db',
    'log_level': 'INFO',
}

_TRUE = {'1', 'true', 'yes', 'on'}
_FALSE = {'0', 'false', 'no', 'off'}


class ConfigService:
    """Resolves configuration values: explicit override, environment, then default"""

    def __init__(self, defaults: Optional[Dict[str, str]] = None):
        self.defaults = dict(defaults or DEFAULT_CONFIG)
        self.overrides: Dict[str, str] = {}

    def get_config(self, key: str) -> Optional[str]:
        """Get the raw string value of a key"""
        if key in self.overrides:
            return self.overrides[key]
        env_value = os.getenv(f"MCBSIM_{key.upper()}")
        if env_value is not None and env_value != '':
            return env_value
        return self.defaults.get(key)

    def set_config(self, key: str, value) -> bool:
        """Override a key for the lifetime of this process"""
        if key not in self.defaults:
            raise ConfigError(f"unknown configuration key '{key}'")
        self.overrides[key] = str(value)
        return True

    def reset(self):
        """Drop every in-process override"""
        self.overrides.clear()

    def _require(self, key: str) -> str:
        value = self.get_config(key)
        if value is None:
            raise ConfigError(f"unknown configuration key '{key}'")
        return value

    def get_str(self, key: str) -> str:
        return self._require(key)

    def get_int(self, key: str) -> int:
        value = self._require(key)
        try:
            return int(value)
        except ValueError:
            raise ConfigError(f"configuration key '{key}' expects an integer, got '{value}'")

    def get_float(self, key: str) -> float:
        value = self._require(key)
        try:
            return float(value)
        except ValueError:
            raise ConfigError(f"configuration key '{key}' expects a number, got '{value}'")

    def get_bool(self, key: str) -> bool:
        value = self._require(key).strip().lower()
        if value in _TRUE:
            return True
        if value in _FALSE:
            return False
        raise ConfigError(f"configuration key '{key}' expects a boolean, got '{value}'")

    def as_dict(self) -> Dict[str, str]:
        """Effective configuration, for the status command"""
        return {key: self.get_config(key) for key in sorted(self.defaults)}


# Global configuration service instance
config_service = ConfigService()
