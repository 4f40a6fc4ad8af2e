# Services module for mcbsim
from .config_service import ConfigService, DEFAULT_CONFIG, config_service

__all__ = ['ConfigService', 'DEFAULT_CONFIG', 'config_service']
