"""Configuration service: overrides, environment and typed getters"""
import pytest

from src.services.config_service import DEFAULT_CONFIG, ConfigService, config_service
from src.utils.errors import ConfigError


def test_defaults():
    assert config_service.get_int('max_retries') == 3
    assert config_service.get_float('whp_threshold') == pytest.approx(0.95)
    assert config_service.get_bool('flood_fallback') is False
    assert config_service.get_str('tau_mode') == 'bound'


def test_environment_overrides_default(monkeypatch):
    monkeypatch.setenv('MCBSIM_MAX_RETRIES', '7')
    monkeypatch.setenv('MCBSIM_FLOOD_FALLBACK', 'yes')
    assert config_service.get_int('max_retries') == 7
    assert config_service.get_bool('flood_fallback') is True


def test_empty_environment_value_is_ignored(monkeypatch):
    monkeypatch.setenv('MCBSIM_COVER_CONSTANT', '')
    assert config_service.get_float('cover_constant') == 8.0


def test_explicit_override_wins(monkeypatch):
    monkeypatch.setenv('MCBSIM_C_P', '30')
    config_service.set_config('c_p', 12.5)
    assert config_service.get_float('c_p') == 12.5
    config_service.reset()
    assert config_service.get_float('c_p') == 30.0


def test_unknown_key():
    with pytest.raises(ConfigError):
        config_service.set_config('discord_token', 'x')
    with pytest.raises(ConfigError):
        config_service.get_str('discord_token')


@pytest.mark.parametrize('getter, key', [
    ('get_int', 'tau_mode'),
    ('get_float', 'log_level'),
    ('get_bool', 'c_p'),
])
def test_typed_getters_reject_bad_values(getter, key):
    with pytest.raises(ConfigError, match=key):
        getattr(config_service, getter)(key)


def test_as_dict_lists_every_key():
    service = ConfigService()
    service.set_config('log_level', 'DEBUG')
    effective = service.as_dict()
    assert list(effective) == sorted(DEFAULT_CONFIG)
    assert effective['log_level'] == 'DEBUG'
