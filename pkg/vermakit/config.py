"""
layered TOML configuration

the bundled defaults are read first, then every file named in the
comma-separated VERMAKIT_CONFIG_PATH variable is merged on top
"""

import logging
import os
from typing import Any

import toml
from cloudpathlib import AnyPath

from vermakit.errors import InputError

DEFAULT_CONFIG = os.path.join(os.path.dirname(__file__), 'vermakit_conf.toml')
CONFIG_PATH_ENV = 'VERMAKIT_CONFIG_PATH'
DEGREE_CAP_ENV = 'VERMAKIT_DEGREE_CAP'

_config: dict[str, Any] | None = None


def _deep_merge(base: dict[str, Any], update: dict[str, Any]) -> dict[str, Any]:
    merged = dict(base)
    for key, value in update.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def _read_toml(path: str) -> dict[str, Any]:
    with AnyPath(path).open() as handle:
        return toml.load(handle)


def get_config() -> dict[str, Any]:
    """
    returns the merged configuration, loading it on first use
    """
    global _config
    if _config is None:
        config = _read_toml(DEFAULT_CONFIG)
        for layer in os.getenv(CONFIG_PATH_ENV, '').split(','):
            if layer.strip():
                logging.info(f'Merging config layer {layer.strip()}')
                config = _deep_merge(config, _read_toml(layer.strip()))
        _config = config
    return _config


def reset_config():
    """drops the cached configuration, the next get_config call reloads"""
    global _config
    _config = None


def degree_cap(override: int | None = None) -> int:
    """
    the largest degree a CLI computation may request

    Parameters
    ----------
    override : explicit value from the command line, wins over everything

    Returns
    -------
    the cap, never above the configured hard ceiling
    """
    engine = get_config()['engine']
    if override is not None:
        cap = override
    elif os.getenv(DEGREE_CAP_ENV):
        try:
            cap = int(os.environ[DEGREE_CAP_ENV])
        except ValueError as err:
            raise InputError(
                f'{DEGREE_CAP_ENV} must be an integer, got {os.environ[DEGREE_CAP_ENV]!r}'
            ) from err
    else:
        cap = int(engine['degree_cap'])
    if cap < 0:
        raise InputError(f'degree cap must be non-negative, got {cap}')
    return min(cap, int(engine['max_degree']))
