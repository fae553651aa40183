import copy
import os
from typing import Any, Dict, Optional

import yaml

CONFIG_FILENAME = "config.yaml"
TEMPLATE_FILENAME = "config.yaml.template"
CONFIG_ENV_VAR = "SHUTTERPROP_CONFIG"

DEFAULT_CONFIG: Dict[str, Any] = {
    'logging': {
        'log_level': 'INFO',
        'log_file': 'shutterprop.log',
    },
    'numerics': {
        'gauss_order': 12,
        'quad_tol': 1e-9,
        'max_doublings': 8,
    },
    'experiments': {
        'default_n_x': 64,
    },
}

# Set by load_config so setup_logging can report it once handlers exist.
load_problem: Optional[str] = None


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(path: Optional[str] = None) -> Dict[str, Any]:
    """Loads the application configuration from config.yaml.

    Looks for ``$SHUTTERPROP_CONFIG`` first, then config.yaml in the project
    root. A missing or unreadable file is not fatal: the built-in defaults
    are returned and the problem is kept in ``load_problem`` so it can be
    logged once logging is configured.

    Returns:
        The configuration dictionary, defaults merged under the file's values.
    """
    global config, load_problem
    load_problem = None
    if path is None:
        path = os.environ.get(CONFIG_ENV_VAR) or os.path.join(
            os.path.dirname(__file__), '..', CONFIG_FILENAME)

    loaded: Dict[str, Any] = {}
    if not os.path.exists(path):
        load_problem = (f"Configuration file '{path}' not found; using defaults. "
                        f"Copy '{TEMPLATE_FILENAME}' to '{CONFIG_FILENAME}' to customise.")
    else:
        try:
            with open(path, 'r') as f:
                loaded = yaml.safe_load(f) or {}
            if not isinstance(loaded, dict):
                load_problem = f"Configuration file '{path}' is not a mapping; using defaults."
                loaded = {}
        except yaml.YAMLError as e:
            load_problem = f"Error parsing configuration file '{path}': {e}; using defaults."
            loaded = {}

    config = _merge(DEFAULT_CONFIG, loaded)
    return config


# Load config once on import
config = load_config()


def get_config() -> Dict[str, Any]:
    """Returns the loaded configuration dictionary."""
    return config


def numerics_setting(key: str) -> Any:
    """Returns one entry of the ``numerics`` section, falling back to the default."""
    return get_config().get('numerics', {}).get(key, DEFAULT_CONFIG['numerics'][key])
