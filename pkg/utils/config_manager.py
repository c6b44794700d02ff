"""
Configuration manager for nmls.
Handles loading, validating, and accessing configuration settings.
"""

import copy
from typing import Any, Dict, Optional

import yaml

from core.errors import ConfigError, InvalidParameter

DEFAULTS: Dict[str, Dict[str, Any]] = {
    'logging': {
        'level': 'INFO',
        'file': None,
        'max_size': 10,
        'backup_count': 3,
    },
    'linesearch': {
        'alpha0': 1.0,
        'beta': 0.5,
        'rho': 0.5,
        'theta': 2.0,
        'sigma': 'auto',
        'window_M': 10,
        'grad_tol': 0.0,
        'max_iters': 100000,
        'max_backtracks': 60,
        'alpha_max': None,
        'sigma_floor': 1.0e-8,
        'zh_eta': 0.85,
        'curvature_tol': 1.0e-12,
        'descent_tol': 1.0e-12,
    },
    'bench': {
        'methods': ['M', 'NM1', 'NM2', 'NM3', 'NM4'],
        'starts_per_function': 30,
        'budget_simplex_gradients': 100,
        'master_seed': 42,
        'parallelism': 1,
        'charge_gradients': False,
        'keep_traces': False,
        'functions': None,
    },
    'profiles': {
        'tau': 1.0e-7,
        'max_alpha': 100,
    },
}


class ConfigManager:
    """Manages configuration settings for the line-search library and CLI."""

    def __init__(self, config_path: Optional[str] = None):
        """
        Initialize the configuration manager.

        Args:
            config_path: Path to the YAML configuration file. None uses the
                built-in defaults only.
        """
        self.config_path = config_path
        self._config: Dict[str, Any] = {}
        self._load_config()

    def _load_config(self) -> None:
        """Load configuration from the YAML file."""
        raw: Dict[str, Any] = {}
        if self.config_path is not None:
            try:
                with open(self.config_path, 'r', encoding='utf-8') as f:
                    raw = yaml.safe_load(f) or {}
            except FileNotFoundError:
                raise ConfigError(f"Configuration file not found: {self.config_path}")
            except yaml.YAMLError as e:
                raise ConfigError(f"Invalid YAML in config file: {e}")
            if not isinstance(raw, dict):
                raise ConfigError("Configuration root must be a mapping")
        self._config = raw
        self._validate_config()

    def _validate_config(self) -> None:
        """Reject unknown sections and keys, then fill in defaults."""
        unknown_sections = set(self._config) - set(DEFAULTS)
        if unknown_sections:
            raise ConfigError(f"Unknown configuration sections: {sorted(unknown_sections)}")

        for section, section_defaults in DEFAULTS.items():
            values = self._config.get(section) or {}
            if not isinstance(values, dict):
                raise ConfigError(f"Section '{section}' must be a mapping")
            unknown = set(values) - set(section_defaults)
            if unknown:
                raise ConfigError(f"Unknown keys in '{section}': {sorted(unknown)}")
            merged = copy.deepcopy(section_defaults)
            merged.update(values)
            self._config[section] = merged

    def get(self, key: str, default: Any = None) -> Any:
        """
        Get a configuration value using dot notation.

        Args:
            key: Dot-notation key (e.g., 'linesearch.theta')
            default: Default value if key is not found

        Returns:
            The configuration value or default if not found
        """
        value = self._config
        try:
            for k in key.split('.'):
                value = value[k]
            return value
        except (KeyError, TypeError):
            return default

    def line_search_params(self):
        """
        Build LineSearchParams from the 'linesearch' section.

        Raises:
            ConfigError: if a value is out of range
        """
        from core.params import LineSearchParams
        try:
            return LineSearchParams.from_mapping(self._config['linesearch'])
        except (InvalidParameter, TypeError) as e:
            raise ConfigError(f"linesearch: {e}")

    def bench_plan(self):
        """
        Build a BenchPlan from the 'bench' and 'linesearch' sections.

        Raises:
            ConfigError: if a value is out of range
        """
        from core.bench import BenchPlan
        params = self.line_search_params()
        try:
            return BenchPlan.from_mapping(self._config['bench'], params=params)
        except (InvalidParameter, TypeError) as e:
            raise ConfigError(f"bench: {e}")
