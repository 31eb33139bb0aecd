import copy
import json
import os
from pathlib import Path
from typing import Any, Dict, Optional

from dotenv import load_dotenv

# Subsets live in a machine word.
HARD_MAX_N = 62

DEFAULT_CONFIG: Dict[str, Dict[str, Any]] = {
    'limits': {
        'max_n': HARD_MAX_N,
    },
    'sampling': {
        'seed': 20240607,
        'max_weight': 12,
        'max_attempts': 4000,
    },
    'compute': {
        'threads': 1,
    },
    'logging': {
        'level': 'WARNING',
        'log_dir': None,
    },
}


class ConfigManager:
    """Manages configuration settings for polygon-space computations."""

    DEFAULT_CONFIG_PATH = "config.json"
    REQUIRED_FIELDS = {
        'limits': ['max_n'],
        'sampling': ['seed', 'max_weight', 'max_attempts'],
        'compute': ['threads'],
        'logging': ['level', 'log_dir'],
    }

    def __init__(self, config_path: Optional[str] = None):
        """
        Initialize the configuration manager.

        Args:
            config_path: Path to a JSON configuration file (optional). Without
                one, ``POLYSPACE_CONFIG`` is consulted, then the built-in defaults.
        """
        load_dotenv()
        self.config_path = config_path or os.getenv("POLYSPACE_CONFIG")
        self.config = self._load_config()
        self._validate_config()
        self._apply_environment()

    def _load_config(self) -> Dict[str, Any]:
        """
        Load configuration from JSON and merge it over the defaults.

        Raises:
            FileNotFoundError: If an explicitly named config file doesn't exist
            json.JSONDecodeError: If the config file is not valid JSON
        """
        config = copy.deepcopy(DEFAULT_CONFIG)
        if self.config_path is None:
            return config

        if not os.path.exists(self.config_path):
            raise FileNotFoundError(
                f"Configuration file not found at {self.config_path}. "
                "Copy config.sample.json to config.json or omit --config."
            )

        with open(self.config_path, 'r') as f:
            loaded = json.load(f)

        for section, values in loaded.items():
            if not isinstance(values, dict):
                raise ValueError(f"Config section '{section}' must be an object")
            config.setdefault(section, {}).update(values)
        return config

    def _validate_config(self) -> None:
        """
        Validate that all required configuration fields are present and sane.

        Raises:
            ValueError: If any required field is missing or out of range
        """
        for section, fields in self.REQUIRED_FIELDS.items():
            if section not in self.config:
                raise ValueError(f"Missing required config section: {section}")

            for field in fields:
                if field not in self.config[section]:
                    raise ValueError(f"Missing required config field: {section}.{field}")

        self._check_max_n(self.config['limits']['max_n'], "limits.max_n")
        if int(self.config['compute']['threads']) < 1:
            raise ValueError("compute.threads must be at least 1")

    def _apply_environment(self) -> None:
        override = os.getenv("POLYSPACE_MAX_N")
        if override:
            try:
                value = int(override)
            except ValueError:
                raise ValueError(f"POLYSPACE_MAX_N must be an integer, got {override!r}")
            self.config['limits']['max_n'] = self._check_max_n(value, "POLYSPACE_MAX_N")

    @staticmethod
    def _check_max_n(value: Any, source: str) -> int:
        value = int(value)
        if not 3 <= value <= HARD_MAX_N:
            raise ValueError(f"{source} must lie in 3..{HARD_MAX_N}, got {value}")
        return value

    def get(self, section: str, field: Optional[str] = None) -> Any:
        """
        Get a configuration value.

        Args:
            section: The configuration section
            field: The specific field in the section (optional)

        Returns:
            Configuration value if field specified, else entire section

        Raises:
            KeyError: If section or field doesn't exist
        """
        if section not in self.config:
            raise KeyError(f"Configuration section '{section}' not found")

        if field is None:
            return self.config[section]

        if field not in self.config[section]:
            raise KeyError(f"Configuration field '{field}' not found in section '{section}'")

        return self.config[section][field]

    def update(self, section: str, field: str, value: Any) -> None:
        """
        Update a configuration value.

        Raises:
            KeyError: If section doesn't exist
        """
        if section not in self.config:
            raise KeyError(f"Configuration section '{section}' not found")

        self.config[section][field] = value
        self._validate_config()

    def save(self, path: Optional[str] = None) -> None:
        """Save current configuration to file."""
        target = path or self.config_path or self.DEFAULT_CONFIG_PATH
        with open(target, 'w') as f:
            json.dump(self.config, f, indent=4)

    @property
    def max_n(self) -> int:
        return int(self.config['limits']['max_n'])

    @property
    def threads(self) -> int:
        return int(self.config['compute']['threads'])

    @classmethod
    def create_default_config(cls, path: Optional[str] = None) -> None:
        """
        Create a configuration file from the sample next to it.

        Args:
            path: Path where to create the config file (optional)
        """
        path = path or cls.DEFAULT_CONFIG_PATH
        sample_path = Path(path).parent / "config.sample.json"

        if not os.path.exists(sample_path):
            raise FileNotFoundError("Config sample file not found")

        if os.path.exists(path):
            raise FileExistsError("Config file already exists")

        with open(sample_path, 'r') as f:
            sample_config = json.load(f)

        with open(path, 'w') as f:
            json.dump(sample_config, f, indent=4)

    def __str__(self) -> str:
        return json.dumps(self.config, indent=2)


def default_max_n() -> int:
    """Side cap from the environment, without reading any config file."""
    load_dotenv()
    override = os.getenv("POLYSPACE_MAX_N")
    if not override:
        return HARD_MAX_N
    return ConfigManager._check_max_n(override, "POLYSPACE_MAX_N")
