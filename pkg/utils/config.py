"""
Configuration management for qmatrank.

Settings come from three layers, later layers winning:
1. YAML files in config/ (deep-merged in file-name order)
2. Environment variables prefixed with QMATRANK_ (a ``.env`` file is honoured)
3. Runtime overrides via set_config()
"""

import logging
import os
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Union

import yaml
from dotenv import load_dotenv

logger = logging.getLogger(__name__)

ENV_PREFIX = "QMATRANK_"
# Double underscore separates nesting levels; single underscores stay in key names.
ENV_NESTING = "__"


def _coerce(raw: str) -> Any:
    """Turn an environment string into bool, int, float or leave it as str."""
    lowered = raw.strip().lower()
    if lowered in ("true", "false"):
        return lowered == "true"
    try:
        return int(raw)
    except ValueError:
        pass
    try:
        return float(raw)
    except ValueError:
        return raw


def _deep_merge(base: Dict[str, Any], extra: Dict[str, Any]) -> Dict[str, Any]:
    merged = dict(base)
    for key, value in extra.items():
        if isinstance(merged.get(key), dict) and isinstance(value, dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


class ConfigLoader:
    """Loads, merges and serves configuration values by dotted key."""

    def __init__(self, config_dir: Optional[Path] = None):
        """
        Args:
            config_dir: Directory holding YAML files. Defaults to the config/
                directory next to the utils package.
        """
        if config_dir is None:
            config_dir = Path(__file__).resolve().parent.parent / "config"
        self.config_dir = Path(config_dir)
        self._config: Dict[str, Any] = {}
        self._loaded = False

    def load(self, config_files: Optional[Iterable[Union[str, Path]]] = None) -> Dict[str, Any]:
        """
        Load YAML files and apply environment overrides.

        Args:
            config_files: Files to load (names are resolved against config_dir).
                All ``*.yaml`` files in config_dir when omitted.

        Returns:
            The merged configuration dictionary.
        """
        if config_files is None:
            paths = sorted(self.config_dir.glob("*.yaml"))
        else:
            paths = [self.config_dir / f if isinstance(f, str) else Path(f) for f in config_files]

        merged: Dict[str, Any] = {}
        for path in paths:
            if not path.exists():
                logger.warning(f"Config file not found: {path}")
                continue
            logger.debug(f"Loading config from {path}")
            with open(path, "r", encoding="utf-8") as handle:
                content = yaml.safe_load(handle)
            if content:
                merged = _deep_merge(merged, content)

        self._config = merged
        self._apply_env_overrides()
        self._loaded = True
        return self._config

    def get(self, key: str, default: Any = None) -> Any:
        """Return the value at a dotted key such as ``oracle.state_budget``."""
        if not self._loaded:
            self.load()
        node: Any = self._config
        for part in key.split("."):
            if not isinstance(node, dict) or part not in node:
                return default
            node = node[part]
        return node

    def set(self, key: str, value: Any) -> None:
        """Set the value at a dotted key, creating intermediate sections."""
        if not self._loaded:
            self.load()
        self._assign(key.split("."), value)

    def _assign(self, parts: list, value: Any) -> None:
        node = self._config
        for part in parts[:-1]:
            child = node.get(part)
            if not isinstance(child, dict):
                child = {}
                node[part] = child
            node = child
        node[parts[-1]] = value

    def _apply_env_overrides(self) -> None:
        load_dotenv(override=False)
        for env_key, env_value in os.environ.items():
            if not env_key.startswith(ENV_PREFIX):
                continue
            suffix = env_key[len(ENV_PREFIX):].lower()
            if not suffix:
                continue
            parts = suffix.split(ENV_NESTING)
            value = _coerce(env_value)
            logger.debug(f"Overriding {'.'.join(parts)} with {value!r} from environment")
            self._assign(parts, value)

    def to_dict(self) -> Dict[str, Any]:
        """Return a shallow copy of the full configuration."""
        if not self._loaded:
            self.load()
        return dict(self._config)


_config_loader = ConfigLoader()


def load_config(config_files: Optional[Iterable[Union[str, Path]]] = None) -> Dict[str, Any]:
    """Reload the global configuration."""
    return _config_loader.load(config_files)


def get_config(key: str, default: Any = None) -> Any:
    """Read a value from the global configuration by dotted key."""
    return _config_loader.get(key, default)


def set_config(key: str, value: Any) -> None:
    """Override a value in the global configuration."""
    _config_loader.set(key, value)


def reset_config() -> None:
    """Drop runtime overrides; the next access reloads from disk and environment."""
    _config_loader._config = {}
    _config_loader._loaded = False
