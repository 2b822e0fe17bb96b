#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
RM-MWPC - Konfigürasyon Yöneticisi
Simülasyon varsayılanlarını ve logging ayarlarını merkezi olarak yönetir
"""

import copy
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import jsonschema

from exception_handler import ConfigException

# Varsayılan dosya modülün yanında aranır
DEFAULT_CONFIG_FILE = Path(__file__).resolve().parent / "config.json"


class ConfigManager:
    """Merkezi konfigürasyon yöneticisi"""

    # Default configuration
    DEFAULT_CONFIG = {
        "simulation": {
            "ell": 30,
            "mu": 0.03,
            "tmax": 1000,
            "tol": 1e-5,
            "f": 0.25,
            "w": 0.05,
            "nu": 3,
            "min_block_errors": 100,
            "max_frames": 100000,
            "seed": 0,
            "workers": 1,
            "frames_per_task": 32,
            "saturation_factor": 50
        },
        "logging": {
            "level": "INFO",
            "file_path": "logs/rm_mwpc.log",
            "max_file_size_mb": 10,
            "backup_count": 5,
            "file_logging": False,
            "structured": True,
            "colored_console": True
        },
        "export": {
            "default_format": "csv",
            "include_timing": True
        }
    }

    SCHEMA = {
        "type": "object",
        "properties": {
            "simulation": {
                "type": "object",
                "properties": {
                    "ell": {"type": "integer", "minimum": 0},
                    "mu": {"type": "number", "exclusiveMinimum": 0},
                    "tmax": {"type": "integer", "minimum": 1},
                    "tol": {"type": "number", "exclusiveMinimum": 0},
                    "f": {"type": "number", "minimum": 0, "maximum": 1},
                    "w": {"type": "number", "exclusiveMinimum": 0, "maximum": 1},
                    "nu": {"type": "integer", "minimum": 0},
                    "min_block_errors": {"type": "integer", "minimum": 1},
                    "max_frames": {"type": "integer", "minimum": 1},
                    "seed": {"type": "integer", "minimum": 0},
                    "workers": {"type": "integer", "minimum": 1},
                    "frames_per_task": {"type": "integer", "minimum": 1},
                    "saturation_factor": {"type": "integer", "minimum": 1}
                }
            },
            "logging": {
                "type": "object",
                "properties": {
                    "level": {"enum": ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]},
                    "file_path": {"type": "string"},
                    "max_file_size_mb": {"type": "integer", "minimum": 1},
                    "backup_count": {"type": "integer", "minimum": 0},
                    "file_logging": {"type": "boolean"},
                    "structured": {"type": "boolean"},
                    "colored_console": {"type": "boolean"}
                }
            },
            "export": {
                "type": "object",
                "properties": {
                    "default_format": {"enum": ["csv", "json"]},
                    "include_timing": {"type": "boolean"}
                }
            }
        }
    }

    def __init__(self, config_file: Union[str, Path] = DEFAULT_CONFIG_FILE):
        self.config_file = Path(config_file)
        self.logger = logging.getLogger(__name__)
        self._config: Dict[str, Any] = {}
        self.load_error: Optional[str] = None

        # Konfigürasyonu yükle
        self.load_config()

    def load_config(self) -> bool:
        """Konfigürasyonu dosyadan yükle"""
        self.load_error = None
        try:
            if self.config_file.exists():
                with open(self.config_file, 'r', encoding='utf-8') as f:
                    file_config = json.load(f)

                jsonschema.validate(file_config, self.SCHEMA)

                # Default config ile merge et
                self._config = self._merge_configs(self.DEFAULT_CONFIG, file_config)
                self.logger.debug(f"Configuration loaded from: {self.config_file}")
            else:
                self._config = copy.deepcopy(self.DEFAULT_CONFIG)
                self.logger.debug("Config file not found, using defaults")
            return True

        except (json.JSONDecodeError, jsonschema.ValidationError, OSError) as e:
            self.logger.error(f"Failed to load configuration: {e}")
            self.load_error = f"{self.config_file}: {e}"
            # Fallback to default
            self._config = copy.deepcopy(self.DEFAULT_CONFIG)
            return False

    def save_config(self) -> bool:
        """Konfigürasyonu dosyaya kaydet"""
        try:
            self.config_file.parent.mkdir(parents=True, exist_ok=True)
            with open(self.config_file, 'w', encoding='utf-8') as f:
                json.dump(self._config, f, indent=2, ensure_ascii=False)
            self.logger.info(f"Configuration saved to: {self.config_file}")
            return True

        except OSError as e:
            self.logger.error(f"Failed to save configuration: {e}")
            return False

    def _merge_configs(self, default: Dict, user: Dict) -> Dict:
        """İki config'i merge et (recursive)"""
        result = copy.deepcopy(default)

        for key, value in user.items():
            if key in result and isinstance(result[key], dict) and isinstance(value, dict):
                result[key] = self._merge_configs(result[key], value)
            else:
                result[key] = value

        return result

    def get(self, key_path: str, default: Any = None) -> Any:
        """
        Nested key ile değer al
        Örnek: get("simulation.ell") -> config["simulation"]["ell"]
        """
        value = self._config
        for key in key_path.split('.'):
            if isinstance(value, dict) and key in value:
                value = value[key]
            else:
                return default
        return value

    def set(self, key_path: str, value: Any) -> bool:
        """
        Nested key ile değer ayarla
        Örnek: set("simulation.w", 0.2)
        """
        keys = key_path.split('.')
        config = self._config

        # Son key hariç tüm key'leri traverse et
        for key in keys[:-1]:
            if not isinstance(config.get(key), dict):
                config[key] = {}
            config = config[key]

        config[keys[-1]] = value
        self.logger.debug(f"Configuration updated: {key_path} = {value}")
        return True

    def validate_config(self) -> Tuple[bool, List[str]]:
        """Konfigürasyonu şemaya göre validate et"""
        validator = jsonschema.Draft7Validator(self.SCHEMA)
        errors = [
            f"{'.'.join(str(p) for p in error.path) or '<root>'}: {error.message}"
            for error in validator.iter_errors(self._config)
        ]
        return len(errors) == 0, errors

    def require_valid(self):
        """Geçersiz konfigürasyonda ConfigException fırlat"""
        _, errors = self.validate_config()
        if self.load_error:
            errors.insert(0, self.load_error)
        if errors:
            raise ConfigException("Konfigürasyon şemaya uymuyor", errors)

    def get_simulation_config(self) -> Dict:
        """Simülasyon varsayılanları"""
        return dict(self.get("simulation", {}))

    def get_logging_config(self) -> Dict:
        """Logging konfigürasyonu"""
        return dict(self.get("logging", {}))

    def get_export_config(self) -> Dict:
        """Export konfigürasyonu"""
        return dict(self.get("export", {}))


# Global config instance
_config_instance: Optional[ConfigManager] = None


def get_config(config_file: Optional[str] = None) -> ConfigManager:
    """Global config instance'ını al"""
    global _config_instance
    if _config_instance is None or (config_file and Path(config_file) != _config_instance.config_file):
        _config_instance = ConfigManager(config_file or DEFAULT_CONFIG_FILE)
    return _config_instance

