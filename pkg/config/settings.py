"""
Configuration Management for all2sat
Built-in defaults, overridden by an optional JSON config file
"""
import json
import logging
import os

logger = logging.getLogger("all2sat.settings")

ENUM_KEYS = {
    "log_level": ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"),
    "model_format": ("bits", "lits"),
    "cube_format": ("text", "json"),
    "count_format": ("text", "json"),
    "bench_format": ("csv", "json"),
    "branching": ("max_closure", "lowest_id"),
    "cube_split_order": ("conc_size", "lowest_id"),
}

POSITIVE_KEYS = ("brute_force_limit", "bench_n", "bench_t", "bench_instances", "bench_workers")


def default_config_file():
    base = os.environ.get("XDG_CONFIG_HOME") or os.path.expanduser("~/.config")
    return os.path.join(base, "all2sat", "config.json")


class Settings:
    def __init__(self, config_file=None):
        self.config_file = config_file or default_config_file()
        self.default_config = {
            # Logging
            "log_level": "INFO",
            "log_file": None,
            "color": True,

            # Output formats
            "model_format": "bits",
            "cube_format": "text",
            "count_format": "text",
            "bench_format": "csv",

            # Enumeration
            "branching": "max_closure",
            "cube_split_order": "conc_size",

            # bench instances up to this many variables are checked by brute force
            "brute_force_limit": 16,

            # Experiment defaults
            "bench_n": 20,
            "bench_t": 20,
            "bench_instances": 10,
            "bench_seed": 1,
            "bench_workers": 1,
        }
        self.load_config()

    def load_config(self):
        """Load configuration from file over the defaults; never writes"""
        self.config = self.default_config.copy()
        if not os.path.exists(self.config_file):
            return
        try:
            with open(self.config_file, 'r') as f:
                user_config = json.load(f)
        except (OSError, ValueError) as e:
            logger.warning(f"Error loading config {self.config_file}: {e}")
            return
        if not isinstance(user_config, dict):
            logger.warning(f"Ignoring config {self.config_file}: top level is not an object")
            return

        errors = self.validate_config(user_config)
        if errors:
            logger.warning(f"Ignoring config {self.config_file}: {', '.join(errors)}")
            return
        self.config.update(user_config)

    def save_config(self, config_dict=None):
        """Save configuration to file"""
        try:
            os.makedirs(os.path.dirname(self.config_file) or ".", exist_ok=True)
            if config_dict:
                self.config.update(config_dict)
            with open(self.config_file, 'w') as f:
                json.dump(self.config, f, indent=2)
            return True
        except OSError as e:
            logger.error(f"Error saving config: {e}")
            return False

    def get(self, key, default=None):
        """Get a configuration value"""
        return self.config.get(key, default)

    def set(self, key, value):
        """Set a configuration value"""
        self.config[key] = value

    def validate_config(self, config):
        """Validate configuration values, returning a list of error messages"""
        errors = []
        for key in config:
            if key not in self.default_config:
                errors.append(f"Unknown key {key!r}")

        for key, allowed in ENUM_KEYS.items():
            if key in config and config[key] not in allowed:
                errors.append(f"{key} must be one of {', '.join(allowed)}")

        for key in POSITIVE_KEYS:
            if key in config:
                value = config[key]
                if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                    errors.append(f"{key} must be a positive integer")

        if "bench_seed" in config and not isinstance(config["bench_seed"], int):
            errors.append("bench_seed must be an integer")
        return errors

    def reset_to_defaults(self):
        """Reset configuration to default values"""
        self.config = self.default_config.copy()

    def export_config(self, filepath):
        """Export configuration to a file"""
        try:
            with open(filepath, 'w') as f:
                json.dump(self.config, f, indent=2)
            return True
        except OSError as e:
            logger.error(f"Error exporting config: {e}")
            return False
