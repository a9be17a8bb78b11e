from .config_parser import format_config, parse_config
from .logging import configure_logging
from .sampling import make_rng

__all__ = ["format_config", "parse_config", "configure_logging", "make_rng"]
