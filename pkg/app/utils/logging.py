import logging
from typing import Optional

from app.config import get_settings

_configured = False


def configure_logging(level: Optional[str] = None) -> None:
    """Configure root logging once; the level defaults to MUSTAFIN_LOG."""
    global _configured
    name = (level or get_settings().log).upper()
    numeric = getattr(logging, name, None)
    if not isinstance(numeric, int):
        numeric = logging.WARNING
    if _configured:
        logging.getLogger().setLevel(numeric)
        return
    logging.basicConfig(
        level=numeric,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    _configured = True
