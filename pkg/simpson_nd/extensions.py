# extensions.py
import logging
import os
import sys
from dataclasses import dataclass

OUTPUT_FORMATS = ("text", "json", "csv")

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

_handler = None

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Settings:
    """Snapshot of the SIMPSON_ND_* environment variables."""

    output_format: str = "text"
    log_level: str = "WARNING"
    workers: int = 1
    secret_key: str = "dev-secret"

    @classmethod
    def from_env(cls, environ=None):
        env = os.environ if environ is None else environ
        raw = env.get("SIMPSON_ND_WORKERS", "1")
        try:
            workers = int(raw)
        except ValueError:
            workers = 0
        if workers < 1:
            logger.warning("SIMPSON_ND_WORKERS=%r is not a positive integer, using 1", raw)
            workers = 1
        return cls(
            output_format=env.get("SIMPSON_ND_FORMAT", "text").strip().lower(),
            log_level=env.get("SIMPSON_ND_LOG_LEVEL", "WARNING").strip().upper(),
            workers=workers,
            secret_key=env.get("SECRET_KEY", "dev-secret"),
        )


def configure_logging(level="WARNING"):
    """Attach a single stderr handler to the package logger (safe to call twice)."""
    global _handler
    logger = logging.getLogger("simpson_nd")
    if _handler is None:
        _handler = logging.StreamHandler(sys.stderr)
        _handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logger.addHandler(_handler)
    logger.setLevel(getattr(logging, str(level).upper(), logging.WARNING))
    return logger
