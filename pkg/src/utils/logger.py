import logging
import os
import sys


def get_logger(log_level=None):
    if log_level is None:
        log_level = os.getenv('PDCNET_LOG_LEVEL', 'INFO').upper()

    logging.basicConfig(
        level=logging.INFO,
        format='%(asctime)s - %(levelname)s - %(message)s',
        handlers=[
            logging.StreamHandler(sys.stdout)
        ]
    )

    logger = logging.getLogger("pdcnet")
    logger.setLevel(log_level)
    return logger


def set_log_level(log_level) -> None:
    """Change the level of the shared logger (used by the CLI config)."""
    Logger.setLevel(log_level.upper() if isinstance(log_level, str) else log_level)


Logger = get_logger()
