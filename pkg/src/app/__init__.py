"""Command-line application factory."""
import argparse
import json
import os
import sys
from typing import Optional, Sequence

from src.enums import ConfigName
from src.exceptions import PdcnetError
from src.utils import Logger, set_log_level
from .exceptions import ConfigError, ConfigIssue

__all__ = ['create_app', 'PdcnetApp']


class PdcnetApp:
    """The argument parser together with the selected configuration class."""

    def __init__(self, parser: argparse.ArgumentParser, settings):
        self.parser = parser
        self.settings = settings

    def main(self, argv: Optional[Sequence[str]] = None) -> int:
        """Run one subcommand; returns the process exit status."""
        args = self.parser.parse_args(argv)
        try:
            return args.handler(args, self.settings)
        except ConfigError as e:
            return self._fail(e, 2, [issue.as_dict() for issue in e.issues])
        except (PdcnetError, OSError) as e:
            return self._fail(e, 1)

    @staticmethod
    def _fail(error: Exception, status: int, issues: Optional[list] = None) -> int:
        Logger.debug(f"{type(error).__name__}: {error}")
        payload = {'error': type(error).__name__, 'message': str(error), 'issues': issues or []}
        sys.stderr.write(json.dumps(payload, sort_keys=True) + '\n')
        return status


def create_app(config_name: ConfigName = None) -> PdcnetApp:
    """Create and configure the command-line application."""
    if config_name is None:
        config_name = os.environ.get('PDCNET_ENV', ConfigName.PRODUCTION)

    # Load configuration
    from src.app.config import config
    try:
        settings = config[ConfigName(config_name)]
    except ValueError:
        raise ConfigError([ConfigIssue(None, 'PDCNET_ENV', f"unknown environment '{config_name}'")]) from None
    if hasattr(settings, 'init_app'):
        try:
            settings.init_app()
        except ValueError as e:
            raise ConfigError([ConfigIssue(None, 'PDCNET_THREADS', str(e))]) from e
    set_log_level(settings.LOG_LEVEL)

    parser = argparse.ArgumentParser(
        prog='pdcnet',
        description="Simulate multi-crystal down-conversion interferometers and write fringe data.",
    )
    subparsers = parser.add_subparsers(dest='command', required=True)

    # Register commands
    from .commands import (
        register_run,
        register_validate,
        register_presets,
        register_dump_config
    )

    register_run(subparsers)
    register_validate(subparsers)
    register_presets(subparsers)
    register_dump_config(subparsers)

    return PdcnetApp(parser, settings)
