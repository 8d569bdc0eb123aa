"""``dump-config`` - print the normalized configuration."""
import argparse
import sys

from ..config_file import dump_config
from .options import add_run_options, load_run_config


def handle(args: argparse.Namespace, settings) -> int:
    sys.stdout.write(dump_config(load_run_config(args)))
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser('dump-config', help="echo the configuration in normalized form")
    add_run_options(parser)
    parser.set_defaults(handler=handle)
