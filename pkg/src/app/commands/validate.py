"""``validate`` - check a configuration without running it."""
import argparse
import json

from ..exceptions import ConfigError
from ..runner import validate_run
from .options import add_run_options, load_run_config


def handle(args: argparse.Namespace, settings) -> int:
    cfg = load_run_config(args)
    issues = validate_run(cfg)
    if issues:
        raise ConfigError(issues)
    print(json.dumps({
        'valid': True,
        'preset': cfg.preset.value if cfg.preset else None,
        'detectors': list(cfg.detectors),
        'outputs': [o.value for o in cfg.outputs],
    }, sort_keys=True))
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser('validate', help="validate a configuration and report every problem")
    add_run_options(parser)
    parser.set_defaults(handler=handle)
