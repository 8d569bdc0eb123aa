"""``run`` - execute a configuration and write its artifacts."""
import argparse
import json
import sys

from src.utils import ArtifactWriter, set_log_level
from ..runner import run
from .options import add_run_options, load_run_config


def handle(args: argparse.Namespace, settings) -> int:
    cfg = load_run_config(args)
    if cfg.json_output:
        # stdout carries only the summary
        set_log_level('ERROR')
    report = run(cfg, settings)
    if cfg.json_output:
        sys.stdout.write(ArtifactWriter.render_json(report.summary))
    else:
        print(json.dumps({'written': [str(path) for path in report.written]}))
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser('run', help="run a preset or configuration and write CSV/JSON artifacts")
    add_run_options(parser)
    parser.set_defaults(handler=handle)
