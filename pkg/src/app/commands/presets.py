"""``presets`` - list the built-in networks."""
import argparse
import json

from src.services.experiments import PRESETS


def handle(args: argparse.Namespace, settings) -> int:
    rows = [
        {'id': info.preset.value, 'description': info.description, 'detectors': list(info.detectors)}
        for info in PRESETS.values()
    ]
    if args.json:
        print(json.dumps(rows, indent=2))
        return 0
    width = max(len(row['id']) for row in rows)
    for row in rows:
        print(f"{row['id']:<{width}}  [{','.join(row['detectors'])}]  {row['description']}")
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser('presets', help="list preset networks")
    parser.add_argument('--json', action='store_true', help="print as JSON")
    parser.set_defaults(handler=handle)
