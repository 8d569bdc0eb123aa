"""Command-line options shared by the commands that read a run configuration."""
import argparse
from pathlib import Path

from src.enums import CombinerStyle, OutputKind, PresetId, ScanParameter, SeedTreatment
from ..config_file import parse_config
from ..exceptions import ConfigError, ConfigIssue
from ..run_config import RunConfig


# flag destination -> [run] key
VALUE_FLAGS = {
    'preset': 'preset',
    'name': 'name',
    'alpha': 'alpha',
    'gain': 'gain',
    'gains': 'gains',
    'phi': 'phi',
    'phi_p': 'phi_p',
    'tau': 'tau',
    'theta': 'theta',
    'combiner': 'combiner',
    'phase_ratio': 'phase_ratio',
    'phi_grid': 'phi_grid',
    'phi_p_grid': 'phi_p_grid',
    'tau_grid': 'tau_grid',
    'n_grid': 'n_grid',
    'scan': 'scan',
    'detector': 'detector',
    'coincidence': 'coincidence',
    'treatment': 'treatment',
    'outputs': 'outputs',
    'ensemble': 'ensemble',
    'growth': 'growth',
    'out': 'out',
}

SWITCH_FLAGS = {
    'seeded': 'seeded',
    'couple_phases': 'couple_phases',
    'oracle': 'oracle',
    'json': 'json',
    'plot': 'plot',
}


def add_run_options(parser: argparse.ArgumentParser) -> None:
    network = parser.add_argument_group('network')
    network.add_argument('--config', type=Path, help="run configuration file")
    network.add_argument('--preset', choices=[p.value for p in PresetId])
    network.add_argument('--name', help="name of an inline network")
    network.add_argument('--seeded', action='store_true', help="seed the idler modes with a coherent field")
    network.add_argument('--alpha', help="seed amplitude as re,im")
    network.add_argument('--gain', help="gain C of every crystal")
    network.add_argument('--gains', help="gains C1;C2;C3 (complex as re,im)")
    network.add_argument('--phi', help="signal path phase (radians, e.g. pi/2)")
    network.add_argument('--phi-p', dest='phi_p', help="pump phase delay (radians)")
    network.add_argument('--tau', help="filter amplitude transmission")
    network.add_argument('--theta', help="filter transmission phase (radians)")
    network.add_argument('--combiner', choices=[c.value for c in CombinerStyle])
    network.add_argument('--couple-phases', dest='couple_phases', action='store_true',
                         help="advance the pump phase together with φ at the wavelength ratio")
    network.add_argument('--phase-ratio', dest='phase_ratio', help="dφ_p/dφ for coupled scans")

    scans = parser.add_argument_group('scans')
    scans.add_argument('--scan', choices=[s.value for s in ScanParameter], help="scanned parameter")
    scans.add_argument('--phi-grid', dest='phi_grid', metavar='A:B:STEP')
    scans.add_argument('--phi-p-grid', dest='phi_p_grid', metavar='A:B:STEP')
    scans.add_argument('--tau-grid', dest='tau_grid', metavar='A:B:STEP')
    scans.add_argument('--n-grid', dest='n_grid', metavar='A:B:STEP')
    scans.add_argument('--detector', help="detector for rate outputs (default A)")
    scans.add_argument('--coincidence', metavar='DET1,DET2', help="detector pair for coincidence outputs")
    scans.add_argument('--treatment', choices=[t.value for t in SeedTreatment])
    scans.add_argument('--classical', action='store_true', help="shorthand for --treatment classical")

    outputs = parser.add_argument_group('outputs')
    outputs.add_argument('--outputs', metavar='KIND,...',
                         help=f"comma-separated outputs ({', '.join(o.value for o in OutputKind)})")
    outputs.add_argument('--oracle', action='store_true', help="compare the engine against the Fock-space oracle")
    outputs.add_argument('--phase-lock', dest='phase_lock', action='store_true',
                         help="run the phase-locking ensemble")
    outputs.add_argument('--ensemble', help="ensemble size for --phase-lock")
    outputs.add_argument('--growth', help="signal growth factor that ends each locking trajectory")
    outputs.add_argument('--out', help="output directory")
    outputs.add_argument('--json', action='store_true', help="print the run summary as JSON on stdout")
    outputs.add_argument('--plot', action='store_true', help="also write HTML plots")


def overrides(args: argparse.Namespace) -> list[tuple[str, str]]:
    """[run] key/value pairs given on the command line, in a fixed order."""
    pairs = []
    for dest, key in VALUE_FLAGS.items():
        value = getattr(args, dest, None)
        if value is not None:
            pairs.append((key, str(value)))
    for dest, key in SWITCH_FLAGS.items():
        if getattr(args, dest, False):
            pairs.append((key, 'true'))
    if getattr(args, 'classical', False):
        pairs.append(('treatment', SeedTreatment.CLASSICAL.value))
    if getattr(args, 'oracle', False):
        pairs.append(('add_output', OutputKind.ORACLE_COMPARE.value))
    if getattr(args, 'phase_lock', False):
        pairs.append(('add_output', OutputKind.PHASE_LOCK.value))
    return pairs


def load_run_config(args: argparse.Namespace) -> RunConfig:
    """Read ``--config`` (if any) and apply the command-line overrides on top."""
    text = ''
    if args.config is not None:
        try:
            text = args.config.read_text(encoding='utf-8')
        except OSError as e:
            raise ConfigError([ConfigIssue(None, 'config', f"cannot read {args.config}: {e.strerror or e}")]) from e
    return parse_config(text, overrides(args))
