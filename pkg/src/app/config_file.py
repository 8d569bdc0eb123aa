"""
Line-oriented run configuration files.

    # comment
    [run]
    preset = filter
    seeded = true
    phi_grid = 0:2*pi:pi/200

    [modes]
    s1 = signal

    [initial]
    i1 = 1,0

    [component.0]
    kind = crystal
    signal = s1
    idler = i1
    gain = 0.01

Phases and other real values accept a small expression language (numbers,
``pi``, ``*``, ``/`` and signs). Complex values are ``re,im``; lists of
complex values are separated by ``;``. Every problem found is reported,
each with its line number.
"""

import math
import re
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Mapping, Optional, Sequence

from pydantic import ValidationError

from src.enums import CombinerStyle, ComponentKind, ModeKind, OutputKind, PresetId, ScanParameter, SeedTreatment
from src.services.experiments import PRESETS, PresetParameters
from src.utils import format_number
from .exceptions import ConfigError, ConfigIssue
from .run_config import PLACEHOLDERS, ComponentEntry, GridSpec, NetworkDefinition, RunConfig


SECTION_PATTERN = re.compile(r'^\[([A-Za-z_]+)(?:\.(\d+))?\]$')
TOKEN_PATTERN = re.compile(r'\s*(?:(\d+\.?\d*(?:[eE][-+]?\d+)?|\.\d+(?:[eE][-+]?\d+)?)|(pi)|([*/])|([-+]))')
TRUE_VALUES = {'true', 'yes', 'on', '1'}
FALSE_VALUES = {'false', 'no', 'off', '0'}


@dataclass(frozen=True)
class Entry:
    line: Optional[int]
    value: str


# ----------------------------------------------------------------------
# Value parsers
# ----------------------------------------------------------------------

def evaluate_expression(text: str) -> float:
    """
    Evaluate ``text`` built from numbers, ``pi``, ``*``, ``/`` and signs,
    e.g. ``-pi/2`` or ``3*pi/4``.
    """
    position, tokens = 0, []
    text = text.strip()
    while position < len(text):
        match = TOKEN_PATTERN.match(text, position)
        if match is None or match.end() == position:
            raise ValueError(f"unexpected '{text[position:].strip()}' in expression '{text}'")
        tokens.append(match)
        position = match.end()
    if not tokens:
        raise ValueError("empty expression")

    index = 0

    def factor() -> float:
        nonlocal index
        sign = 1.0
        while index < len(tokens) and tokens[index].group(4):
            sign = -sign if tokens[index].group(4) == '-' else sign
            index += 1
        if index >= len(tokens):
            raise ValueError(f"expression '{text}' ends early")
        token = tokens[index]
        index += 1
        if token.group(1):
            return sign * float(token.group(1))
        if token.group(2):
            return sign * math.pi
        raise ValueError(f"expected a number or pi in '{text}'")

    value = factor()
    while index < len(tokens):
        operator = tokens[index].group(3)
        if not operator:
            raise ValueError(f"expected * or / in '{text}'")
        index += 1
        operand = factor()
        if operator == '*':
            value *= operand
        elif operand == 0:
            raise ValueError(f"division by zero in '{text}'")
        else:
            value /= operand
    return value


def parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in TRUE_VALUES:
        return True
    if lowered in FALSE_VALUES:
        return False
    raise ValueError(f"expected true or false, got '{text}'")


def parse_int(text: str) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise ValueError(f"expected an integer, got '{text}'") from None


def parse_complex(text: str) -> complex:
    """``re`` or ``re,im``; both parts may be expressions."""
    parts = [p for p in text.split(',')]
    if len(parts) == 1:
        return complex(evaluate_expression(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(evaluate_expression(parts[0]), evaluate_expression(parts[1]))
    raise ValueError(f"expected a complex number as re,im, got '{text}'")


def parse_complex_list(text: str) -> tuple[complex, ...]:
    return tuple(parse_complex(item) for item in text.split(';'))


def parse_labels(text: str) -> tuple[str, ...]:
    labels = tuple(item.strip() for item in text.split(','))
    if not all(labels):
        raise ValueError(f"empty label in '{text}'")
    return labels


def parse_label(text: str) -> str:
    label = text.strip()
    if not label or any(ch in label for ch in ',;[]= '):
        raise ValueError(f"invalid label '{text}'")
    return label


def parse_pair(text: str) -> tuple[str, str]:
    labels = parse_labels(text)
    if len(labels) != 2:
        raise ValueError(f"expected two detector names as A,D, got '{text}'")
    return labels[0], labels[1]


def parse_grid(text: str) -> GridSpec:
    parts = text.split(':')
    if len(parts) != 3:
        raise ValueError(f"expected a grid as start:stop:step, got '{text}'")
    start, stop, step = (evaluate_expression(p) for p in parts)
    try:
        return GridSpec(start=start, stop=stop, step=step)
    except ValidationError as e:
        raise ValueError('; '.join(err['msg'] for err in e.errors())) from None


def parse_outputs(text: str) -> tuple[OutputKind, ...]:
    if not text.strip():
        return ()
    outputs = []
    for item in parse_labels(text):
        outputs.append(_enum(OutputKind, item))
    return tuple(dict.fromkeys(outputs))


def _enum(enum_type, text: str):
    try:
        return enum_type(text.strip())
    except ValueError:
        allowed = ', '.join(member.value for member in enum_type)
        raise ValueError(f"unknown value '{text.strip()}' (allowed: {allowed})") from None


def _phase_or_placeholder(text: str) -> Any:
    value = text.strip()
    if value.startswith('$'):
        if value not in PLACEHOLDERS:
            raise ValueError(f"unknown placeholder '{value}' (allowed: {', '.join(PLACEHOLDERS)})")
        return value
    return evaluate_expression(value)


def _transmission(text: str) -> Any:
    value = _phase_or_placeholder(text)
    if isinstance(value, float) and not 0.0 <= value <= 1.0:
        raise ValueError(f"filter transmission {value:g} outside [0, 1]")
    return value


# ----------------------------------------------------------------------
# Section grammar
# ----------------------------------------------------------------------

RUN_KEYS: dict[str, Callable[[str], Any]] = {
    'preset': lambda text: _enum(PresetId, text),
    'name': parse_label,
    'seeded': parse_bool,
    'alpha': parse_complex,
    'gain': evaluate_expression,
    'gains': parse_complex_list,
    'phi': evaluate_expression,
    'phi_p': evaluate_expression,
    'tau': evaluate_expression,
    'theta': evaluate_expression,
    'combiner': lambda text: _enum(CombinerStyle, text),
    'couple_phases': parse_bool,
    'phase_ratio': evaluate_expression,
    'max_field_order': parse_int,
    'max_product_order': parse_int,
    'outputs': parse_outputs,
    'scan': lambda text: _enum(ScanParameter, text),
    'phi_grid': parse_grid,
    'phi_p_grid': parse_grid,
    'tau_grid': parse_grid,
    'n_grid': parse_grid,
    'detector': parse_label,
    'coincidence': parse_pair,
    'treatment': lambda text: _enum(SeedTreatment, text),
    'oracle': parse_bool,
    'ensemble': parse_int,
    'growth': evaluate_expression,
    'out': lambda text: text.strip(),
    'json': parse_bool,
    'plot': parse_bool,
}

PARAMETER_KEYS = ('seeded', 'alpha', 'phi', 'phi_p', 'tau', 'theta', 'combiner', 'couple_phases', 'phase_ratio')

COMPONENT_KEYS: dict[ComponentKind, dict[str, tuple[Callable[[str], Any], bool]]] = {
    ComponentKind.CRYSTAL: {
        'signal': (parse_label, True),
        'idler': (parse_label, True),
        'gain': (parse_complex, True),
        'pump_phase': (_phase_or_placeholder, False),
    },
    ComponentKind.PHASE: {'mode': (parse_label, True), 'phi': (_phase_or_placeholder, True)},
    ComponentKind.MIRROR: {'mode': (parse_label, True)},
    ComponentKind.FILTER: {
        'mode': (parse_label, True),
        'tau': (_transmission, True),
        'theta': (_phase_or_placeholder, False),
        'ancilla': (parse_label, True),
    },
    ComponentKind.SEED: {'mode': (parse_label, True), 'alpha': (parse_complex, True)},
    ComponentKind.COMBINER: {
        'inputs': (parse_labels, True),
        'output': (parse_label, True),
        'weights': (parse_complex_list, False),
        'style': (lambda text: _enum(CombinerStyle, text), False),
    },
    ComponentKind.DETECTOR: {'name': (parse_label, True), 'mode': (parse_label, True)},
}


class _Reader:
    """Splits the text into sections and collects issues as it goes."""

    def __init__(self):
        self.issues: list[ConfigIssue] = []
        self.sections: dict[str, dict[str, Entry]] = {}
        self.section_lines: dict[str, int] = {}

    def issue(self, line: Optional[int], key: str, message: str) -> None:
        self.issues.append(ConfigIssue(line, key, message))

    def read(self, text: str) -> None:
        current: Optional[str] = None
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split('#', 1)[0].strip()
            if not line:
                continue
            if line.startswith('['):
                current = self._section(number, line)
                continue
            if '=' not in line:
                self.issue(number, line, "expected 'key = value'")
                continue
            key, value = (part.strip() for part in line.split('=', 1))
            if current is None:
                self.issue(number, key, "key outside of any section")
                continue
            if current == '':
                continue
            section = self.sections[current]
            if key in section:
                self.issue(number, key, f"duplicate key (first set on line {section[key].line})")
                continue
            section[key] = Entry(number, value)

    def _section(self, number: int, line: str) -> str:
        match = SECTION_PATTERN.match(line)
        if match is None:
            self.issue(number, line, "malformed section header")
            return ''
        name, index = match.groups()
        if name == 'component' and index is not None:
            section = f"component.{int(index)}"
        elif name in ('run', 'modes', 'initial') and index is None:
            section = name
        else:
            self.issue(number, line, "unknown section (use [run], [modes], [initial] or [component.<n>])")
            return ''
        if section in self.sections:
            self.issue(number, line, f"duplicate section (first on line {self.section_lines[section]})")
            return ''
        self.sections[section] = {}
        self.section_lines[section] = number
        return section


def _convert(reader: _Reader, entries: Mapping[str, Entry], grammar: Mapping[str, Callable[[str], Any]]) -> dict:
    values = {}
    for key, entry in entries.items():
        parser = grammar.get(key)
        if parser is None:
            reader.issue(entry.line, key, f"unknown key (allowed: {', '.join(grammar)})")
            continue
        try:
            values[key] = parser(entry.value)
        except ValueError as e:
            reader.issue(entry.line, key, str(e))
    return values


def _network(reader: _Reader) -> Optional[NetworkDefinition]:
    component_sections = sorted(
        (name for name in reader.sections if name.startswith('component.')),
        key=lambda name: int(name.split('.')[1]),
    )
    if not component_sections and 'modes' not in reader.sections:
        return None

    modes = []
    for label, entry in reader.sections.get('modes', {}).items():
        try:
            modes.append((parse_label(label), _enum(ModeKind, entry.value)))
        except ValueError as e:
            reader.issue(entry.line, label, str(e))
    if not modes:
        reader.issue(reader.section_lines.get('modes'), 'modes', "an inline network needs a [modes] section")

    initial = []
    for label, entry in reader.sections.get('initial', {}).items():
        try:
            initial.append((label, parse_complex(entry.value)))
        except ValueError as e:
            reader.issue(entry.line, label, str(e))

    components = []
    for name in component_sections:
        entries = dict(reader.sections[name])
        line = reader.section_lines[name]
        kind_entry = entries.pop('kind', None)
        if kind_entry is None:
            reader.issue(line, name, "missing 'kind'")
            continue
        try:
            kind = _enum(ComponentKind, kind_entry.value)
        except ValueError as e:
            reader.issue(kind_entry.line, 'kind', str(e))
            continue
        grammar = COMPONENT_KEYS[kind]
        values = _convert(reader, entries, {key: parser for key, (parser, _) in grammar.items()})
        for key, (_, required) in grammar.items():
            if required and key not in entries:
                reader.issue(line, f"{name}.{key}", f"missing required key for a {kind.value}")
        components.append(ComponentEntry(index=int(name.split('.')[1]), kind=kind, values=values))

    try:
        return NetworkDefinition(modes=tuple(modes), initial=tuple(initial), components=tuple(components))
    except ValidationError as e:
        for error in e.errors():
            reader.issue(reader.section_lines.get('modes'), 'modes', error['msg'])
        return None


def _default_outputs(values: Mapping[str, Any], has_network: bool) -> tuple[OutputKind, ...]:
    if not has_network:
        return ()
    if values.get('tau_grid') is not None and values.get('preset') == PresetId.FILTER_SETUP:
        return (OutputKind.VISIBILITY_VS_TAU,)
    outputs = [OutputKind.DETECTOR_RATE]
    if values.get('coincidence') is not None:
        outputs.append(OutputKind.COINCIDENCE)
    if values.get('oracle'):
        outputs.append(OutputKind.ORACLE_COMPARE)
    return tuple(outputs)


def _default_scan(values: Mapping[str, Any], outputs: Sequence[OutputKind]) -> ScanParameter:
    if values.get('phi_grid') is not None:
        return ScanParameter.PHI
    if values.get('phi_p_grid') is not None:
        return ScanParameter.PHI_P
    if values.get('tau_grid') is not None and OutputKind.VISIBILITY_VS_TAU not in outputs:
        return ScanParameter.TAU
    return ScanParameter.PHI


def _parameters(reader: _Reader, values: dict, lines: Mapping[str, Optional[int]]) -> PresetParameters:
    kwargs = {key: values[key] for key in PARAMETER_KEYS if key in values}
    if 'gains' in values:
        if len(values['gains']) != 3:
            reader.issue(lines['gains'], 'gains', "expected three gains C1; C2; C3")
        else:
            kwargs['gains'] = values['gains']
    elif 'gain' in values:
        kwargs['gains'] = (values['gain'],) * 3
    try:
        return PresetParameters(**kwargs)
    except ValidationError as e:
        for error in e.errors():
            key = str(error['loc'][0]) if error['loc'] else 'parameters'
            if key == 'gains':
                key = 'gains' if 'gains' in lines else 'gain'
            reader.issue(lines.get(key), key, error['msg'])
        return PresetParameters()


def parse_config(text: str, overrides: Iterable[tuple[str, str]] = ()) -> RunConfig:
    """
    Parse and validate a configuration. ``overrides`` are ``(key, value)``
    pairs for the [run] section taken from the command line; they replace
    file values. The special key ``add_output`` appends to the outputs.

    Raises ConfigError listing every issue.
    """
    reader = _Reader()
    reader.read(text)

    run_entries = dict(reader.sections.get('run', {}))
    extra_outputs = []
    for key, value in overrides:
        if key == 'add_output':
            extra_outputs.append(value)
        else:
            run_entries[key] = Entry(None, value)
    lines = {key: entry.line for key, entry in run_entries.items()}

    values = _convert(reader, run_entries, RUN_KEYS)
    for item in extra_outputs:
        try:
            values['outputs'] = tuple(dict.fromkeys(values.get('outputs', ()) + (_enum(OutputKind, item),)))
        except ValueError as e:
            reader.issue(None, 'outputs', str(e))

    network = _network(reader)
    parameters = _parameters(reader, values, lines)

    has_network = network is not None or values.get('preset') is not None
    outputs = values.get('outputs', ())
    if 'outputs' not in run_entries:
        outputs = tuple(dict.fromkeys(_default_outputs(values, has_network) + tuple(values.get('outputs', ()))))
    scan = values.get('scan') or _default_scan(values, outputs)

    _check_consistency(reader, values, lines, network, outputs)

    settings = {
        'preset': values.get('preset'),
        'network': network,
        'name': values.get('name'),
        'parameters': parameters,
        'outputs': outputs,
        'scan': scan,
        'json_output': values.get('json', False),
    }
    for key in ('max_field_order', 'max_product_order', 'phi_grid', 'phi_p_grid', 'tau_grid', 'n_grid',
                'detector', 'coincidence', 'treatment', 'oracle', 'ensemble', 'growth', 'out', 'plot'):
        if key in values:
            settings[key] = values[key]

    if reader.issues:
        raise ConfigError(reader.issues)
    try:
        return RunConfig(**settings)
    except ValidationError as e:
        raise ConfigError([
            ConfigIssue(lines.get(str(err['loc'][0])) if err['loc'] else None,
                        str(err['loc'][0]) if err['loc'] else 'run', err['msg'])
            for err in e.errors()
        ]) from e


def _check_consistency(
    reader: _Reader,
    values: Mapping[str, Any],
    lines: Mapping[str, Optional[int]],
    network: Optional[NetworkDefinition],
    outputs: Sequence[OutputKind],
) -> None:
    preset = values.get('preset')
    if preset is not None and network is not None:
        reader.issue(lines.get('preset'), 'preset', "give either a preset or an inline network, not both")

    if preset is not None:
        detectors = PRESETS[preset].detectors
    elif network is not None:
        detectors = network.detectors
        seen = [name for name in detectors]
        for name in sorted({d for d in seen if seen.count(d) > 1}):
            reader.issue(None, 'network', f"duplicate detector name '{name}'")
    else:
        detectors = None

    if detectors is not None:
        if 'detector' in values and values['detector'] not in detectors:
            reader.issue(lines.get('detector'), 'detector',
                         f"unknown detector '{values['detector']}' (defined: {', '.join(detectors)})")
        for name in values.get('coincidence') or ():
            if name not in detectors:
                reader.issue(lines.get('coincidence'), 'coincidence',
                             f"unknown detector '{name}' (defined: {', '.join(detectors)})")

    if OutputKind.COINCIDENCE in outputs and values.get('coincidence') is None:
        if not (detectors and len(detectors) >= 2):
            reader.issue(lines.get('outputs'), 'outputs', "coincidence output needs a 'coincidence' pair")
    if OutputKind.VISIBILITY_VS_TAU in outputs or OutputKind.COMPLEMENTARITY in outputs:
        if preset != PresetId.FILTER_SETUP:
            reader.issue(lines.get('outputs'), 'outputs', "visibility-vs-tau and complementarity need preset 'filter'")
    if OutputKind.VISIBILITY_VS_TAU in outputs and values.get('tau_grid') is None:
        reader.issue(lines.get('outputs'), 'outputs', "visibility-vs-tau needs a tau_grid")
    if OutputKind.VISIBILITY_VS_N in outputs:
        if preset not in (PresetId.CASCADE12, PresetId.PARALLEL23):
            reader.issue(lines.get('outputs'), 'outputs', "visibility-vs-n needs preset cascade12 or parallel23")
        if values.get('n_grid') is None:
            reader.issue(lines.get('outputs'), 'outputs', "visibility-vs-n needs an n_grid")
    tau_grid = values.get('tau_grid')
    if tau_grid is not None and (tau_grid.start < 0 or tau_grid.stop > 1 + 1e-12):
        reader.issue(lines.get('tau_grid'), 'tau_grid', "τ grid must lie within [0, 1]")
    if network is not None and values.get('scan') == ScanParameter.TAU and '$tau' not in network.placeholders:
        reader.issue(lines.get('scan'), 'scan', "scanning tau needs a filter with tau = $tau")


# ----------------------------------------------------------------------
# Normalized dump
# ----------------------------------------------------------------------

def _format_complex(value: complex) -> str:
    value = complex(value)
    if value.imag == 0:
        return format_number(value.real)
    return f"{format_number(value.real)},{format_number(value.imag)}"


def _format_value(value: Any) -> str:
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, complex):
        return _format_complex(value)
    if isinstance(value, float):
        return format_number(value)
    if isinstance(value, GridSpec):
        return ':'.join(format_number(v) for v in (value.start, value.stop, value.step))
    if isinstance(value, tuple):
        if value and isinstance(value[0], complex):
            return '; '.join(_format_complex(v) for v in value)
        return ','.join(str(v) for v in value)
    return str(value)


def dump_config(cfg: RunConfig) -> str:
    """Normalized configuration text; ``parse_config(dump_config(c)) == c``."""
    p = cfg.parameters
    run = {
        'preset': cfg.preset,
        'name': cfg.name,
        'gains': tuple(complex(g) for g in p.gains),
        'seeded': p.seeded,
        'alpha': complex(p.alpha),
        'phi': p.phi,
        'phi_p': p.phi_p,
        'tau': p.tau,
        'theta': p.theta,
        'combiner': p.combiner,
        'couple_phases': p.couple_phases,
        'phase_ratio': p.phase_ratio,
        'max_field_order': cfg.max_field_order,
        'max_product_order': cfg.max_product_order,
        'outputs': ','.join(o.value for o in cfg.outputs),
        'scan': cfg.scan,
        'phi_grid': cfg.phi_grid,
        'phi_p_grid': cfg.phi_p_grid,
        'tau_grid': cfg.tau_grid,
        'n_grid': cfg.n_grid,
        'detector': cfg.detector,
        'coincidence': cfg.coincidence,
        'treatment': cfg.treatment,
        'oracle': cfg.oracle,
        'ensemble': cfg.ensemble,
        'growth': cfg.growth,
        'out': cfg.out,
        'json': cfg.json_output,
        'plot': cfg.plot,
    }
    lines = ['[run]']
    lines += [f"{key} = {_format_value(value)}" for key, value in run.items() if value is not None]

    network = cfg.network
    if network is not None:
        lines += ['', '[modes]'] + [f"{label} = {kind.value}" for label, kind in network.modes]
        if network.initial:
            lines += ['', '[initial]'] + [f"{label} = {_format_complex(alpha)}" for label, alpha in network.initial]
        for component in network.components:
            lines += ['', f"[component.{component.index}]", f"kind = {component.kind.value}"]
            lines += [f"{key} = {_format_value(value)}" for key, value in component.values.items()]
    return '\n'.join(lines) + '\n'

