"""Tests for run configuration parsing, inline networks and the normalized dump."""
import math

import pytest

from src.enums import OutputKind, PresetId, ScanParameter
from src.app.config_file import dump_config, evaluate_expression, parse_config
from src.app.exceptions import ConfigError
from src.app.networks import network_at
from src.app.runner import scan_grid, validate_run
from src.app.config import TestingConfig
from src.services.experiments import build_preset
from src.services.network import coincidence_rate, compile_network, detector_rate


FILTER_NETWORK = """
[run]
phi = 0.3
tau = 0.5
outputs = rate

[modes]
s1 = signal
s2 = signal
i1 = idler

[component.0]
kind = crystal
signal = s1
idler = i1
gain = 0.01

[component.1]
kind = filter
mode = i1
tau = $tau
ancilla = l1

[component.2]
kind = phase
mode = s1
phi = $phi

[component.3]
kind = mirror
mode = s1

[component.4]
kind = crystal
signal = s2
idler = i1
gain = 0.01

[component.5]
kind = combiner
inputs = s1,s2
output = sA

[component.6]
kind = detector
name = A
mode = sA

[component.7]
kind = detector
name = D
mode = i1
"""


class TestExpressions:

    @pytest.mark.parametrize('text, value', [
        ('pi', math.pi),
        ('-pi/2', -math.pi / 2),
        ('3*pi/4', 3 * math.pi / 4),
        ('1e-3', 1e-3),
        ('.5', 0.5),
        ('--1', 1.0),
    ])
    def test_evaluate(self, text, value):
        assert evaluate_expression(text) == pytest.approx(value)

    @pytest.mark.parametrize('text', ['', 'pi pi', '2+3', '1/0', 'tau'])
    def test_rejects(self, text):
        with pytest.raises(ValueError):
            evaluate_expression(text)


class TestParseConfig:

    def test_preset_defaults(self):
        cfg = parse_config("[run]\npreset = cascade12\nseeded = true\nalpha = 2,0\n")
        assert cfg.preset == PresetId.CASCADE12
        assert cfg.parameters.photon_number == pytest.approx(4.0)
        assert cfg.outputs == (OutputKind.DETECTOR_RATE,)
        assert cfg.scan == ScanParameter.PHI

    def test_filter_tau_grid_defaults_to_visibility_curve(self):
        cfg = parse_config("[run]\npreset = filter\ntau_grid = 0:1:0.05\n")
        assert cfg.outputs == (OutputKind.VISIBILITY_VS_TAU,)

    def test_phi_grid_expression(self):
        cfg = parse_config("[run]\npreset = cascade12\nphi_grid = 0:2*pi:pi/200\n")
        grid = scan_grid(cfg, TestingConfig)
        assert len(grid) == 401
        assert grid[-1] == pytest.approx(2 * math.pi)

    def test_overrides_replace_file_values(self):
        cfg = parse_config("[run]\npreset = cascade12\nphi = 1\n", [('phi', '-pi/2'), ('add_output', 'phase-lock')])
        assert cfg.parameters.phi == pytest.approx(-math.pi / 2)
        assert cfg.outputs == (OutputKind.DETECTOR_RATE, OutputKind.PHASE_LOCK)

    def test_every_issue_is_reported_with_its_line(self):
        text = "\n".join([
            "[run]",
            "preset = filter",
            "tau = 1.5",
            "seeded = maybe",
            "phi_grid = 0:1",
            "bogus = 1",
        ])
        with pytest.raises(ConfigError) as info:
            parse_config(text)
        lines = {issue.line for issue in info.value.issues}
        keys = {issue.key for issue in info.value.issues}
        assert {3, 4, 5, 6} <= lines
        assert {'tau', 'seeded', 'phi_grid', 'bogus'} <= keys

    def test_structural_errors(self):
        text = "key = 1\n[nowhere]\n[run]\npreset = filter\npreset = cascade12\nnot a pair\n"
        with pytest.raises(ConfigError) as info:
            parse_config(text)
        assert [issue.line for issue in info.value.issues] == [1, 2, 5, 6]

    def test_tau_grid_outside_unit_interval(self):
        with pytest.raises(ConfigError) as info:
            parse_config("[run]\npreset = filter\ntau_grid = 0:1.5:0.5\n")
        assert info.value.issues[0].line == 3

    def test_visibility_vs_tau_needs_filter(self):
        with pytest.raises(ConfigError):
            parse_config("[run]\npreset = cascade12\ntau_grid = 0:1:0.5\noutputs = visibility-vs-tau\n")

    def test_preset_and_inline_network_are_exclusive(self):
        with pytest.raises(ConfigError):
            parse_config(FILTER_NETWORK.replace('outputs = rate', 'preset = filter'))

    def test_unknown_detector(self):
        with pytest.raises(ConfigError) as info:
            parse_config("[run]\npreset = cascade12\ndetector = D\n")
        assert info.value.issues[0].key == 'detector'


class TestInlineNetwork:

    def test_filter_network_matches_preset(self):
        cfg = parse_config(FILTER_NETWORK)
        assert validate_run(cfg) == []
        inline = network_at(cfg)
        preset = build_preset(PresetId.FILTER_SETUP, cfg.parameters)
        assert inline.modes == preset.modes
        assert inline.components == preset.components

        inline_fields, preset_fields = compile_network(inline), compile_network(preset)
        assert detector_rate(inline_fields, 'A') == pytest.approx(detector_rate(preset_fields, 'A'), rel=1e-14)
        assert coincidence_rate(inline_fields, 'A', 'D') == pytest.approx(
            coincidence_rate(preset_fields, 'A', 'D'), rel=1e-14)

    def test_placeholders_are_collected(self):
        cfg = parse_config(FILTER_NETWORK)
        assert cfg.network.placeholders == frozenset({'$tau', '$phi'})
        assert cfg.detectors == ('A', 'D')

    def test_filter_transmission_above_one(self):
        text = FILTER_NETWORK.replace('tau = $tau', 'tau = 1.5')
        with pytest.raises(ConfigError) as info:
            parse_config(text)
        line = text.splitlines().index('tau = 1.5') + 1
        assert info.value.issues[0].line == line

    def test_component_errors_name_the_component(self):
        cfg = parse_config(FILTER_NETWORK.replace('mode = s1\nphi = $phi', 'mode = x\nphi = $phi'))
        issues = validate_run(cfg)
        assert [issue.key for issue in issues] == ['component.2']

    def test_missing_required_key(self):
        with pytest.raises(ConfigError) as info:
            parse_config(FILTER_NETWORK.replace('ancilla = l1\n', ''))
        assert info.value.issues[0].key == 'component.1.ancilla'

    def test_tau_scan_needs_placeholder(self):
        with pytest.raises(ConfigError):
            parse_config(FILTER_NETWORK.replace('tau = $tau', 'tau = 0.5').replace('outputs = rate', 'scan = tau'))


class TestDump:

    @pytest.mark.parametrize('text', [
        "[run]\npreset = filter\nseeded = true\nalpha = 1.5,-0.25\ntau_grid = 0:1:0.05\ntheta = pi/7\n",
        "[run]\npreset = three-crystal\ngains = 0.01; 0.02,0.005; 0.01\nphi_grid = 0:4*pi:pi/100\ncouple_phases = true\n",
        FILTER_NETWORK,
    ])
    def test_dump_reparses_to_the_same_config(self, text):
        cfg = parse_config(text)
        assert parse_config(dump_config(cfg)) == cfg
        assert dump_config(parse_config(dump_config(cfg))) == dump_config(cfg)
