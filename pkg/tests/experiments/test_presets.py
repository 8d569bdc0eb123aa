"""Preset networks against their closed-form rates."""
import math

import pytest

from src.enums import CombinerStyle, PresetId, ScanParameter, SeedTreatment
from src.services.experiments import (
    IDLER_DETECTOR,
    PRESETS,
    SIGNAL_DETECTOR,
    PresetParameterError,
    PresetParameters,
    build_preset,
    closed_form_coincidence,
    closed_form_rate,
    make_parameters,
    printed_coincidence,
    printed_rate,
    stimulated_enhancement,
    supports_closed_form,
)
from src.services.network import coincidence_rate, compile_network, detector_rate


GAIN = 0.01
GRID = tuple(2 * math.pi * k / 100 for k in range(101))


def engine_rate(preset, p, treatment=SeedTreatment.EXACT):
    return detector_rate(compile_network(build_preset(preset, p)), SIGNAL_DETECTOR, treatment=treatment)


def close(value, reference):
    return value == pytest.approx(reference, rel=1e-12, abs=1e-12 * GAIN ** 2)


class TestClosedForms:

    @pytest.mark.parametrize('preset', list(PresetId))
    @pytest.mark.parametrize('seeded', [False, True])
    def test_exact_rate_matches_engine_over_phi(self, preset, seeded, preset_parameters):
        base = preset_parameters(GAIN, seeded=seeded, alpha=1.3, phi_p=0.7, tau=0.6, theta=0.3)
        for phi in GRID:
            p = base.bind(ScanParameter.PHI, phi)
            assert close(engine_rate(preset, p), closed_form_rate(preset, p)), (preset, phi)

    @pytest.mark.parametrize('preset', list(PresetId))
    def test_classical_rate_matches_engine_over_phi(self, preset, preset_parameters):
        base = preset_parameters(GAIN, seeded=True, alpha=2.0, phi_p=1.1, tau=0.8)
        for phi in GRID[::10]:
            p = base.bind(ScanParameter.PHI, phi)
            expected = closed_form_rate(preset, p, SeedTreatment.CLASSICAL)
            assert close(engine_rate(preset, p, SeedTreatment.CLASSICAL), expected), (preset, phi)

    @pytest.mark.parametrize('preset', [PresetId.PARALLEL23, PresetId.CASCADE13, PresetId.THREE_CRYSTAL])
    def test_pump_phase_scan_matches_engine(self, preset, preset_parameters):
        base = preset_parameters(GAIN, seeded=True, alpha=1.0, phi=0.4)
        for phi_p in GRID[::5]:
            p = base.bind(ScanParameter.PHI_P, phi_p)
            assert close(engine_rate(preset, p), closed_form_rate(preset, p))

    def test_unseeded_three_crystal_printed_form(self, preset_parameters):
        for phi in GRID:
            p = preset_parameters(GAIN, phi=phi)
            expected = GAIN ** 2 * (2 * (1 - math.sin(phi)) + 1)
            assert close(engine_rate(PresetId.THREE_CRYSTAL, p), expected)
            assert close(printed_rate(PresetId.THREE_CRYSTAL, p), expected)

    def test_seeded_three_crystal_printed_form_sits_below_classical(self, preset_parameters):
        n = 4.0
        p = preset_parameters(GAIN, seeded=True, alpha=math.sqrt(n), phi=0.9, phi_p=0.2)
        classical = closed_form_rate(PresetId.THREE_CRYSTAL, p, SeedTreatment.CLASSICAL)
        assert printed_rate(PresetId.THREE_CRYSTAL, p) == pytest.approx(classical - GAIN ** 2 * n, rel=1e-12)

    def test_filter_coincidence_matches_engine(self, preset_parameters):
        for seeded in (False, True):
            base = preset_parameters(GAIN, seeded=seeded, alpha=0.8, tau=0.45, theta=0.25)
            for phi in GRID[::4]:
                p = base.bind(ScanParameter.PHI, phi)
                fields = compile_network(build_preset(PresetId.FILTER_SETUP, p))
                rate = coincidence_rate(fields, SIGNAL_DETECTOR, IDLER_DETECTOR)
                assert close(rate, closed_form_coincidence(p))

    def test_printed_coincidence_has_factor_four(self, preset_parameters):
        p = preset_parameters(GAIN, tau=0.5, phi=math.pi / 2)
        assert printed_coincidence(p) == pytest.approx(4 * GAIN ** 2 * 0.5)

    def test_no_closed_form_for_unequal_gains_or_physical_combiner(self):
        unequal = PresetParameters(gains=(0.01, 0.02, 0.01))
        physical = PresetParameters.uniform(0.01, combiner=CombinerStyle.PHYSICAL)
        for p in (unequal, physical):
            assert not supports_closed_form(p)
            assert closed_form_rate(PresetId.CASCADE12, p) is None
            assert closed_form_coincidence(p) is None


class TestPresets:

    def test_every_preset_has_signal_detector(self, preset_parameters):
        for preset, info in PRESETS.items():
            fields = compile_network(build_preset(preset, preset_parameters()))
            for detector in info.detectors:
                assert detector in fields

    def test_filter_preset_watches_the_idler(self):
        assert PRESETS[PresetId.FILTER_SETUP].detectors == (SIGNAL_DETECTOR, IDLER_DETECTOR)

    def test_gain_above_limit_is_rejected(self):
        with pytest.raises(PresetParameterError):
            make_parameters(gains=(0.2, 0.01, 0.01))

    def test_seeded_without_amplitude_is_rejected(self):
        with pytest.raises(PresetParameterError):
            make_parameters(seeded=True, alpha=0)

    def test_tau_outside_unit_interval_is_rejected(self):
        with pytest.raises(PresetParameterError):
            make_parameters(tau=1.5)

    def test_coupled_pump_phase(self):
        p = PresetParameters(phi=0.5, phi_p=0.1, couple_phases=True, phase_ratio=2.0)
        assert p.pump_phase == pytest.approx(1.1)

    def test_stimulated_enhancement_of_cascade(self):
        # at φ = 0 the cascade rate scales as n + 1
        assert stimulated_enhancement(PresetId.CASCADE12, 4.0) == pytest.approx(5.0, rel=1e-12)
