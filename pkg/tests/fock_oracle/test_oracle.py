"""Truncated Fock-space oracle: building blocks and agreement with the engine."""
import cmath
import math
from dataclasses import replace

import numpy as np
import pytest

from src.enums import PresetId, ScanParameter
from src.services.experiments import (
    IDLER_DETECTOR,
    SIGNAL_DETECTOR,
    PresetParameters,
    PresetTemplate,
    build_preset,
    induced_visibility_law,
    phase_grid,
    scan,
    seeded_visibility_law,
    stimulated_visibility_law,
    visibility,
)
from src.services.network import NetworkBuilder, compile_network, detector_rate
from src.services.fock_oracle import (
    DEFAULT_SETTINGS,
    BasisBudgetError,
    FockBasis,
    FockState,
    OracleError,
    apply_squeezer,
    completed_unitary,
    displacement_matrix,
    gap_scaling,
    measure_coincidence,
    oracle_compare,
    oracle_run,
    oracle_scan,
    plan_basis,
    seeded_cutoff,
)

pytestmark = pytest.mark.oracle

GAIN = 0.01


class TestBuildingBlocks:

    def test_squeezer_on_vacuum_gives_two_mode_squeezed_state(self):
        basis = FockBasis.create(('s', 'i'), (8, 8))
        zeta = 0.1 * cmath.exp(0.4j)
        psi = apply_squeezer(FockState.vacuum(basis), 's', 'i', abs(zeta), cmath.phase(zeta))
        r = abs(zeta)
        tensor = psi.tensor()
        for n in range(5):
            expected = cmath.exp(0.4j * n) * math.tanh(r) ** n / math.cosh(r)
            assert tensor[n, n] == pytest.approx(expected, abs=1e-12)
        off_diagonal = tensor - np.diag(np.diag(tensor))
        assert np.max(np.abs(off_diagonal)) < 1e-14
        assert psi.norm_deviation < 1e-12

    def test_squeezed_vacuum_coincidence(self):
        r = GAIN
        psi = apply_squeezer(FockState.vacuum(FockBasis.create(('s', 'i'), (8, 8))), 's', 'i', r, 0.0)
        expected = math.sinh(r) ** 2 * math.cosh(r) ** 2 + math.sinh(r) ** 4
        assert measure_coincidence(psi, 's', 'i') == pytest.approx(expected, rel=1e-9)
        assert measure_coincidence(psi, 's', 'i') == pytest.approx(1.0001e-4, rel=1e-3)

    def test_displacement_of_vacuum_is_coherent(self):
        alpha = 0.8 - 0.3j
        column = displacement_matrix(alpha, 30)[:, 0]
        for m in range(8):
            expected = cmath.exp(-abs(alpha) ** 2 / 2) * alpha ** m / math.sqrt(math.factorial(m))
            assert column[m] == pytest.approx(expected, abs=1e-14)

    def test_displacement_is_unitary_on_low_levels(self):
        d = displacement_matrix(0.8 + 0.5j, 30)
        gram = d.conj().T @ d
        np.testing.assert_allclose(gram[:10, :10], np.eye(10), atol=1e-10)

    @pytest.mark.parametrize('row', [
        (1 / math.sqrt(2), 1j / math.sqrt(2)),
        (0.6, 0.0, 0.8j),
        (1.0, 0.0),
    ])
    def test_completed_unitary(self, row):
        u = completed_unitary(row)
        np.testing.assert_allclose(u @ u.conj().T, np.eye(len(row)), atol=1e-12)
        np.testing.assert_allclose(u[0], row, atol=1e-12)

    def test_seeded_cutoff_covers_poisson_tail(self):
        assert seeded_cutoff(1.5) >= math.ceil(1.5 ** 2 + 6 * 1.5)
        assert seeded_cutoff(0.1) >= 4

    def test_basis_budget(self):
        with pytest.raises(BasisBudgetError):
            FockBasis.create(('a', 'b', 'c'), (20, 20, 20), budget=1000)

    def test_large_seed_is_outside_oracle_regime(self):
        spec = build_preset(PresetId.CASCADE12, PresetParameters.uniform(GAIN, seeded=True, alpha=3.0))
        with pytest.raises(OracleError):
            plan_basis(spec)

    def test_linked_modes_share_cutoff(self):
        spec = build_preset(PresetId.FILTER_SETUP, PresetParameters.uniform(GAIN, seeded=True, alpha=1.0, tau=0.5))
        basis = plan_basis(spec)
        cutoffs = dict(zip(basis.modes, basis.cutoffs))
        assert cutoffs['l1'] == cutoffs['i1'] > cutoffs['s1']


class TestEngineAgreement:

    @pytest.mark.parametrize('preset', list(PresetId))
    @pytest.mark.parametrize('alpha', [None, 1.0, 1.5])
    def test_presets_agree_with_engine(self, preset, alpha):
        p = PresetParameters.uniform(
            GAIN,
            seeded=alpha is not None,
            alpha=alpha or 1.0,
            phi=0.3,
            phi_p=0.9,
            tau=0.5,
        )
        pairs = [(SIGNAL_DETECTOR, IDLER_DETECTOR)] if preset == PresetId.FILTER_SETUP else []
        comparison = oracle_compare(build_preset(preset, p), pairs)
        assert comparison.worst_relative() < 1e-3
        assert comparison.oracle.leakage < 1e-10

    def test_gap_shrinks_quadratically_with_gain(self):
        def build(gain):
            return build_preset(PresetId.CASCADE12, PresetParameters.uniform(gain, seeded=True, alpha=1.0, phi=0.3))

        large, small = gap_scaling(build, GAIN)
        assert large / small == pytest.approx(4.0, rel=0.2)

    def test_unknown_coincidence_detector(self):
        spec = build_preset(PresetId.CASCADE12, PresetParameters.uniform(GAIN))
        with pytest.raises(OracleError):
            oracle_run(spec, [('A', 'Z')])

    @pytest.mark.parametrize('tau', [0.25, 0.5, 0.75])
    def test_unseeded_coincidence_follows_stimulated_law(self, tau):
        base = PresetParameters.uniform(GAIN, tau=tau)

        def factory(parameter, value):
            return build_preset(PresetId.FILTER_SETUP, base.bind(parameter, value))

        result = oracle_scan(
            factory,
            ScanParameter.PHI,
            phase_grid(41),
            coincidence=(SIGNAL_DETECTOR, IDLER_DETECTOR),
        )
        v = visibility(result, fit=False).visibility
        assert v == pytest.approx(stimulated_visibility_law(tau), abs=0.02)

    def test_filter_attenuates_coherent_input(self):
        spec = NetworkBuilder().idler('i').seed('i', 1.0).filter('i', 0.6, 'l').detector('D', 'i').build()
        assert oracle_run(spec).rates['D'] == pytest.approx(0.36, rel=1e-9)
        assert detector_rate(compile_network(spec), 'D') == pytest.approx(0.36, rel=1e-12)

    def test_seed_after_a_crystal(self):
        alpha = 1.3
        spec = (
            NetworkBuilder().signal('s1', 's2').idler('i')
            .crystal('s1', 'i', GAIN).seed('i', alpha).crystal('s2', 'i', GAIN)
            .detector('A', 's2')
            .build()
        )
        engine = detector_rate(compile_network(spec), 'A')
        assert oracle_run(spec).rates['A'] == pytest.approx(engine, rel=1e-3)


class TestVisibilityAgreement:

    @pytest.mark.parametrize('preset', list(PresetId))
    def test_seeded_visibilities_match_engine(self, preset):
        template = PresetTemplate(preset, PresetParameters.uniform(GAIN, seeded=True, alpha=1.0, tau=0.5))
        parameter = ScanParameter.PHI_P if preset == PresetId.CASCADE13 else ScanParameter.PHI
        grid = phase_grid(17)
        engine = visibility(scan(template, parameter, grid), fit=False).visibility
        oracle = visibility(oracle_scan(template.bind, parameter, grid), fit=False).visibility
        assert oracle == pytest.approx(engine, abs=0.01)

    def test_seeded_parallel_crystals_reach_half_visibility(self):
        template = PresetTemplate(PresetId.PARALLEL23, PresetParameters.uniform(GAIN, seeded=True, alpha=1.0))
        result = oracle_scan(template.bind, ScanParameter.PHI, phase_grid(41))
        v = visibility(result, fit=False).visibility
        assert v == pytest.approx(seeded_visibility_law(1.0), abs=0.01)
        assert v == pytest.approx(0.5, abs=0.01)

    @pytest.mark.parametrize('tau', [0.25, 0.5, 0.75])
    def test_unseeded_single_rate_follows_induced_law(self, tau):
        template = PresetTemplate(PresetId.FILTER_SETUP, PresetParameters.uniform(GAIN, tau=tau))
        result = oracle_scan(template.bind, ScanParameter.PHI, phase_grid(41), detector=SIGNAL_DETECTOR)
        v = visibility(result, fit=False).visibility
        assert v == pytest.approx(induced_visibility_law(tau), abs=0.01)


class TestConvergence:

    def test_unseeded_rates_stable_when_cutoff_doubles(self):
        spec = build_preset(PresetId.FILTER_SETUP, PresetParameters.uniform(GAIN, tau=0.5, phi=0.3))
        pairs = [(SIGNAL_DETECTOR, IDLER_DETECTOR)]
        coarse = oracle_run(spec, pairs)
        fine = oracle_run(spec, pairs, replace(DEFAULT_SETTINGS, unseeded_cutoff=2 * DEFAULT_SETTINGS.unseeded_cutoff))
        for name, rate in coarse.rates.items():
            assert fine.rates[name] == pytest.approx(rate, rel=1e-9, abs=1e-20)
        for pair, rate in coarse.coincidences.items():
            assert fine.coincidences[pair] == pytest.approx(rate, rel=1e-9, abs=1e-20)

    def test_seeded_rates_stable_when_tail_tightens(self):
        spec = build_preset(PresetId.CASCADE12, PresetParameters.uniform(GAIN, seeded=True, alpha=1.0, phi=0.3))
        coarse = oracle_run(spec)
        fine = oracle_run(spec, settings=replace(DEFAULT_SETTINGS, poisson_tail=1e-24))
        for name, rate in coarse.rates.items():
            assert fine.rates[name] == pytest.approx(rate, rel=1e-9)
