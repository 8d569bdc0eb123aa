"""Tests for three-wave-mixing integration and phase locking."""
import cmath
import math
from dataclasses import replace

import numpy as np
import pytest

from src.enums import LockingBranch
from src.models.dynamics import AmplitudePhaseState, Trajectory, WaveState, fold_phase
from src.services.phase_dynamics import (
    REFERENCE_BRANCH,
    IntegrationError,
    SingularStartError,
    anomalous_correlation,
    classify_branch,
    common_branch,
    detect_locking,
    ensemble_phases,
    integrate_amplitude_phase,
    integrate_complex,
    linear_correlation,
    locking_ensemble,
    locking_run,
)


class TestIntegration:

    def test_constants_of_motion_are_conserved(self):
        init = WaveState.from_polar(0.1, 0.05, 1.0, theta_s=0.2, theta_i=-0.4, theta_p=0.1)
        trajectory = integrate_complex(init, z_max=5.0)
        assert trajectory.drift < 1e-8
        assert trajectory.formulation == 'complex'
        assert trajectory.fields is not None

    def test_two_formulations_agree(self):
        init = WaveState.from_polar(0.1, 0.1, 1.0, theta_p=0.3)
        complex_form = integrate_complex(init, z_max=1.0)
        polar_form = integrate_amplitude_phase(init.amplitude_phase(), z_max=1.0)
        np.testing.assert_allclose(polar_form.amplitudes, complex_form.amplitudes, rtol=1e-6, atol=1e-9)
        assert polar_form.delta_theta[-1] == pytest.approx(complex_form.delta_theta[-1], abs=1e-6)

    def test_swapping_signal_and_idler_swaps_amplitudes(self):
        forward = integrate_complex(WaveState.from_polar(0.02, 0.05, 1.0, theta_s=0.3), z_max=3.0)
        swapped = integrate_complex(WaveState.from_polar(0.05, 0.02, 1.0, theta_i=0.3), z_max=3.0)
        np.testing.assert_allclose(forward.amplitudes[:, 0], swapped.amplitudes[:, 1], rtol=1e-8)
        np.testing.assert_allclose(forward.amplitudes[:, 1], swapped.amplitudes[:, 0], rtol=1e-8)
        np.testing.assert_allclose(forward.delta_theta, swapped.delta_theta, atol=1e-8)

    def test_growth_stop_ends_integration(self):
        trajectory = integrate_complex(WaveState.from_polar(1e-3, 1e-3, 1.0, theta_p=math.pi / 2),
                                       z_max=20.0, stop_gain=10.0)
        assert trajectory.stopped_early
        assert trajectory.growth == pytest.approx(10.0, rel=1e-6)

    def test_amplitude_phase_form_is_singular_at_zero_seed(self):
        with pytest.raises(SingularStartError):
            integrate_amplitude_phase(AmplitudePhaseState(0.0, 0.1, 1.0, 0.3))

    @pytest.mark.parametrize('kwargs', [{'kappa': 0.0}, {'z_max': -1.0}, {'tol': 0.0}, {'samples': 1}])
    def test_bad_arguments(self, kwargs):
        with pytest.raises(IntegrationError):
            integrate_complex(WaveState.from_polar(0.1, 0.1, 1.0), **kwargs)


class TestLocking:

    def test_ensemble_locks_on_reference_branch(self):
        reports = locking_ensemble(workers=4)
        assert len(reports) == 16
        assert all(r.locked for r in reports)
        assert common_branch(reports) == REFERENCE_BRANCH == LockingBranch.PLUS_HALF_PI
        for report in reports:
            assert report.delta_theta_limit == pytest.approx(math.pi / 2, abs=0.01)
            assert report.growth == pytest.approx(100.0, rel=1e-6)

    def test_single_run_reports_lock_distance(self):
        report = locking_run(-2.0)
        assert report.z_lock is not None and report.z_lock > 0
        assert report.final_cos < 1e-3

    def test_detect_locking_on_synthetic_trajectory(self):
        z = np.linspace(0.0, 1.0, 5)
        delta = np.array([0.0, 1.0, math.pi / 2, math.pi / 2, math.pi / 2])
        trajectory = Trajectory(z=z, amplitudes=np.ones((5, 3)), delta_theta=delta,
                                steps=4, drift=0.0, formulation='complex')
        z_lock, limit = detect_locking(trajectory)
        assert z_lock == pytest.approx(0.5)
        assert limit == pytest.approx(math.pi / 2)

    def test_classify_branch(self):
        assert classify_branch(None, math.pi / 2) == LockingBranch.UNLOCKED
        assert classify_branch(1.0, -math.pi / 2) == LockingBranch.MINUS_HALF_PI
        assert classify_branch(1.0, 0.7) == LockingBranch.UNLOCKED

    def test_mixed_branches_have_no_common_branch(self):
        up = locking_run(1.0)
        down = replace(up, branch=LockingBranch.MINUS_HALF_PI)
        assert common_branch([up, down]) == LockingBranch.UNLOCKED

    def test_ensemble_phases_are_symmetric_midpoints(self):
        phases = ensemble_phases(16)
        assert len(phases) == 16
        assert phases[0] == pytest.approx(-phases[-1])
        assert all(-math.pi < p < math.pi for p in phases)

    @pytest.mark.parametrize('angle, folded', [
        (-math.pi, math.pi),
        (2.5 * math.pi, 0.5 * math.pi),
        (0.5 + 2 * math.pi, 0.5),
        (-0.5, -0.5),
    ])
    def test_fold_phase(self, angle, folded):
        assert fold_phase(angle) == pytest.approx(folded)


class TestLinearRegime:

    @pytest.mark.parametrize('k', [0.1, 0.05j, 0.3 * cmath.exp(0.7j)])
    def test_vacuum_has_no_phase_correlation(self, k):
        assert linear_correlation(k) == 0
        assert linear_correlation(k, exact=True) == pytest.approx(0)

    def test_anomalous_moment_first_order(self):
        k = 0.1 * cmath.exp(0.4j)
        assert anomalous_correlation(k) == pytest.approx(-1j * k)

    def test_anomalous_moment_exact(self):
        k = 0.8 * cmath.exp(-0.2j)
        expected = -1j * cmath.exp(1j * cmath.phase(k)) * math.cosh(abs(k)) * math.sinh(abs(k))
        assert anomalous_correlation(k, exact=True) == pytest.approx(expected)
