"""
Shared fixtures and the hypothesis profile.

Property suites run under the derandomized ``pdcnet`` profile so every run
explores the same examples.
"""
import os

import pytest
from hypothesis import HealthCheck, settings

from src.app.config import TestingConfig
from src.models.modes import ModeId
from src.services.experiments import PresetParameters

os.environ.setdefault('PDCNET_THREADS', '1')

settings.register_profile(
    'pdcnet',
    derandomize=True,
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile('pdcnet')


@pytest.fixture
def mode_factory():
    """Create ModeId instances by label."""
    def _create(label: str, kind=None) -> ModeId:
        return ModeId(label) if kind is None else ModeId(label, kind)
    return _create


@pytest.fixture
def preset_parameters():
    """Create PresetParameters with a common gain and any overrides."""
    def _create(gain: complex = 0.01, **kwargs) -> PresetParameters:
        return PresetParameters.uniform(gain, **kwargs)
    return _create


@pytest.fixture
def settings_class():
    return TestingConfig


@pytest.fixture
def out_dir(tmp_path):
    return tmp_path / "out"
