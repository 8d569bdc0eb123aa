"""Application configuration."""
import os
from pathlib import Path

from dotenv import load_dotenv

from src.enums import ConfigName

load_dotenv()


class Config:
    """Base configuration."""

    LOG_LEVEL = os.environ.get('PDCNET_LOG_LEVEL', 'INFO')
    THREADS = int(os.environ.get('PDCNET_THREADS', '0') or 0)

    OUTPUT_DIR = Path('out')
    PHASE_POINTS = 401
    COUPLED_PERIODS = 5
    DEFAULT_GAIN = 0.01
    FLOAT_DIGITS = 17

    # Oracle
    ORACLE_UNSEEDED_CUTOFF = 4
    ORACLE_BASIS_BUDGET = 2_000_000
    ORACLE_LEAKAGE_TOLERANCE = 1e-10
    ORACLE_SERIES_TOLERANCE = 1e-14
    ORACLE_POISSON_TAIL = 1e-12
    ORACLE_SCAN_POINTS = 41

    # Phase dynamics
    INTEGRATOR_TOLERANCE = 1e-10
    INTEGRATOR_SAMPLES = 512
    ENSEMBLE_SIZE = 16
    LOCKING_GROWTH = 100.0


class DevelopmentConfig(Config):
    """Development configuration."""
    LOG_LEVEL = os.environ.get('PDCNET_LOG_LEVEL', 'DEBUG')


class ProductionConfig(Config):
    """Production configuration."""

    @classmethod
    def init_app(cls):
        if cls.THREADS < 0:
            raise ValueError("PDCNET_THREADS must be 0 (auto) or a positive worker count")


class TestingConfig(Config):
    """Testing configuration."""
    LOG_LEVEL = 'WARNING'
    THREADS = 1
    PHASE_POINTS = 81
    ORACLE_SCAN_POINTS = 17


config = {
    ConfigName.DEVELOPMENT: DevelopmentConfig,
    ConfigName.PRODUCTION: ProductionConfig,
    ConfigName.TESTING: TestingConfig,
    ConfigName.DEFAULT: DevelopmentConfig
}
