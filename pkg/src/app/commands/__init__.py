"""Commands package - one module per CLI subcommand."""
from .run import register as register_run
from .validate import register as register_validate
from .presets import register as register_presets
from .dump_config import register as register_dump_config

__all__ = [
    'register_run',
    'register_validate',
    'register_presets',
    'register_dump_config'
]
