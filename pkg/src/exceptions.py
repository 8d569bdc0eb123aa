"""
Root exception for pdcnet.

Every service package defines its own hierarchy in its ``exceptions.py``;
all of them derive from ``PdcnetError`` so the CLI can report any failure
in one place.
"""


class PdcnetError(Exception):
    """Base exception for all pdcnet errors."""
    pass
