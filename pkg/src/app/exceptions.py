"""
Application Exceptions

Errors raised while reading run configurations and writing artifacts.
"""

from dataclasses import dataclass
from typing import Optional, Sequence

from src.exceptions import PdcnetError


@dataclass(frozen=True)
class ConfigIssue:
    """One problem in a run configuration. ``line`` is None for command-line values."""
    line: Optional[int]
    key: str
    message: str

    def __str__(self) -> str:
        where = f"line {self.line}" if self.line is not None else "command line"
        return f"{where}: {self.key}: {self.message}"

    def as_dict(self) -> dict:
        return {'line': self.line, 'key': self.key, 'message': self.message}


class AppError(PdcnetError):
    """Base exception for command-line application errors."""
    pass


class ConfigError(AppError):
    """Raised with every issue found in a run configuration."""

    def __init__(self, issues: Sequence[ConfigIssue]):
        self.issues = tuple(issues)
        summary = '; '.join(str(issue) for issue in self.issues[:5])
        more = f" (+{len(self.issues) - 5} more)" if len(self.issues) > 5 else ''
        super().__init__(f"{len(self.issues)} configuration error(s): {summary}{more}")


class ArtifactError(AppError):
    """Raised when an output file cannot be written."""
    pass
