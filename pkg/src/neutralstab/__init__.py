"""Exact delay-independent stability analysis of linear neutral delay systems."""

from .errors import (
    ConfigError,
    DegenerateSystemError,
    DegenerateViewError,
    DomainError,
    NeutralStabError,
    RootCountMismatch,
    SingularPencilError,
)
from .stability import NeutralSystem, StabilityVerdict, SystemTemplate, analyze, delay_bound, sweep
from .systemfile import load_system, load_template

__version__ = "0.1.0"

__all__ = [
    "NeutralSystem",
    "SystemTemplate",
    "StabilityVerdict",
    "analyze",
    "delay_bound",
    "sweep",
    "load_system",
    "load_template",
    "NeutralStabError",
    "DomainError",
    "ConfigError",
    "SingularPencilError",
    "DegenerateSystemError",
    "DegenerateViewError",
    "RootCountMismatch",
]
