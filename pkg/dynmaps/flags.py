"""Diagnostic flags attached to states and witness samples."""

from enum import Enum


class Flag(str, Enum):
    POSITIVITY_VIOLATION = "PositivityViolation"
    SUPPORT_VIOLATION = "SupportViolation"
    BASELINE_DEGENERATE = "BaselineDegenerate"
    FALLBACK_USED = "FallbackUsed"


def join_flags(flags) -> str:
    """Semicolon-joined tokens in a fixed order (empty string when no flags)."""
    return ";".join(f.value for f in Flag if f in flags)
