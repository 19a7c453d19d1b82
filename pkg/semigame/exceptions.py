# Semigame - Error Types
# Input errors map to CLI exit code 1, internal consistency failures to exit code 2


class InputError(ValueError):
    """Raised when a caller supplies data that violates a documented precondition"""


class InternalConsistencyError(RuntimeError):
    """Raised when a computed result fails its own re-verification"""
