import os

DEFAULT_BUDGET = 10**6


def default_budget() -> int:
    """Search budget, overridable through ``LEIBKIT_BUDGET``."""
    raw = os.environ.get("LEIBKIT_BUDGET")
    if raw:
        try:
            value = int(raw)
        except ValueError:
            raise ValueError(f"LEIBKIT_BUDGET must be an integer, got {raw!r}") from None
        if value <= 0:
            raise ValueError("LEIBKIT_BUDGET must be positive")
        return value
    return DEFAULT_BUDGET
