"""Enumeration caps.

Every exhaustive routine asks :func:`check` before doing work. The cap is
read from ``CLIQUE_MEASURE_BUDGET`` (default ``10**7``) unless a process
wide override is installed with :func:`set_budget`.
"""

from __future__ import annotations

import os

from .errors import BudgetExceeded

DEFAULT_BUDGET = 10**7
ENV_VAR = "CLIQUE_MEASURE_BUDGET"

_override: int | None = None


def set_budget(value: int | None) -> None:
    global _override
    if value is not None and value <= 0:
        raise ValueError("budget must be positive")
    _override = value


def get_budget() -> int:
    if _override is not None:
        return _override
    raw = os.environ.get(ENV_VAR)
    if raw:
        try:
            value = int(raw)
        except ValueError as exc:
            raise ValueError(f"{ENV_VAR} must be an integer, got {raw!r}") from exc
        if value <= 0:
            raise ValueError(f"{ENV_VAR} must be positive")
        return value
    return DEFAULT_BUDGET


def check(cost: int, what: str) -> None:
    """Raise :class:`BudgetExceeded` if ``cost`` work units exceed the cap."""
    cap = get_budget()
    if cost > cap:
        raise BudgetExceeded(f"{what}: {cost} exceeds budget {cap} (set {ENV_VAR} to raise it)")
