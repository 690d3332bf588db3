"""Run configuration and the working-precision switch.

The precision mode is read from a context variable, falling back to the
``STABSPEC_PRECISION`` environment variable (``standard`` or ``extended``).
"""
from __future__ import annotations

import contextvars
import os
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterator, Literal

Precision = Literal["standard", "extended"]

ENV_VAR = "STABSPEC_PRECISION"
EXTENDED_DPS = 34
DEFAULT_TOL = 1e-12

_precision: contextvars.ContextVar[str | None] = contextvars.ContextVar(
    "stabspec_precision", default=None
)


def precision() -> Precision:
    mode = _precision.get() or os.environ.get(ENV_VAR, "standard")
    if mode not in ("standard", "extended"):
        raise ValueError(f"unknown precision mode {mode!r}")
    return mode  # type: ignore[return-value]


def working_dps() -> int | None:
    """Decimal digits for series arithmetic, or None for binary doubles."""
    return EXTENDED_DPS if precision() == "extended" else None


@contextmanager
def use_precision(mode: Precision) -> Iterator[None]:
    if mode not in ("standard", "extended"):
        raise ValueError(f"unknown precision mode {mode!r}")
    token = _precision.set(mode)
    try:
        yield
    finally:
        _precision.reset(token)


@dataclass(frozen=True)
class RunConfig:
    precision: Precision = "standard"
    tol: float = DEFAULT_TOL
    output: Literal["csv", "json"] = "csv"
    seed: int = 0

    def __post_init__(self) -> None:
        if self.precision not in ("standard", "extended"):
            raise ValueError(f"unknown precision mode {self.precision!r}")
        if not 1e-16 <= self.tol <= 1e-4:
            raise ValueError(f"tol must lie in [1e-16, 1e-4], got {self.tol}")
        if self.output not in ("csv", "json"):
            raise ValueError(f"unknown output format {self.output!r}")
