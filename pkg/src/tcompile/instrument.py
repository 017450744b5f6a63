"""Per-run call counters for the approximation subroutines."""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass, field


@dataclass
class CallStats:
    gridsynth: int = 0
    magnitude: int = 0
    candidates: int = 0
    abandoned: int = 0
    extra: dict = field(default_factory=dict)

    def merge(self, other: "CallStats") -> None:
        self.gridsynth += other.gridsynth
        self.magnitude += other.magnitude
        self.candidates += other.candidates
        self.abandoned += other.abandoned


_current: contextvars.ContextVar[CallStats | None] = contextvars.ContextVar("tcompile_stats", default=None)


def stats() -> CallStats:
    """Counters of the innermost active ``counting()`` block (a throwaway if none)."""
    s = _current.get()
    return s if s is not None else CallStats()


@contextlib.contextmanager
def counting():
    outer = _current.get()
    s = CallStats()
    token = _current.set(s)
    try:
        yield s
    finally:
        _current.reset(token)
        if outer is not None:
            outer.merge(s)
