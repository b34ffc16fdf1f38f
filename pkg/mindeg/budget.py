"""Cooperative time budgets for long-running searches."""

from __future__ import annotations

import time

from mindeg.exceptions import BudgetExceeded


class Budget:
    """Deadline checked at loop boundaries inside enumeration and search.

    ``check()`` only reads the clock every ``stride`` calls so that tight
    loops can call it unconditionally.
    """

    __slots__ = ("seconds", "_deadline", "_calls", "_stride")

    def __init__(self, seconds: float | None, stride: int = 256):
        self.seconds = seconds
        self._deadline = time.monotonic() + seconds if seconds else None
        self._calls = 0
        self._stride = stride

    @classmethod
    def unlimited(cls) -> Budget:
        return cls(None)

    def check(self) -> None:
        if self._deadline is None:
            return
        self._calls += 1
        if self._calls % self._stride:
            return
        if time.monotonic() > self._deadline:
            raise BudgetExceeded(self.seconds)

    @property
    def remaining(self) -> float | None:
        if self._deadline is None:
            return None
        return max(0.0, self._deadline - time.monotonic())
