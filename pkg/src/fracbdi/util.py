"""Small numerical helpers shared across modules."""

from __future__ import annotations


class CompensatedSum:
    """Kahan summation that also tracks the largest partial-sum magnitude.

    The peak magnitude drives cancellation estimates: an alternating sum
    whose partial sums reached M cannot be trusted below ~M * eps.
    """

    __slots__ = ("total", "carry", "peak")

    def __init__(self) -> None:
        self.total = 0.0
        self.carry = 0.0
        self.peak = 0.0

    def add(self, term: float) -> None:
        y = term - self.carry
        t = self.total + y
        self.carry = (t - self.total) - y
        self.total = t
        m = abs(t)
        if abs(term) > m:
            m = abs(term)
        if m > self.peak:
            self.peak = m
