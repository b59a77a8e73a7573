"""Monotone queue: FIFO with O(1) amortized window extrema.

Elements enter at the back and leave at the front in arrival order.  A spine
deque keeps candidate extrema monotone, so the current minimum (or maximum)
is always at the spine's front.  Departures are matched by arrival order, not
by value, so duplicate values behave deterministically.
"""

from __future__ import annotations

from collections import deque

__all__ = ["MonotoneQueue"]


class MonotoneQueue:
    """Min- or max-queue over live elements.

    ``movements`` counts spine pushes and pops; over n add/remove operations
    it never exceeds 2n, which is the amortized O(1) audit.
    """

    def __init__(self, mode: str):
        if mode not in ("min", "max"):
            raise ValueError("mode must be 'min' or 'max'")
        self.mode = mode
        self._spine: deque[tuple[int, int]] = deque()  # (value, arrival)
        self._next_arrival = 0
        self._front_arrival = 0
        self.movements = 0

    def __len__(self) -> int:
        return self._next_arrival - self._front_arrival

    def add(self, value) -> None:
        if self.mode == "min":
            while self._spine and self._spine[-1][0] > value:
                self._spine.pop()
                self.movements += 1
        else:
            while self._spine and self._spine[-1][0] < value:
                self._spine.pop()
                self.movements += 1
        self._spine.append((value, self._next_arrival))
        self.movements += 1
        self._next_arrival += 1

    def remove(self) -> None:
        """Drop the oldest live element."""
        if len(self) == 0:
            raise IndexError("remove from empty queue")
        if self._spine and self._spine[0][1] == self._front_arrival:
            self._spine.popleft()
            self.movements += 1
        self._front_arrival += 1

    def extremum(self):
        if len(self) == 0:
            raise IndexError("extremum of empty queue")
        return self._spine[0][0]
