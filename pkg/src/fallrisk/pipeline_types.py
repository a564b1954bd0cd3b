"""Shared pipeline value types (kept dependency-free to avoid import cycles)."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Scenario:
    """A start/goal fixture pair and how many trajectories to sample for it."""

    start: str
    goal: str
    frequency: int = 1

    def __post_init__(self):
        if self.frequency < 1:
            raise ValueError("scenario frequency must be >= 1")
