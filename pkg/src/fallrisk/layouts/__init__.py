"""Bundled example layouts.

Four canonical patient-room configurations (outboard_footwall,
inboard_footwall, inboard_headwall, nested), a grab-bar variant used by the
relational checks, a small corridor room with a single handrail for planner
behavior tests, and the worked single-cell example room.
"""

from __future__ import annotations

import importlib.resources as resources

from ..room import RoomLayout, parse_layout


def available() -> list[str]:
    names = []
    for entry in resources.files(__package__).iterdir():
        if entry.name.endswith(".room"):
            names.append(entry.name[:-len(".room")])
    return sorted(names)


def text(name: str) -> str:
    entry = resources.files(__package__) / f"{name}.room"
    if not entry.is_file():
        raise KeyError(f"no bundled layout named {name!r}; "
                       f"available: {', '.join(available())}")
    return entry.read_text(encoding="utf-8")


def load(name: str) -> RoomLayout:
    return parse_layout(text(name))
