"""Access to the machine-readable layout schema shipped with the package."""

from __future__ import annotations

import importlib.resources as resources
import json


def layout_schema() -> dict:
    data = (resources.files("fallrisk") / "data" / "layout_schema.json").read_text(
        encoding="utf-8")
    return json.loads(data)
