"""Bundled scenario files."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

BUNDLED = ("sotif_lidar.scenario", "zadeh.scenario")


def bundled_path(name: str) -> Path:
    """Filesystem path of a bundled scenario; the ``.scenario`` suffix is optional."""
    if not name.endswith(".scenario"):
        name += ".scenario"
    if name not in BUNDLED:
        raise FileNotFoundError(f"no bundled scenario {name!r} (available: {', '.join(BUNDLED)})")
    return Path(str(resources.files(__package__) / name))
