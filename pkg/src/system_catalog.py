"""Named harmonic systems, mergeable with config/harmonic_systems.json."""

from __future__ import annotations

import copy
import json
import sys
from pathlib import Path
from typing import Any, Dict, Optional

from src.env_config import CONFIG_DIR
from src.errors import DomainError
from src.harmony import HarmonicSystem

HARMONIC_SYSTEMS_PATH = CONFIG_DIR / "harmonic_systems.json"

_PATCHABLE_FIELDS = ("description", "n", "q", "t", "s")
_REQUIRED_FIELDS = ("n", "q", "t", "s")


class SystemCatalog:
    """Lookup table of named (n, q, t, s) systems."""

    SYSTEMS_CONFIG = {
        # === 10-TET, fifth at label 7 ===
        "acoustic": {
            "description": "10-TET (4,3) thirds, modally degenerate",
            "n": 10, "q": 7, "t": 4, "s": 3,
        },
        "tritone": {
            "description": "10-TET (5,2) thirds, tritone major third",
            "n": 10, "q": 7, "t": 5, "s": 2,
        },
        "wide": {
            "description": "10-TET (6,1) thirds, cyclic (10_3) configuration",
            "n": 10, "q": 7, "t": 6, "s": 1,
        },
        # === 12-TET ===
        "classical": {
            "description": "12-TET major/minor triads",
            "n": 12, "q": 7, "t": 4, "s": 3,
        },
    }

    def __init__(self, overrides_path: Optional[Path] = None):
        self.overrides_path = Path(overrides_path) if overrides_path else HARMONIC_SYSTEMS_PATH
        self.systems_config = self._load_systems_config()

    def _load_systems_config(self) -> Dict[str, Dict[str, Any]]:
        """
        Load the catalog.
        - Base: SYSTEMS_CONFIG (class-level)
        - Optional overrides: config/harmonic_systems.json
        """
        merged = copy.deepcopy(self.SYSTEMS_CONFIG)
        overrides: dict[str, Any] = {}
        if self.overrides_path.exists():
            try:
                loaded = json.loads(self.overrides_path.read_text(encoding="utf-8"))
            except (OSError, ValueError) as e:
                print(f"[WARN] Failed to load {self.overrides_path}: {e}", file=sys.stderr)
            else:
                if isinstance(loaded, dict):
                    overrides = loaded
                else:
                    print(f"[WARN] Invalid format in {self.overrides_path}: expected object", file=sys.stderr)

        for name, patch in overrides.items():
            if name.startswith("_"):
                continue
            if not isinstance(patch, dict):
                print(f"[WARN] Invalid override for {name}: expected object", file=sys.stderr)
                continue
            if name not in merged:
                if not all(field in patch for field in _REQUIRED_FIELDS):
                    print(f"[WARN] Unknown system in override without n, q, t, s: {name}", file=sys.stderr)
                    continue
                merged[name] = {"description": ""}

            candidate = dict(merged[name])
            for field in _PATCHABLE_FIELDS:
                if field in patch:
                    candidate[field] = patch[field]
            try:
                self._to_system(candidate)
            except (DomainError, TypeError, ValueError) as e:
                print(f"[WARN] Invalid override for {name}: {e}", file=sys.stderr)
                if name not in self.SYSTEMS_CONFIG:
                    del merged[name]
                continue
            merged[name] = candidate

        return merged

    @staticmethod
    def _to_system(entry: Dict[str, Any]) -> HarmonicSystem:
        values = {field: entry[field] for field in _REQUIRED_FIELDS}
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in values.values()):
            raise TypeError("n, q, t, s must be integers")
        return HarmonicSystem(**values)

    def names(self) -> list[str]:
        return sorted(self.systems_config)

    def get(self, name: str) -> HarmonicSystem:
        key = name.strip().lower()
        if key not in self.systems_config:
            raise DomainError(f"unknown system {name!r}; known: {', '.join(self.names())}")
        return self._to_system(self.systems_config[key])

    def describe(self, name: str) -> str:
        return self.systems_config[name.strip().lower()].get("description", "")

    def name_of(self, system: HarmonicSystem) -> Optional[str]:
        for name in self.names():
            if self.get(name) == system:
                return name
        return None

    def list_systems(self) -> list[str]:
        """One formatted line per system."""
        lines = []
        for name in self.names():
            system = self.get(name)
            lines.append(f"{name:<10} {system.label:<14} delta={system.delta:<3} {self.describe(name)}")
        return lines
