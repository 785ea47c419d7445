"""Runtime settings: search budgets and output limits."""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Optional, Union

import yaml

from monoidfa.validator import validate_settings


@dataclass(frozen=True)
class Settings:
    budget: int = 1_000_000
    transition_monoid_limit: int = 1_000_000
    max_output_len: int = 8
    demo_word_len: int = 8

    @classmethod
    def from_dict(cls, data: dict) -> Settings:
        """Missing keys take defaults; unknown keys and non-positive values are rejected."""
        errors = validate_settings(data)
        if errors:
            raise ValueError("Invalid settings:\n" + "\n".join(f"  - {e}" for e in errors))
        return cls(**{f.name: int(data[f.name]) for f in fields(cls) if f.name in data})

    def to_dict(self) -> dict:
        return asdict(self)

    def with_budget(self, budget: Optional[int]) -> Settings:
        if budget is None:
            return self
        return Settings.from_dict({**self.to_dict(), "budget": budget})


DEFAULT_SETTINGS = Settings()


def load_settings(path: Optional[Union[str, Path]] = None) -> Settings:
    """Settings from a YAML mapping, or the defaults when no path is given.

    Raises:
        FileNotFoundError: If the file doesn't exist.
        ValueError: If the YAML is malformed or violates the settings schema.
    """
    if path is None:
        return DEFAULT_SETTINGS
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Settings file not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as exc:
        raise ValueError(f"Invalid YAML syntax in {path}: {exc}") from None
    if data is None:
        return DEFAULT_SETTINGS
    return Settings.from_dict(data)
