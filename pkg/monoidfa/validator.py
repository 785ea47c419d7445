"""Validation of YAML settings files and workspace manifests."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

import yaml

SETTINGS_SCHEMA = {
    "budget": int,
    "transition_monoid_limit": int,
    "max_output_len": int,
    "demo_word_len": int,
}

ARTIFACT_KINDS = ("automaton", "pda", "sa", "transducer", "grammar", "group", "schreier")

WORKSPACE_SCHEMA = {
    "required_roots": ["artifacts"],
    "optional_roots": ["settings"],
    "artifact": ["kind", "path"],
}


@dataclass(frozen=True)
class ValidationResult:
    """Immutable validation outcome."""

    path: str
    errors: tuple[str, ...] = field(default_factory=tuple)

    @property
    def is_valid(self) -> bool:
        return len(self.errors) == 0


def validate_settings(data: object) -> list[str]:
    """Every key known, every value a positive integer."""
    if not isinstance(data, dict):
        return [f"Expected a YAML mapping, got {type(data).__name__}"]
    errors: list[str] = []
    for key, value in data.items():
        if key not in SETTINGS_SCHEMA:
            errors.append(f"Unknown setting: '{key}'")
            continue
        if isinstance(value, bool) or not isinstance(value, int):
            errors.append(f"Setting '{key}' value '{value}' is not an integer")
        elif value <= 0:
            errors.append(f"Setting '{key}' value {value} must be positive")
    return errors


def validate_structure(data: object) -> list[str]:
    """Validate a workspace manifest dictionary.

    Returns a list of error messages (empty if valid).
    """
    if not isinstance(data, dict):
        return [f"Expected a YAML mapping, got {type(data).__name__}"]

    errors: list[str] = []
    for root in WORKSPACE_SCHEMA["required_roots"]:
        if root not in data:
            errors.append(f"Missing root section: '{root}'")
    known = set(WORKSPACE_SCHEMA["required_roots"]) | set(WORKSPACE_SCHEMA["optional_roots"])
    for root in data:
        if root not in known:
            errors.append(f"Unknown root section: '{root}'")

    artifacts = data.get("artifacts")
    if "artifacts" in data and not isinstance(artifacts, dict):
        errors.append("Section 'artifacts' must map names to entries")
    elif isinstance(artifacts, dict):
        for name, entry in artifacts.items():
            if not isinstance(entry, dict):
                errors.append(f"Artifact '{name}' must be a mapping")
                continue
            for fld in WORKSPACE_SCHEMA["artifact"]:
                if fld not in entry:
                    errors.append(f"Missing field in artifact '{name}': '{fld}'")
            kind = entry.get("kind")
            if kind is not None and kind not in ARTIFACT_KINDS:
                errors.append(f"Artifact '{name}' has unknown kind '{kind}'")

    if "settings" in data:
        errors.extend(validate_settings(data["settings"]))
    return errors


def _read_yaml(path: Path) -> tuple[object, list[str]]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return yaml.safe_load(f), []
    except yaml.YAMLError as exc:
        return None, [f"Invalid YAML syntax: {exc}"]


def validate_file(path: Union[str, Path]) -> ValidationResult:
    """Validate a workspace manifest or, when it has no ``artifacts`` section, a settings file."""
    path = Path(path)
    str_path = str(path)

    if not path.exists():
        return ValidationResult(path=str_path, errors=(f"File not found: {str_path}",))

    if path.suffix not in (".yaml", ".yml"):
        return ValidationResult(path=str_path, errors=(f"Not a YAML file: {str_path}",))

    data, errors = _read_yaml(path)
    if errors:
        return ValidationResult(path=str_path, errors=tuple(errors))

    if not data:
        return ValidationResult(path=str_path, errors=("File is empty",))

    if isinstance(data, dict) and "artifacts" not in data:
        return ValidationResult(path=str_path, errors=tuple(validate_settings(data)))
    return ValidationResult(path=str_path, errors=tuple(validate_structure(data)))


def load_manifest_data(path: Union[str, Path]) -> dict:
    """Load and return raw YAML data from a workspace manifest.

    Raises:
        FileNotFoundError: If the file doesn't exist.
        ValueError: If the file is empty, not YAML, or invalid.
    """
    path = Path(path)

    if not path.exists():
        raise FileNotFoundError(f"Workspace manifest not found: {path}")

    data, errors = _read_yaml(path)
    if errors:
        raise ValueError(f"{path}: {errors[0]}")

    if not data:
        raise ValueError(f"Workspace manifest is empty: {path}")

    errors = validate_structure(data)
    if errors:
        raise ValueError(f"Workspace validation failed for {path}:\n" + "\n".join(f"  - {e}" for e in errors))

    return data
