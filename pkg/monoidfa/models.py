"""Frozen dataclasses for the workspace manifest."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from monoidfa.config import Settings


@dataclass(frozen=True)
class ArtifactRef:
    """One named artifact: its kind and the file holding it (relative to the manifest)."""

    name: str
    kind: str
    path: str

    def to_dict(self) -> dict:
        return {"kind": self.kind, "path": self.path}


@dataclass(frozen=True)
class WorkspaceManifest:
    artifacts: tuple[ArtifactRef, ...] = field(default_factory=tuple)
    settings: Optional[Settings] = None

    @classmethod
    def from_dict(cls, data: dict) -> WorkspaceManifest:
        """Create a manifest from validated YAML data.

        Raises:
            KeyError: If an artifact entry lacks ``kind`` or ``path``.
        """
        artifacts = tuple(
            ArtifactRef(name=str(name), kind=str(entry["kind"]), path=str(entry["path"]))
            for name, entry in data.get("artifacts", {}).items()
        )
        settings = Settings.from_dict(data["settings"]) if data.get("settings") else None
        return cls(artifacts=artifacts, settings=settings)

    def to_dict(self) -> dict:
        data: dict = {"artifacts": {a.name: a.to_dict() for a in self.artifacts}}
        if self.settings is not None:
            data["settings"] = self.settings.to_dict()
        return data

    def get(self, name: str) -> Optional[ArtifactRef]:
        return next((a for a in self.artifacts if a.name == name), None)
