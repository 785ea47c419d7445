"""Artifact lookup and YAML workspaces.

An artifact argument is resolved in order as: an existing file path, a name
in the loaded workspace, or the stem of a bundled fixture.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional, Union

import yaml

from monoidfa.config import Settings
from monoidfa.formats import parse_artifact, serialize_artifact
from monoidfa.models import ArtifactRef, WorkspaceManifest
from monoidfa.validator import load_manifest_data

logger = logging.getLogger(__name__)

# Bundled fixtures directory (relative to project root)
FIXTURES_DIR = Path(__file__).parent.parent / "fixtures"

KIND_BY_SUFFIX = {
    ".aut": "automaton",
    ".pda": "pda",
    ".sa": "sa",
    ".fst": "transducer",
    ".cfg": "grammar",
    ".group": "group",
    ".schreier": "schreier",
}


def kind_of(path: Path) -> str:
    try:
        return KIND_BY_SUFFIX[path.suffix]
    except KeyError:
        raise ValueError(
            f"cannot tell the artifact kind of '{path.name}'; expected a suffix in {sorted(KIND_BY_SUFFIX)}"
        ) from None


def resolve_artifact_path(name: str, fixtures_dir: Optional[Path] = None) -> Path:
    """Resolve a file path or a bundled fixture name.

    Raises:
        FileNotFoundError: If nothing matches.
    """
    fixtures_dir = fixtures_dir or FIXTURES_DIR
    candidate = Path(name)
    if candidate.exists() and candidate.is_file():
        return candidate
    for suffix in KIND_BY_SUFFIX:
        path = fixtures_dir / f"{name}{suffix}"
        if path.exists():
            return path
    raise FileNotFoundError(
        f"Artifact '{name}' not found. Searched as a direct path and in: {fixtures_dir}/"
    )


def list_fixtures(fixtures_dir: Optional[Path] = None) -> list[dict[str, str]]:
    """Bundled fixtures with their kinds, sorted by name."""
    fixtures_dir = fixtures_dir or FIXTURES_DIR
    results: list[dict[str, str]] = []
    if not fixtures_dir.exists():
        return results
    for path in sorted(fixtures_dir.iterdir()):
        if path.suffix in KIND_BY_SUFFIX:
            results.append({"name": path.stem, "kind": KIND_BY_SUFFIX[path.suffix], "path": str(path)})
    return results


def read_artifact(path: Path, kind: Optional[str] = None) -> Any:
    kind = kind or kind_of(path)
    text = path.read_text(encoding="utf-8")
    logger.debug("parsing %s as %s", path, kind)
    return parse_artifact(kind, text, str(path))


@dataclass
class Workspace:
    """Named artifacts loaded from a manifest directory."""

    root: Path
    manifest: WorkspaceManifest
    artifacts: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def load(cls, manifest_path: Union[str, Path]) -> Workspace:
        manifest_path = Path(manifest_path)
        manifest = WorkspaceManifest.from_dict(load_manifest_data(manifest_path))
        root = manifest_path.parent
        artifacts = {ref.name: read_artifact(root / ref.path, ref.kind) for ref in manifest.artifacts}
        logger.debug("loaded %d artifacts from %s", len(artifacts), manifest_path)
        return cls(root, manifest, artifacts)

    @property
    def settings(self) -> Optional[Settings]:
        return self.manifest.settings

    def kind(self, name: str) -> str:
        ref = self.manifest.get(name)
        if ref is None:
            raise KeyError(f"no artifact named '{name}' in the workspace")
        return ref.kind

    def add(self, name: str, kind: str, value: Any, path: Optional[str] = None) -> None:
        refs = [r for r in self.manifest.artifacts if r.name != name]
        suffix = next(s for s, k in KIND_BY_SUFFIX.items() if k == kind)
        refs.append(ArtifactRef(name, kind, path or f"{name}{suffix}"))
        self.manifest = WorkspaceManifest(tuple(refs), self.manifest.settings)
        self.artifacts[name] = value

    def save(self, manifest_name: str = "workspace.yaml") -> list[Path]:
        """Re-serialize every artifact and the manifest; returns the written paths."""
        self.root.mkdir(parents=True, exist_ok=True)
        written: list[Path] = []
        for ref in self.manifest.artifacts:
            path = self.root / ref.path
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(serialize_artifact(ref.kind, self.artifacts[ref.name]), encoding="utf-8")
            written.append(path)
        manifest_path = self.root / manifest_name
        with open(manifest_path, "w", encoding="utf-8") as f:
            yaml.safe_dump(self.manifest.to_dict(), f, sort_keys=False)
        written.append(manifest_path)
        return written


def load_artifact(name: str, workspace: Optional[Workspace] = None, fixtures_dir: Optional[Path] = None) -> tuple[str, Any]:
    """(kind, value) for a path, a workspace name or a fixture name."""
    candidate = Path(name)
    if candidate.exists() and candidate.is_file():
        return kind_of(candidate), read_artifact(candidate)
    if workspace is not None and name in workspace.artifacts:
        return workspace.kind(name), workspace.artifacts[name]
    path = resolve_artifact_path(name, fixtures_dir)
    return kind_of(path), read_artifact(path)
