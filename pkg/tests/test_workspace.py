"""Tests for artifact lookup, fixtures and YAML workspaces."""

from pathlib import Path

import pytest
import yaml

from monoidfa.automaton import Automaton
from monoidfa.figures import astar_bstar_automaton, free_wp_grammar
from monoidfa.formats import serialize_automaton
from monoidfa.grammar import Grammar
from monoidfa.pushdown import Pda
from monoidfa.workspace import (
    FIXTURES_DIR,
    Workspace,
    kind_of,
    list_fixtures,
    load_artifact,
    resolve_artifact_path,
)


@pytest.fixture
def workspace() -> Workspace:
    return Workspace.load(FIXTURES_DIR / "workspace.yaml")


class TestKinds:
    @pytest.mark.parametrize(
        "name, kind",
        [("x.aut", "automaton"), ("x.pda", "pda"), ("x.sa", "sa"), ("x.fst", "transducer"),
         ("x.cfg", "grammar"), ("x.group", "group"), ("x.schreier", "schreier")],
    )
    def test_kind_of(self, name: str, kind: str) -> None:
        assert kind_of(Path(name)) == kind

    def test_unknown_suffix(self) -> None:
        with pytest.raises(ValueError, match="cannot tell"):
            kind_of(Path("notes.txt"))


class TestFixtures:
    def test_list(self) -> None:
        names = {info["name"] for info in list_fixtures()}
        assert {"fig1", "fig2", "fig8", "grammar_g", "f2_mod2", "s3"} <= names
        assert "workspace" not in names

    def test_list_missing_directory(self, tmp_path: Path) -> None:
        assert list_fixtures(tmp_path / "none") == []

    def test_resolve_by_name(self) -> None:
        assert resolve_artifact_path("fig2") == FIXTURES_DIR / "fig2.pda"

    def test_resolve_missing(self) -> None:
        with pytest.raises(FileNotFoundError, match="not found"):
            resolve_artifact_path("no-such-thing")


class TestLoadArtifact:
    def test_fixture_name(self) -> None:
        kind, value = load_artifact("fig1")
        assert kind == "automaton"
        assert isinstance(value, Automaton)

    def test_path(self, tmp_path: Path) -> None:
        path = tmp_path / "mine.aut"
        path.write_text(serialize_automaton(astar_bstar_automaton()), encoding="utf-8")
        kind, value = load_artifact(str(path))
        assert kind == "automaton"
        assert value.names == ("v0", "v1")

    def test_workspace_name(self, workspace: Workspace) -> None:
        kind, value = load_artifact("anbn", workspace)
        assert kind == "pda"
        assert isinstance(value, Pda)

    def test_workspace_does_not_hide_fixtures(self, workspace: Workspace) -> None:
        kind, _ = load_artifact("s3", workspace)
        assert kind == "group"


class TestWorkspace:
    def test_load(self, workspace: Workspace) -> None:
        assert set(workspace.artifacts) == {"astar-bstar", "anbn", "anbncn", "free-wp"}
        assert workspace.kind("free-wp") == "grammar"
        assert workspace.settings is not None
        assert workspace.settings.budget == 200000
        assert workspace.settings.max_output_len == 6

    def test_unknown_name(self, workspace: Workspace) -> None:
        with pytest.raises(KeyError):
            workspace.kind("nothing")

    def test_save_and_reload(self, workspace: Workspace, tmp_path: Path) -> None:
        copy = Workspace(tmp_path / "ws", workspace.manifest, dict(workspace.artifacts))
        copy.add("wp", "grammar", free_wp_grammar())
        written = copy.save()
        assert tmp_path / "ws" / "wp.cfg" in written
        assert tmp_path / "ws" / "workspace.yaml" in written
        reloaded = Workspace.load(tmp_path / "ws" / "workspace.yaml")
        assert set(reloaded.artifacts) == {"astar-bstar", "anbn", "anbncn", "free-wp", "wp"}
        assert isinstance(reloaded.artifacts["wp"], Grammar)
        assert reloaded.artifacts["astar-bstar"] == workspace.artifacts["astar-bstar"]
        assert reloaded.settings == workspace.settings

    def test_add_replaces_entry(self, workspace: Workspace) -> None:
        workspace.add("anbn", "automaton", astar_bstar_automaton(), path="other.aut")
        assert workspace.kind("anbn") == "automaton"
        assert len(workspace.manifest.artifacts) == 4

    def test_saved_manifest_is_yaml(self, workspace: Workspace, tmp_path: Path) -> None:
        copy = Workspace(tmp_path, workspace.manifest, dict(workspace.artifacts))
        copy.save("manifest.yaml")
        data = yaml.safe_load((tmp_path / "manifest.yaml").read_text(encoding="utf-8"))
        assert data["artifacts"]["anbn"] == {"kind": "pda", "path": "fig2.pda"}
        assert data["settings"]["budget"] == 200000
