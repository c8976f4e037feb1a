import json
import subprocess
import sys
from pathlib import Path

import pytest

from modcat.cli import run
from modcat.errors import ParseError, UnresolvedReference
from modcat.linalg import QQ, Field
from modcat.workspace import load_workspace

ROOT = Path(__file__).resolve().parent.parent
WS = ROOT / "workspaces"
DATA = Path(__file__).resolve().parent / "data"

COMMANDS = [
    ["validate", str(WS / "separating.json")],
    ["validate", str(WS / "group_c2.json")],
    ["validate", str(WS / "species_a2.json")],
    ["build-algebra", str(WS / "separating.json"), "R"],
    ["build-algebra", str(WS / "separating.json"), "W_R"],
    ["build-algebra", str(WS / "group_c2.json"), "k_C2"],
    ["build-algebra", str(WS / "species_a2.json"), "species"],
    ["convert", str(WS / "group_c2.json"), "rep-to-module", "sign"],
    ["convert", str(WS / "group_c2.json"), "roundtrip", "regular"],
    ["convert", str(WS / "group_c2.json"), "roundtrip", "sign"],
    ["convert", str(WS / "separating.json"), "module-to-rep", "P_y"],
    ["convert", str(WS / "separating.json"), "roundtrip", "P"],
    ["convert", str(WS / "species_a2.json"), "roundtrip", "V"],
    ["finite-type", str(WS / "separating.json"), "P_x"],
    ["finite-type", str(WS / "separating.json"), "R"],
    ["fg", str(WS / "separating.json"), "P_y"],
    ["demo", "section5"],
    ["demo", "group:2"],
    ["demo", "group:3", "--field", "fp:5"],
    ["demo", "species-a2"],
]


def _json(argv):
    code, text = run(argv)
    return code, json.loads(text)


@pytest.mark.parametrize("name", ["separating", "group_c2", "species_a2"])
def test_shipped_workspaces_validate(name):
    code, rep = _json(["validate", str(WS / f"{name}.json")])
    assert code == 0 and rep["status"] == "pass"
    assert all(f["verdict"] == "pass" for f in rep["findings"])


def test_nonassociative_category_fails():
    code, rep = _json(["validate", str(DATA / "nonassoc.json")])
    assert code == 1
    bad = [f for f in rep["findings"] if f["verdict"] == "fail"]
    assert bad[0]["witness"]["error"] == "NonAssociative"


def test_input_errors_exit_2():
    code, rep = _json(["validate", str(DATA / "dangling.json")])
    assert code == 2 and rep["findings"][0]["witness"]["error"] == "UnresolvedReference"
    assert rep["findings"][0]["witness"]["name"] == "kk"
    code, rep = _json(["validate", str(DATA / "broken_json.json")])
    assert code == 2 and rep["findings"][0]["witness"]["line"] == 5
    code, rep = _json(["demo", "nope"])
    assert code == 2 and rep["findings"][0]["witness"]["error"] == "UnknownDemo"


def test_bad_compositor_fails():
    code, rep = _json(["validate", str(DATA / "bad_compositor.json")])
    assert code == 1
    assert any(f["witness"].get("error") == "CompositorNotInvertible" for f in rep["findings"])


def test_build_algebra_artifacts():
    _, rep = _json(["build-algebra", str(WS / "separating.json"), "R"])
    assert rep["artifacts"]["algebra"]["dim"] == 4
    _, rep = _json(["build-algebra", str(WS / "group_c2.json"), "k_C2"])
    alg = rep["artifacts"]["algebra"]
    assert alg["mult"][1][1] == ["1", "0"]
    _, rep = _json(["build-algebra", str(WS / "species_a2.json"), "species"])
    assert rep["artifacts"]["algebra"]["dim"] == 5


def test_build_algebra_out_file(tmp_path):
    out = tmp_path / "alg.json"
    code, _ = run(["build-algebra", str(WS / "group_c2.json"), "k_C2", "--out", str(out)])
    assert code == 0 and json.loads(out.read_text())["dim"] == 2


def test_convert_examples():
    code, rep = _json(["convert", str(WS / "group_c2.json"), "rep-to-module", "sign"])
    assert code == 0 and rep["findings"][0]["witness"]["dim"] == 1
    code, rep = _json(["convert", str(WS / "group_c2.json"), "roundtrip", "regular"])
    assert code == 0 and rep["findings"][0]["witness"]["permutation"] is True
    code, rep = _json(["convert", str(WS / "separating.json"), "rep-to-module", "P", "--modulation", "M_R"])
    assert code == 1 and rep["findings"][0]["witness"]["error"] == "ModulationMismatch"


def test_finiteness_commands():
    code, rep = _json(["finite-type", str(WS / "separating.json"), "P_x"])
    assert code == 1 and rep["artifacts"]["finite_type"] is False
    code, rep = _json(["fg", str(WS / "separating.json"), "P_x"])
    assert code == 0 and rep["findings"][0]["witness"]["generators"] == 1
    code, rep = _json(["fg", str(WS / "separating.json"), "regular", "--gens", "[]"])
    assert code == 1


def test_demo_separating():
    code, rep = _json(["demo", "section5"])
    assert code == 0
    by = {(f["check"], f["location"]): f["witness"] for f in rep["findings"]}
    assert by[("algebra_dim", "R[C]")]["dim"] == 4
    assert by[("hom_zero", "Hom(k|_y, P_x|_y)")]["dim"] == 0


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: " ".join(Path(x).name for x in a))
def test_reports_are_deterministic(argv):
    first = run(argv)
    assert run(argv) == first
    assert run(argv + ["--format", "text"]) == run(argv + ["--format", "text"])


def test_deterministic_across_processes():
    argv = [sys.executable, "-m", "modcat", "demo", "section5"]
    a = subprocess.run(argv, capture_output=True, cwd=ROOT).stdout
    b = subprocess.run(argv, capture_output=True, cwd=ROOT).stdout
    assert a == b and a


def test_load_workspace_errors():
    with pytest.raises(ParseError):
        load_workspace('{"format_version": "2", "field": "q"}', QQ)
    with pytest.raises(UnresolvedReference):
        load_workspace((DATA / "dangling.json").read_text(), QQ).get("modulations", "M")


def test_config_dataclasses():
    import argparse
    from modcat.config import RunOptions, SweepConfig
    p = argparse.ArgumentParser()
    SweepConfig().add_arguments(p)
    cfg = SweepConfig.from_args(p.parse_args(["--seed", "7", "--max-rep-dim", "2"]))
    assert cfg.seed == 7 and cfg.max_rep_dim == 2 and cfg.modules_per_algebra == 8
    ns = argparse.Namespace(field="fp:3", seed=1, format="text")
    assert RunOptions.from_args(ns) == RunOptions(Field(3), 1, "text")
