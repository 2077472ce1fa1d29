"""CLI smoke tests: subcommand surface, exit codes, deterministic outputs."""

import json
import os
import subprocess

import pytest

CLI = os.environ.get("IMGLAB_CLI")

pytestmark = pytest.mark.skipif(not CLI, reason="IMGLAB_CLI not set")


def run(*args, **kwargs):
    return subprocess.run([CLI, *args], capture_output=True, text=True,
                          **kwargs)


def test_word_commands():
    assert run("word", "reduce", "aab").stdout == "b\n"
    assert run("word", "trivial", "acacacac").stdout == "true\n"
    assert run("word", "trivial", "acac").stdout == "false\n"
    assert run("word", "order", "ab").stdout == "8\n"
    assert run("word", "order", "ab", "--cap", "7").stdout == "exceeds-cap\n"
    assert run("word", "act", "c", "000").stdout == "001\n"
    assert run("word", "section", "ab", "00").stdout == "b\n"


def test_exit_codes():
    assert run("word", "reduce", "aab").returncode == 0
    assert run("word", "reduce", "xq").returncode == 2
    assert run("no-such-command").returncode == 2
    assert run("schreier", "build", "--level", "99").returncode == 2
    assert run("relators", "verify", "--max-n", "2").returncode == 0


def test_spectrum_eigs_level1():
    out = run("spectrum", "eigs", "--level", "1").stdout.splitlines()
    assert out[0] == "eigenvalue,multiplicity"
    assert out[1] == "0.333333333333,1"
    assert out[2] == "1.0,1"


def test_deterministic_file_output_with_sidecar(tmp_path):
    target = tmp_path / "spectrum.csv"
    for _ in range(2):
        result = run("-o", str(target), "spectrum", "eigs", "--level", "3")
        assert result.returncode == 0
    first = target.read_bytes()
    result = run("-o", str(target), "spectrum", "eigs", "--level", "3")
    assert result.returncode == 0
    assert target.read_bytes() == first

    meta = json.loads((tmp_path / "spectrum.csv.meta.json").read_text())
    assert meta["tool"] == "imglab"
    assert meta["subcommand"] == "spectrum eigs"
    assert meta["options"]["level"] == 3
    assert "wall_ms" in meta


def test_schreier_csv():
    out = run("schreier", "build", "--level", "1", "--format", "csv").stdout
    lines = out.splitlines()
    assert lines[0] == "source,target,label"
    assert len(lines) == 7  # header + 3 generators x 2 vertices
    assert "0,1,a" in lines


def test_pencil_and_measure():
    schur = run("pencil", "schur-check", "--level", "3", "--samples", "20",
                "--seed", "5")
    assert schur.returncode == 0
    report = json.loads(schur.stdout)
    assert report["ok"]

    incl = run("pencil", "inclusion", "--level", "2")
    assert incl.returncode == 0
    assert json.loads(incl.stdout)["all_accounted"]

    fp = json.loads(run("measure", "fixed-point").stdout)
    assert abs(fp["x"] - 0.4786202932) <= 1e-9

    walk = run("measure", "walk", "--returns", "20000", "--seed", "3")
    data = json.loads(walk.stdout)
    assert data["l1_distance"] < 0.05
    walk2 = run("measure", "walk", "--returns", "20000", "--seed", "3")
    assert json.loads(walk2.stdout)["tallies"] == data["tallies"]


def test_automaton_and_relators():
    assert run("automaton", "check", "--depth", "6").stdout == "ok\n"
    dot = run("automaton", "dot").stdout
    assert dot.count("->") == 8
    report = run("relators", "verify", "--max-n", "1").stdout
    assert report.splitlines()[0] == "family,n,length,verified,milliseconds"


def test_attractor_csv():
    out = run("attractor", "--depth", "0", "--grid", "9", "--box",
              "-2", "2", "-2", "2", "-2", "2").stdout
    assert out.splitlines()[0] == "y,z,lambda"
    assert len(out.splitlines()) > 1


def test_config_file(tmp_path):
    config = tmp_path / "run.cfg"
    config.write_text("[measure.walk]\nreturns=10000\nseed=9\n")
    out = run("--config", str(config), "measure", "walk")
    data = json.loads(out.stdout)
    assert data["returns"] == 10000
    assert data["seed"] == 9
    # Flags override config values.
    out2 = run("--config", str(config), "measure", "walk", "--seed", "11")
    assert json.loads(out2.stdout)["seed"] == 11
