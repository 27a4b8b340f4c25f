import json
import subprocess
import sys

import pytest

from qmatball.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_json_is_deterministic(capsys):
    args = ("analyze", "--n", "2", "--alpha", "0", "--beta", "-2", "--format", "json")
    c1, o1, _ = run(capsys, *args)
    c2, o2, _ = run(capsys, *args)
    assert c1 == c2 == 0 and o1 == o2
    doc = json.loads(o1)
    assert doc["schema_version"] == 1
    assert doc["result"]["case"] == 3 and doc["result"]["direct_sum"] is True


@pytest.mark.parametrize("fmt,marker", [("text", "k2\\k1"), ("svg", "<svg"), ("dot", "digraph")])
def test_analyze_formats(capsys, fmt, marker):
    code, out, _ = run(capsys, "analyze", "--n", "2", "--alpha", "0", "--beta", "0", "--format", fmt)
    assert code == 0 and marker in out


def test_render_svg_draws_lines(capsys):
    code, out, _ = run(capsys, "render", "--n", "2", "--alpha", "0", "--beta", "-3")
    assert code == 0 and out.count("<line") >= 5 and "L1+" in out


def test_negative_fraction_arguments(capsys):
    code, out, _ = run(capsys, "classify", "--n", "2", "--alpha", "-1/2", "--beta", "-3/2")
    assert code == 0 and "PrincipalUnitary" in out


def test_classify_integer_case_lists_submodules(capsys):
    code, out, _ = run(capsys, "classify", "--n", "2", "--alpha", "0", "--beta", "-1", "--format", "json")
    doc = json.loads(out)["result"]
    assert doc["unitarizable_submodules"] == ["k_1 = -1", "k_2 = 0"]


def test_classify_strange(capsys):
    code, out, _ = run(capsys, "classify", "--n", "2", "--alpha", "0", "--beta", "0", "--alpha-im", "1")
    assert code == 0 and "Strange" in out


def test_intertwiner_symbolic(capsys):
    code, out, _ = run(capsys, "intertwiner", "--n", "1", "--k", "0", "--k", "1", "--symbolic")
    assert code == 0 and "a[0] = 1" in out


def test_act(capsys):
    code, out, _ = run(capsys, "act", "--n", "2", "--word", "E1", "--vector", "z[2,1]")
    assert code == 0 and out.strip() != ""


@pytest.mark.parametrize("suite", ["confluence", "serre", "isotypic", "prop21"])
def test_verify_passes(capsys, suite):
    code, out, _ = run(capsys, "verify", suite, "--n", "2", "--max-degree", "2")
    assert code == 0 and "pass" in out


def test_verify_strict_prop21_fails(capsys):
    code, out, _ = run(capsys, "verify", "prop21", "--n", "2", "--strict")
    assert code == 1


@pytest.mark.parametrize(
    "argv",
    [
        ("verify", "bogus"),
        ("analyze", "--alpha", "x", "--beta", "0"),
        ("analyze", "--n", "2", "--alpha", "1/2", "--beta", "0"),
        ("act", "--n", "2", "--word", "E9", "--vector", "1"),
        ("act", "--n", "2", "--word", "E1", "--vector", "z[1,"),
        ("nosuchcommand",),
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "qmatball", "--version"], capture_output=True, text=True)
    assert r.returncode == 0 and "qmatball" in r.stdout
