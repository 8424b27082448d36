import json
import shutil
import subprocess
import sys

import pytest

from torix import cli
from torix import serialize as io
from torix.bundle import BundleData
from torix.exactlin import ProjectiveLinePoint as L
from torix.fan import make_hirzebruch
from torix.resolution import build_resolution

F0_BUNDLE = {"filtrations": [{"jump": 1, "line": ["1", "0"]}, {"jump": 1, "line": ["1", "1"]},
                             {"jump": 1, "line": ["0", "1"]}, {"jump": 1, "line": ["1", "2"]}]}
AABC = {"jumps": [1, 1, 1, 1], "partition": [[0], [1], [2], [3]],
        "cokernel_map": [["1", "1", "0", "1"], ["0", "0", "1", "1"]]}


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def test_resolve_golden(capsys, tmp_path):
    path = write(tmp_path, "b.json", F0_BUNDLE)
    code, out = run(capsys, "resolve", "--fan", "hirzebruch:0", "--bundle", path)
    assert code == 0
    doc = json.loads(out)
    assert doc["cokernel_map"] == [["1", "1", "0", "1"], ["0", "1", "1", "2"]]
    assert doc["coeffs"] == [["1", "0"], ["0", "1"], ["2", "1"], ["-1", "-1"]]
    assert doc["partition"] == [[0], [1], [2], [3]]
    assert out == io.dumps(doc)


def test_output_is_byte_identical(capsys, tmp_path):
    path = write(tmp_path, "p.json", AABC)
    outs = [run(capsys, "skyscraper", "--fan", "f0", "--presentation", path)[1] for _ in range(2)]
    assert outs[0] == outs[1]
    assert json.loads(outs[0]) == {"support": [0], "lengths": {"0": 1, "1": 0, "2": 0, "3": 0}}
    gens = [run(capsys, "gen", "--seed", "5", "--fan", "f1", "--kind", "presentation")[1] for _ in range(2)]
    assert gens[0] == gens[1]


def test_resolution_roundtrip(capsys, tmp_path):
    path = write(tmp_path, "b.json", F0_BUNDLE)
    _, out = run(capsys, "resolve", "--fan", "f0", "--bundle", path)
    p = io.presentation_from_json(json.loads(out))
    r = build_resolution(BundleData(make_hirzebruch(0), (1, 1, 1, 1),
                                    (L(1, 0), L(1, 1), L(0, 1), L(1, 2))))
    assert p.as_resolution() == r


def test_bundle_normalize_roundtrip(capsys, tmp_path):
    raw = {"fan": "f0", "filtrations": [{"i1": -3, "i2": 1, "line": ["2", "4"]},
                                        {"i1": 0, "i2": 0}, {"i1": -1, "i2": 0, "line": ["0", "3"]},
                                        {"i1": 2, "i2": 3, "line": ["1", "0"]}]}
    path = write(tmp_path, "raw.json", raw)
    code, out = run(capsys, "bundle", "normalize", "--bundle", path)
    doc = json.loads(out)
    assert code == 0 and doc["twist"] == [-1, 0, 0, -3]
    assert [f["jump"] for f in doc["filtrations"]] == [4, 0, 1, 1]
    b, twist = io.bundle_from_json(doc)
    assert twist == (0, 0, 0, 0) and io.bundle_to_json(b) == {k: doc[k] for k in ("fan", "filtrations")}


def test_check_and_split(capsys, tmp_path):
    path = write(tmp_path, "b.json", F0_BUNDLE)
    code, out = run(capsys, "check", "--fan", "f0", "--bundle", path)
    doc = json.loads(out)
    assert code == 0 and doc["locally_free"] is True
    two = {"filtrations": [{"jump": 1, "line": ["1", "0"]}, {"jump": 2, "line": ["1", "0"]},
                           {"jump": 1, "line": ["0", "1"]}]}
    path = write(tmp_path, "two.json", two)
    code, out = run(capsys, "resolve", "--fan", "p2", "--bundle", path)
    doc = json.loads(out)
    assert code == 0 and doc["splits"] is True and doc["summands"] == [[1, 2, 0], [0, 0, 1]]


def test_not_locally_free_is_exit_zero(capsys, tmp_path):
    res = {"jumps": [1, 1, 1, 1], "partition": [[0], [1], [2], [3]],
           "coeffs": [["1", "0"], ["1", "0"], ["0", "1"], ["1", "1"]]}
    path = write(tmp_path, "r.json", res)
    code, out = run(capsys, "check", "--fan", "f0", "--resolution", path)
    assert code == 0 and json.loads(out)["locally_free"] is False


def test_oracle_matches_bidual_on_locally_free_input(capsys, tmp_path):
    path = write(tmp_path, "b.json", F0_BUNDLE)
    _, out = run(capsys, "resolve", "--fan", "f0", "--bundle", path)
    pres = write(tmp_path, "p.json", json.loads(out))
    code, out = run(capsys, "oracle", "--presentation", pres, "--cone", "0")
    doc = json.loads(out)
    assert code == 0 and doc["matches_bidual"] is True and doc["radius"] == 3
    assert len(doc["cells"]) == 49


def test_classes_and_moduli(capsys, tmp_path):
    code, out = run(capsys, "classes", "--s", "6")
    assert code == 0 and json.loads(out)["count"] == 10
    code, out = run(capsys, "classes", "--fan", "f0")
    doc = json.loads(out)
    assert doc["count"] == 3 and doc["locally_free_count"] == 1
    cfg = write(tmp_path, "c.json", {"m": 2, "points": [["2", "1"], ["0", "1"], ["2", "1"], ["0", "1"]]})
    _, out = run(capsys, "moduli", "--config", cfg)
    assert json.loads(out)["value"] == "1"
    cfg = write(tmp_path, "c2.json", {"m": 2, "points": [["1", "0"], ["1", "0"], ["1", "0"], ["0", "1"],
                                                          ["0", "1"], ["1", "1"]]})
    _, out = run(capsys, "moduli", "--config", cfg)
    assert json.loads(out)["class"] == {"kind": "properly-semistable", "split": [[0, 1, 2], [3, 4, 5]]}


def test_stability_and_equiv(capsys, tmp_path):
    cfg = write(tmp_path, "a.json", {"matrix": [["1", "0"], ["1", "0"], ["0", "1"], ["0", "1"]]})
    _, out = run(capsys, "stability", "--config", cfg, "--mode", "grass-torus")
    assert json.loads(out) == {"status": "properly-semistable", "witness": [0, 1]}
    a = write(tmp_path, "x.json", {"filtrations": [{"jump": 1, "line": ["1", "0"]}, {"jump": 1, "line": ["1", "1"]},
                                                   {"jump": 1, "line": ["0", "1"]}]})
    b = write(tmp_path, "y.json", {"filtrations": [{"jump": 1, "line": ["1", "2"]}, {"jump": 1, "line": ["1", "5"]},
                                                   {"jump": 1, "line": ["1", "-3"]}]})
    code, out = run(capsys, "equiv", "--fan", "p2", a, b)
    assert code == 0 and json.loads(out) == {"equivalent": True}


@pytest.mark.parametrize("argv", [
    ["resolve", "--fan", "hirzebruch:x", "--bundle", "missing.json"],
    ["classes", "--s", "5"],
    ["fan", "validate", "--fan", "file:{bad}"],
    ["resolve", "--fan", "p2", "--bundle", "{short}"],
])
def test_bad_input_exit_two(capsys, tmp_path, argv):
    bad = write(tmp_path, "bad.json", {"rays": [[1, 0], [0, 1], [-1, -2]]})
    short = write(tmp_path, "short.json", {"filtrations": [{"jump": 1, "line": ["1", "0"]}]})
    argv = [a.format(bad=bad, short=short) for a in argv]
    code, out = run(capsys, *argv)
    assert code == 2
    assert "error" in json.loads(out)


def test_text_output(capsys, monkeypatch):
    monkeypatch.setenv("TORIX_NO_COLOR", "1")
    code, out = run(capsys, "--output", "text", "classes", "--s", "4")
    assert code == 0 and "count: 3" in out and "\033" not in out


def test_console_script():
    exe = shutil.which("torix")
    cmd = [exe] if exe else [sys.executable, "-m", "torix"]
    proc = subprocess.run(cmd + ["fan", "make", "--fan", "p2", "--blowup", "0"],
                          capture_output=True, text=True, check=True)
    doc = json.loads(proc.stdout)
    assert len(doc["rays"]) == 4 and doc["valid"] is True
