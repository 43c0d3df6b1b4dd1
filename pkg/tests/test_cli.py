from __future__ import annotations

import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from dirac.cli import main

GOLDEN = Path(__file__).parent / "golden"
EXPECTED = GOLDEN / "expected"
REGEN = os.environ.get("DIRAC_REGEN_GOLDEN") == "1"

# name, argv (with {g} for the golden directory), exit code
CASES = [
    ("check_graph_dxdy", ["check", "{g}/graph_dxdy_r3.json"], 0),
    ("check_graph_zdxdy", ["check", "{g}/graph_zdxdy_r3.json"], 2),
    ("check_half_angle", ["check", "{g}/half_angle.json"], 0),
    ("classify_half_angle", ["classify", "{g}/half_angle.json"], 0),
    ("classify_constant", ["classify", "{g}/constant_torus.json"], 0),
    ("classify_odd", ["classify", "{g}/odd_dx.json"], 0),
    ("decompose_graph_dxdy", ["decompose", "{g}/graph_dxdy_r3.json", "--grid", "3"], 0),
    ("decompose_poisson_z", ["decompose", "{g}/poisson_z.json", "--grid", "3"], 0),
    ("decompose_even_x", ["decompose", "{g}/even_poisson_x.json", "--grid", "3"], 0),
    ("bracket_dx_xdy", ["bracket", "{g}/bracket_dx_xdy.json"], 0),
    ("bracket_self", ["bracket", "{g}/bracket_self.json"], 0),
    ("random_2_even_torus_7", ["random", "--dim", "2", "--parity", "even", "--domain", "torus", "--seed", "7"], 0),
    ("random_2_odd_affine_3", ["random", "--dim", "2", "--parity", "odd", "--domain", "affine", "--seed", "3"], 0),
    ("random_3_odd_affine_1", ["random", "--dim", "3", "--parity", "odd", "--seed", "1"], 0),
]

STRATIFY_CASES = [
    ("stratify_poisson_z", "poisson_z.json", ["--grid", "9"]),
    ("stratify_constant_torus", "constant_torus.json", ["--grid", "8"]),
    ("stratify_even_x", "even_poisson_x.json", ["--grid", "9"]),
    ("stratify_even_x_range", "even_poisson_x.json", ["--grid", "5", "--range", "0,1/2"]),
]


def run(argv):
    out = io.StringIO()
    code = main([a.format(g=GOLDEN) for a in argv], out=out)
    return code, out.getvalue()


def compare(path: Path, text: str):
    if REGEN:
        path.parent.mkdir(exist_ok=True)
        path.write_text(text, encoding="utf-8")
    assert text == path.read_text(encoding="utf-8")


@pytest.mark.parametrize("name, argv, code", CASES, ids=[c[0] for c in CASES])
def test_golden_stdout(name, argv, code):
    got_code, text = run(argv)
    assert got_code == code
    compare(EXPECTED / f"{name}.out", text)
    # byte-stable on a second run
    assert run(argv) == (got_code, text)


@pytest.mark.parametrize("name, doc, extra", STRATIFY_CASES, ids=[c[0] for c in STRATIFY_CASES])
def test_golden_stratify(name, doc, extra, tmp_path):
    out = tmp_path / f"{name}.csv"
    code, _ = run(["stratify", f"{{g}}/{doc}", "--out", str(out)] + extra)
    assert code == 0
    csv_text = out.read_text(encoding="utf-8")
    summary = (tmp_path / f"{name}.summary.json").read_text(encoding="utf-8")
    compare(EXPECTED / f"{name}.csv", csv_text)
    compare(EXPECTED / f"{name}.summary.json", summary)
    # regenerating from the same document and grid is byte-identical
    run(["stratify", f"{{g}}/{doc}", "--out", str(out)] + extra)
    assert out.read_text(encoding="utf-8") == csv_text


def test_stratify_row_counts():
    code, text = run(["stratify", "{g}/poisson_z.json", "--grid", "9"])
    lines = text.splitlines()
    assert lines[0] == "x,y,z,a,b,flag"
    assert len(lines) == 1 + 729
    assert sum(1 for l in lines[1:] if l.endswith(",0,3,ok")) == 81
    assert all(l.split(",")[2] == "0" for l in lines[1:] if l.endswith(",0,3,ok"))


def test_check_witness_content():
    code, text = run(["check", "{g}/graph_zdxdy_r3.json"])
    report = json.loads(text)
    assert code == 2 and report["dirac"] is False
    assert report["witness"] == {"i": 0, "j": 1, "k": 2, "value": "1/2"}


@pytest.mark.parametrize(
    "doc, pointer",
    [
        ("non_isotropic.json", "/sections/0"),
        ("bad_expression.json", "/sections/0/covector/1"),
        ("bracket_mixed.json", "/sections/1/domain"),
    ],
)
def test_input_errors_cite_pointer(doc, pointer, capsys):
    cmd = "bracket" if doc.startswith("bracket") else "check"
    code, _ = run([cmd, f"{{g}}/{doc}"])
    assert code == 1
    assert pointer in capsys.readouterr().err


def test_malformed_documents(tmp_path, capsys):
    cases = {
        "not json": "",
        json.dumps({"dimension": 4, "domain": "affine", "sections": []}): "/dimension",
        json.dumps({"dimension": 2, "domain": "sphere", "sections": []}): "/domain",
        json.dumps({"dimension": 2, "domain": "affine", "sections": [{}]}): "/sections",
    }
    for i, (text, pointer) in enumerate(cases.items()):
        p = tmp_path / f"doc{i}.json"
        p.write_text(text)
        code, _ = run(["check", str(p)])
        assert code == 1
        assert pointer in capsys.readouterr().err


def test_parity_declaration_is_validated(tmp_path, capsys):
    doc = json.loads((GOLDEN / "graph_dxdy_r3.json").read_text())
    doc["parity"] = "odd"
    p = tmp_path / "wrong.json"
    p.write_text(json.dumps(doc))
    assert run(["check", str(p)])[0] == 1
    assert "/parity" in capsys.readouterr().err


def test_usage_errors(capsys):
    assert run(["decompose", "{g}/half_angle.json"])[0] == 1
    assert run(["classify", "{g}/poisson_z.json"])[0] == 1
    assert run(["random", "--dim", "3", "--parity", "odd", "--domain", "torus"])[0] == 1
    assert run(["stratify", "{g}/constant_torus.json", "--range", "0,1"])[0] == 1
    with pytest.raises(SystemExit) as info:
        run(["frobnicate"])
    assert info.value.code == 1
    capsys.readouterr()


def test_decompose_non_dirac_exits_2(capsys):
    assert run(["decompose", "{g}/graph_zdxdy_r3.json"])[0] == 2
    assert "dirac check" in capsys.readouterr().err


def test_classify_affine_even_note(tmp_path):
    doc = {"dimension": 2, "domain": "affine", "sections": [{"vector": ["1", "0"], "covector": ["0", "1"]}, {"vector": ["0", "1"], "covector": ["-1", "0"]}]}
    p = tmp_path / "affine_even.json"
    p.write_text(json.dumps(doc))
    code, text = run(["classify", str(p)])
    report = json.loads(text)
    assert code == 0 and (report["w1"], report["w2"]) == (0, 0) and "note" in report


def test_stdin_pipe_through_subprocess():
    env = dict(os.environ, PYTHONIOENCODING="utf-8")
    rand = subprocess.run(
        [sys.executable, "-m", "dirac", "random", "--dim", "2", "--parity", "even", "--domain", "torus", "--seed", "7"],
        capture_output=True, check=True, env=env,
    )
    check = subprocess.run([sys.executable, "-m", "dirac", "check", "-"], input=rand.stdout, capture_output=True, env=env)
    assert check.returncode == 0
    assert json.loads(check.stdout) == {"dirac": True}
