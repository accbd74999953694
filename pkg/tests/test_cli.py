import io
import json
import subprocess
import sys

import pytest

from multiehrhart.cli import main
from multiehrhart.io import load_document
from multiehrhart.polytope import GluedPolytope, chamber_samples
from multiehrhart.suite import write_corpus


@pytest.fixture(scope="module")
def corpus(tmp_path_factory):
    out = tmp_path_factory.mktemp("corpus")
    write_corpus(out)
    return out


def run(*argv):
    buf = io.StringIO()
    code = main([str(a) for a in argv], out=buf)
    return code, buf.getvalue()


def test_count_square(corpus):
    code, out = run("count", corpus / "square.json", "--t", "1,1,1,1")
    assert code == 0
    assert out.startswith("closed=9 interior=1")


def test_count_outside_chamber(corpus, capsys):
    code, _ = run("count", corpus / "square.json", "--t", "0,0,1,1")
    assert code == 3
    assert "not in chamber" in capsys.readouterr().err


def test_count_lshape(corpus):
    code, out = run("count", corpus / "lshape.json")
    assert code == 0 and out.startswith("closed=8 interior=0")


def test_methods_agree(corpus):
    for path in sorted(corpus.glob("*.json")):
        P = load_document(path).build()
        if isinstance(P, GluedPolytope):
            ts = [P.b, tuple(2 * x for x in P.b)]
        else:
            ts = [P.b] + chamber_samples(P, 4, 3, 0, spread=1)
        for t in ts:
            csv = ",".join(map(str, t))
            a = run("count", path, f"--t={csv}", "--method", "brute")[1].split(" method")[0]
            b = run("count", path, f"--t={csv}", "--method", "recursive")[1].split(" method")[0]
            assert a == b


def test_vertices_and_chamber(corpus):
    code, out = run("vertices", corpus / "triangle.json")
    assert code == 0 and out.count("vertex=") == 3
    assert "vertex=(0, 0) tight=1,2" in out
    assert run("chamber", corpus / "square.json", "--t", "2,0,1,1") == (0, "chamber=true\n")
    assert run("chamber", corpus / "square.json", "--t", "0,0,1,1") == (3, "chamber=false\n")


def test_fit_files(corpus, tmp_path):
    code, _ = run("fit", corpus / "square.json", "--out", tmp_path / "sq.json")
    assert code == 0
    data = json.loads((tmp_path / "sq.json").read_text())
    assert data["closed"]["period"] == [1, 1, 1, 1]
    assert len(data["closed"]["classes"]) == 1
    code, _ = run("fit", corpus / "halfslope.json", "--out", tmp_path / "hs.json")
    data = json.loads((tmp_path / "hs.json").read_text())
    assert code == 0 and data["closed"]["period"] == [2, 2, 2]
    assert run("fit", corpus / "square.json", "--seed", "0")[1] == (tmp_path / "sq.json").read_text()


def test_fit_budget_too_small(corpus, capsys):
    code, _ = run("fit", corpus / "square.json", "--samples", "3")
    assert code == 4
    assert "residue class" in capsys.readouterr().err


def test_verify_passes(corpus):
    assert run("verify", corpus / "square.json", "--theorem", "recip")[0] == 0
    assert run("verify", corpus / "square.json", "--theorem", "removed", "--T", "1")[0] == 0
    assert run("verify", corpus / "halfslope.json", "--theorem", "classical")[0] == 0
    assert run("verify", corpus / "lshape.json", "--theorem", "recip")[0] == 0


def test_verify_corrupted_fit(corpus, tmp_path):
    run("fit", corpus / "square.json", "--out", tmp_path / "sq.json")
    data = json.loads((tmp_path / "sq.json").read_text())
    data["closed"]["classes"][0]["terms"][0][1] = "2/1"
    (tmp_path / "bad.json").write_text(json.dumps(data))
    code, out = run("verify", corpus / "square.json", "--fit", tmp_path / "bad.json")
    assert code == 5
    first = out.splitlines()[0]
    assert first.startswith("violation t=")
    assert "first=" + first.split("t=")[1].split()[0] in out


def test_parse_error_exit_codes(corpus, tmp_path):
    (tmp_path / "junk.json").write_text("{")
    assert run("count", tmp_path / "junk.json")[0] == 2
    assert run("count", tmp_path / "missing.json")[0] == 2
    assert run("count", corpus / "square.json", "--t", "1,1")[0] == 2
    assert run("verify", corpus / "square.json", "--theorem", "removed", "--T", "9")[0] == 2
    with pytest.raises(SystemExit) as e:
        main(["count", str(corpus / "square.json"), "--t", "a,b"])
    assert e.value.code == 2


def test_suite_command(tmp_path):
    code, out = run("suite", "--seed", "0", "--out", tmp_path / "c")
    assert code == 0
    assert len(list((tmp_path / "c").glob("*.json"))) >= 20


def test_module_entry_point(corpus):
    proc = subprocess.run([sys.executable, "-m", "multiehrhart", "count", str(corpus / "square.json")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "closed=9" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "multiehrhart", "chamber", str(corpus / "square.json"),
                           "--t", "0,0,1,1"], capture_output=True, text=True)
    assert proc.returncode == 3
