import json
import re
import subprocess
import sys

import pytest

from pencil_trisection import corpus
from pencil_trisection.builder import build_diagram, parse_diagram
from pencil_trisection.cli import main
from pencil_trisection.corpus import CorpusEntry, CorpusError
from pencil_trisection.pencil import PencilInvariants, expected_invariants
from pencil_trisection.render import render_svg


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- subcommands ----------------------------------------------------------------

def test_invariants_cp2(capsys):
    assert run(capsys, "invariants", "corpus:cp2_lines") == (0, "g=1 k=0 chi=3 H1=0\n", "")


def test_invariants_achiral(capsys):
    code, out, _ = run(capsys, "invariants", "corpus:cp2_lines_achiral")
    assert (code, out) == (0, "g=5 k=2 chi=1 H1=Z\n")


def test_check_truncated_fails_with_deviation(capsys):
    code, out, _ = run(capsys, "check", "corpus:genus1_truncated")
    assert code == 1
    assert "monodromy: FAIL" in out
    assert re.search(r"^\s+0\s+0$", out, re.M) and re.search(r"^\s+-1\s+0$", out, re.M)


def test_check_passes(capsys):
    code, out, _ = run(capsys, "check", "corpus:genus1_pencil")
    assert code == 0 and "monodromy: PASS" in out


def test_corpus_show_unknown(capsys):
    code, out, err = run(capsys, "corpus", "show", "nosuch")
    assert code == 2 and out == ""
    assert err.startswith("E:2:")


def test_corpus_list_and_show(capsys):
    code, out, _ = run(capsys, "corpus", "list")
    assert code == 0
    assert [line.split("\t")[0] for line in out.splitlines()] == corpus.names()
    code, out, _ = run(capsys, "corpus", "show", "cp2_conics")
    shown = json.loads(out)
    assert shown["expected"] == {"g": 10, "k": 3, "chi": 3, "h1": "0", "monodromy_ok": True}
    code, _, err = run(capsys, "corpus", "show")
    assert code == 2 and "NAME" in err


def test_verify_builds_when_no_diagram(capsys):
    code, out, _ = run(capsys, "verify", "corpus:cp2_lines")
    assert code == 0
    result = json.loads(out)
    assert result["report"]["status"] == "HOMOLOGY-CERTIFIED"
    assert [[c["class"] for c in f] for f in result["diagram"]["families"]] == [[[1, 0]], [[0, 1]], [[1, 1]]]


def test_verify_with_diagram_file(capsys, tmp_path):
    out_file = tmp_path / "d.json"
    assert run(capsys, "trisect", "corpus:cp2_conics", "-o", str(out_file))[0] == 0
    code, out, _ = run(capsys, "verify", "corpus:cp2_conics", "-d", str(out_file))
    assert code == 0 and json.loads(out)["report"]["overall"] is True
    # a bad diagram against the right pencil: exit 1 and the failing check named
    obj = json.loads(out_file.read_text())
    obj["families"][2][0]["class"] = [2 * x for x in obj["families"][2][0]["class"]]
    out_file.write_text(json.dumps(obj))
    code, out, _ = run(capsys, "verify", "corpus:cp2_conics", "-d", str(out_file))
    failed = [c["name"] for c in json.loads(out)["report"]["checks"] if not c["passed"]]
    assert code == 1 and "cut_system_3" in failed


def test_verify_basis_mismatch_is_input_error(capsys, tmp_path):
    f = tmp_path / "d.json"
    f.write_text(build_diagram(corpus.get("cp2_lines").pencil).to_json())
    code, _, err = run(capsys, "verify", "corpus:cp2_conics", "-d", str(f))
    assert code == 2 and err.startswith("E:2:")


def test_verify_forced_failure_exits_one(capsys):
    code, _, err = run(capsys, "verify", "corpus:genus1_truncated")
    assert code == 1 and "no admissible convention" in err


def test_trisect_refuses_then_force(capsys):
    code, _, err = run(capsys, "trisect", "corpus:genus1_truncated")
    assert code == 1 and "--force" in err
    code, _, err = run(capsys, "trisect", "corpus:genus1_truncated", "--force")
    assert code == 1 and err.startswith("E:1:")


@pytest.mark.parametrize(
    "content, fragment",
    [
        ('{"h":0,"b":1,"cycles":[', "malformed JSON"),
        ('{"h":1,"b":1,"cycles":[{"class":[1,0],"sign":2}]}', "chirality must be ±1"),
        ('{"h":0,"b":4,"cycles":[{"class":[1,1]}]}', "class length"),
    ],
)
def test_bad_pencil_files(capsys, tmp_path, content, fragment):
    f = tmp_path / "p.json"
    f.write_text(content)
    code, _, err = run(capsys, "check", str(f))
    assert code == 2 and err.startswith("E:2:") and fragment in err


def test_missing_file_and_bad_args(capsys, tmp_path):
    code, _, err = run(capsys, "check", str(tmp_path / "none.json"))
    assert code == 2 and "cannot read" in err
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "corpus", "show", "--help")[0] == 0


def test_pencil_file_round_trip_through_cli(capsys, tmp_path):
    f = tmp_path / "p.json"
    f.write_text(corpus.get("genus1_pencil").pencil.to_json())
    assert run(capsys, "invariants", str(f))[1] == "g=15 k=2 chi=11 H1=0\n"


def test_internal_errors_exit_three(capsys, monkeypatch):
    def boom(_name):
        raise CorpusError("stored expectation disagrees")

    monkeypatch.setattr(corpus, "get", boom)
    code, _, err = run(capsys, "invariants", "corpus:cp2_lines")
    assert code == 3 and err.startswith("E:3:")


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "pencil_trisection", "invariants", "corpus:cp2_conics"],
        capture_output=True, text=True,
    )
    assert res.returncode == 0 and res.stdout == "g=10 k=3 chi=3 H1=0\n"


# -- determinism and rendering ------------------------------------------------

def test_trisect_is_byte_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "trisect", "corpus:genus1_pencil", "-o", str(a))
    run(capsys, "trisect", "corpus:genus1_pencil", "-o", str(b))
    assert a.read_bytes() == b.read_bytes()
    assert parse_diagram(a.read_bytes()) == build_diagram(corpus.get("genus1_pencil").pencil)


def test_render_cp2():
    svg = render_svg(build_diagram(corpus.get("cp2_lines").pencil)).decode()
    assert svg.count('<path class="curve') == 3
    points = re.search(r'<polygon class="surface"[^>]*points="([^"]*)"', svg).group(1)
    assert len(points.split()) == 4
    assert "homology-schematic" in svg
    for f, colour in ((1, "red"), (2, "blue"), (3, "green")):
        assert re.search(rf'class="curve family-{f}"[^>]*stroke="{colour}"', svg)


def test_render_conics_and_determinism(capsys, tmp_path):
    svg = render_svg(build_diagram(corpus.get("cp2_conics").pencil))
    assert svg.decode().count('<path class="curve') == 30
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    run(capsys, "render", "corpus:cp2_conics", "-o", str(a))
    run(capsys, "render", "corpus:cp2_conics", "-o", str(b))
    assert a.read_bytes() == b.read_bytes() == svg


def test_render_chord_count_matches_class():
    d = build_diagram(corpus.get("genus1_pencil").pencil)
    svg = render_svg(d).decode()
    paths = re.findall(r'<path class="curve[^>]*d="([^"]*)"', svg)
    curves = [c for fam in d.families for c in fam]
    assert [p.count("M ") for p in paths] == [sum(abs(x) for x in c.cls) for c in curves]


# -- corpus -------------------------------------------------------------------

def test_corpus_self_consistent():
    for e in corpus.entries():
        assert expected_invariants(e.pencil) == e.invariants
        assert e.note


def test_corpus_detects_stale_expectations(monkeypatch):
    good = corpus.get("cp2_lines")
    stale = CorpusEntry(good.name, good.pencil, PencilInvariants(4, 0, ()), good.params, good.note)
    monkeypatch.setattr(corpus, "_ENTRIES", [stale])
    with pytest.raises(CorpusError):
        corpus.get("cp2_lines")
