import json
import subprocess
import sys

import pytest

from subpair.cli import EXIT_INPUT, EXIT_OK, main, mirror_pair, parse_pair
from subpair.ring import RingKind

Q13 = {"ring": {"kind": "zmod", "p": 2, "n": 3}, "B": [3, 1], "A": [[2, 1]]}


@pytest.fixture
def write(tmp_path):
    def _write(doc, name="pair.json"):
        path = tmp_path / name
        path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
        return str(path)

    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_Q(capsys, write):
    code, out, _ = run(capsys, "classify", write(Q13), "--format", "json")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["labels"] == [{"label": "Q[s=1,t=3]", "multiplicity": 1, "height_sequence": [0, 2]}]


def test_classify_empty_A(capsys, write):
    doc = {"ring": {"kind": "zmod", "p": 3, "n": 2}, "B": [2, 1, 1], "A": []}
    code, out, _ = run(capsys, "classify", write(doc), "--format", "json")
    labels = [(e["label"], e["multiplicity"]) for e in json.loads(out)["labels"]]
    assert code == EXIT_OK and labels == [("P[m=0,l=1]", 2), ("P[m=0,l=2]", 1)]


def test_classify_check_and_witness(capsys, write):
    doc = {"ring": {"kind": "truncpoly", "p": 2, "n": 3}, "B": [3, 2, 1], "A": [[[0, 1], [1], [1]], [[0, 0, 1], [0, 1], [0]]]}
    code, out, _ = run(capsys, "classify", write(doc), "--check", "--format", "json")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["verification"] == {"witness_invertible": True, "oracle_isomorphic": True}
    assert doc["witness"]["target_B"] == [3, 2, 1]


def test_decimal_strings(capsys, write):
    doc = dict(Q13, A=[["2", "1"]])
    code, out, _ = run(capsys, "classify", write(doc))
    assert code == EXIT_OK and out.strip().startswith("Q[s=1,t=3]")


@pytest.mark.parametrize(
    "doc,needle",
    [
        ({"ring": {"kind": "zmod", "p": 4, "n": 3}, "B": [3], "A": []}, "ring.p"),
        ({"ring": {"kind": "zmod", "p": 2, "n": 3}, "B": [4], "A": []}, "B[0]"),
        ({"ring": {"kind": "zmod", "p": 2, "n": 3}, "B": [1, 3], "A": []}, "decreasing"),
        ({"ring": {"kind": "zmod", "p": 2, "n": 3}, "B": [3], "A": [[1]]}, "p^2 A"),
        ({"ring": {"kind": "zmod", "p": 2, "n": 3}, "B": [3, 1], "A": [[2]]}, "A[0]"),
        ({"ring": {"kind": "zmod", "p": 2, "n": 3}, "B": [3], "A": [["x"]]}, "A[0][0]"),
        ({"ring": {"kind": "truncpoly", "p": 2, "n": 3}, "B": [3], "A": [[[0, 2]]]}, "A[0][0][1]"),
        ({"ring": {"kind": "padic", "p": 2, "n": 3}, "B": [3], "A": []}, "ring.kind"),
        ({"B": [3]}, "ring"),
    ],
)
def test_input_errors(capsys, write, doc, needle):
    code, _, err = run(capsys, "classify", write(doc))
    assert code == EXIT_INPUT
    assert needle in err


def test_malformed_json(capsys, write):
    code, _, err = run(capsys, "classify", write('{"ring": '))
    assert code == EXIT_INPUT and "line 1" in err


def test_missing_file(capsys):
    code, _, _ = run(capsys, "classify", "/nonexistent/pair.json")
    assert code == EXIT_INPUT


@pytest.mark.parametrize("n,count", [(1, 2), (2, 5), (4, 14)])
def test_indecomposables(capsys, n, count):
    code, out, _ = run(capsys, "indecomposables", "--n", str(n), "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["count"] == count == doc["expected_count"]
    assert all(r["self_classifies"] for r in doc["labels"])


def test_indecomposables_n1_labels(capsys):
    _, out, _ = run(capsys, "indecomposables", "--n", "1", "--ring", "truncpoly", "--format", "json")
    assert [r["label"] for r in json.loads(out)["labels"]] == ["P[m=0,l=1]", "P[m=1,l=1]"]


def test_hom(capsys, write):
    code, out, _ = run(capsys, "hom", write(Q13), write(Q13, "b.json"), "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["contains_identity"] is True
    p11 = {"ring": {"kind": "zmod", "p": 2, "n": 1}, "B": [1], "A": [[1]]}
    p01 = {"ring": {"kind": "zmod", "p": 2, "n": 1}, "B": [1], "A": []}
    _, out, _ = run(capsys, "hom", write(p11, "x.json"), write(p01, "y.json"), "--format", "json")
    assert json.loads(out)["hom_length"] == 0
    p23 = {"ring": {"kind": "zmod", "p": 2, "n": 3}, "B": [3], "A": [[2]]}
    _, out, _ = run(capsys, "hom", write(p23, "c.json"), write(p23, "d.json"), "--format", "json")
    doc = json.loads(out)
    assert doc["socle_contained"] and doc["dims_equal"]


def test_hom_ring_mismatch(capsys, write):
    other = dict(Q13, ring={"kind": "truncpoly", "p": 2, "n": 3}, A=[[[0, 1], [1]]])
    code, _, _ = run(capsys, "hom", write(Q13), write(other, "o.json"))
    assert code == EXIT_INPUT


def test_census(capsys):
    code, out, _ = run(capsys, "census", "--p", "2", "--n", "2", "--max-parts", "3", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["passed"] and doc["indecomposable_count"] == 5


def test_census_cap(capsys, monkeypatch):
    monkeypatch.setenv("SUBPAIR_MAX_CARDINALITY", "64")
    code, _, err = run(capsys, "census", "--p", "2", "--n", "3", "--max-parts", "3")
    assert code == EXIT_INPUT and "cap" in err


def test_compare_rings(capsys, write):
    code, out, _ = run(capsys, "compare-rings", write(Q13), "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["identical"]
    assert doc["pairs"][0]["zmod"] == doc["pairs"][0]["truncpoly"] == "Q[s=1,t=3]"
    for n in range(1, 5):
        code, out, _ = run(capsys, "compare-rings", "--n", str(n), "--format", "json")
        assert code == EXIT_OK and json.loads(out)["identical"]


def test_mirror_keeps_digits():
    x = parse_pair({"ring": {"kind": "zmod", "p": 2, "n": 3}, "B": [3, 3], "A": [[6, 2]]})
    y = mirror_pair(x, RingKind.TRUNCPOLY)
    assert y.spec.kind is RingKind.TRUNCPOLY
    # 6 = 0 + 1*2 + 1*4 becomes T + T^2
    assert y.A == y.B.submodule([(6, 2)])


def test_deterministic_output(capsys, write):
    path = write(Q13)
    outs = {run(capsys, "classify", path, "--witness", "--format", "json")[1] for _ in range(3)}
    assert len(outs) == 1


def test_bad_arguments(capsys):
    assert main(["nonsense"]) == EXIT_INPUT
    assert main(["indecomposables", "--n", "2", "--p", "4"]) == EXIT_INPUT


def test_module_entry_point(write):
    proc = subprocess.run([sys.executable, "-m", "subpair", "classify", write(Q13)], capture_output=True, text=True)
    assert proc.returncode == 0 and "Q[s=1,t=3]" in proc.stdout
