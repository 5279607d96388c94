import json

import pytest

from triflag.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("argv,expected", [
    (("count", "--case", "so-triple", "--n", "3"), "39"),
    (("count", "--case", "q", "--n", "3"), "200"),
    (("count", "--case", "one-sp", "--n", "5"), "9891"),
    (("count", "--case", "so-t0", "--n", "4"), "1082"),
])
def test_count_headline(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out.strip() == expected


def test_count_json(capsys):
    code, out, _ = run(capsys, "count", "--case", "so-even", "--n", "4", "--format", "json")
    rows = {r["quantity"]: r["count"] for r in json.loads(out)}
    assert code == 0 and rows["triples"] == 46 and rows["t0"] == 460


def test_verify_sp(capsys):
    code, out, _ = run(capsys, "verify", "--case", "sp", "--n", "2", "--p", "2")
    assert code == 0 and "3 classes, sizes 180/90/45" in out


def test_size_single_symbol(capsys):
    code, out, _ = run(capsys, "size", "--case", "sp", "--symbol", "ABBA", "--p", "2")
    assert code == 0 and out.strip() == "45"


def test_words_csv(capsys):
    code, out, _ = run(capsys, "words", "--case", "so-t0", "--n", "2", "--ascii")
    lines = out.strip().splitlines()
    assert lines[0] == "word,d,ell_tau,size" and len(lines) == 29
    assert all("α" not in ln and "−" not in ln for ln in lines)


def test_repr_then_classify(tmp_path, capsys):
    for case, sym in [("q", "XAYA"), ("so-t0", "+X"), ("so-triple", "0,0,1,1,0,0"), ("levi", "+aa−")]:
        extra = ["--m-plus", "2"] if case == "levi" else []
        code, out, _ = run(capsys, "repr", "--case", case, "--symbol", sym, *extra)
        assert code == 0
        path = tmp_path / f"{case}.txt"
        path.write_text(out)
        code, out, _ = run(capsys, "classify", "--case", case, "--file", str(path), *extra)
        assert code == 0 and out.strip() == sym


def test_hasse_dot(capsys):
    code, out, _ = run(capsys, "hasse", "--case", "sp", "--n", "2", "--format", "dot")
    assert code == 0 and out.startswith("digraph")


@pytest.mark.parametrize("argv", [
    ("count", "--case", "so-triple", "--n", "3", "--p", "4"),
    ("count", "--case", "so-triple", "--n", "3", "--p", "2"),
    ("size", "--case", "sp", "--symbol", "ABQ"),
])
def test_validation_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("triflag:")


def test_bad_file_exit_2(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("3 3\n1 0\n")
    code, _, err = run(capsys, "classify", "--case", "sp", "--file", str(path))
    assert code == 2 and "line 2" in err


def test_guard_exit_3(capsys):
    code, _, err = run(capsys, "verify", "--case", "so-triple", "--n", "9")
    assert code == 3 and "cap" in err


def test_mismatch_exit_1(capsys, monkeypatch):
    from triflag import cases
    real = cases.verify

    def broken(*a, **kw):
        out = real(*a, **kw)
        out[0].sizes_match = False
        out[0].witness = "planted"
        return out
    monkeypatch.setattr(cases, "verify", broken)
    code, out, _ = run(capsys, "verify", "--case", "sp", "--n", "1", "--p", "3")
    assert code == 1 and "MISMATCH: planted" in out
