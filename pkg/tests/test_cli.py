import json

import pytest

from dirac_chords.cli import main

from conftest import VACPOL, VACPOL_GRAPH

LONG = "tr(a1 a2 a3 a4 a1 a6 a2 a8 a9 a10 a9 a3 a10 a14 a4 a8 a6 a14)"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_contract_check(capsys):
    code, out, _ = run(capsys, "contract", "--check", "d(3,7) d(4,8) tr(a1 a2 a3 a4 a5 a6 a7 a8)")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "-8 * tr(a1 a2 a6 a5)"
    assert lines[1].startswith("  check: match")


def test_contract_scalars(capsys):
    assert run(capsys, "contract", LONG)[1].strip() == "-8192"
    assert run(capsys, "contract", "tr()")[1].strip() == "4"


def test_contract_open_and_json(capsys):
    code, out, _ = run(capsys, "contract", "--json", "--check", "a2 a3 a4 a5 a6 a3 a4")
    assert code == 0
    data = json.loads(out)
    assert data["factored"] == "-8 * a2 a6 a5"
    assert data["check"] in ("formal", "4d")


def test_contract_stdin(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO("# comment\ntr(a1 a1)\n\ntr(a1 a2 a1 a2)\n"))
    code, out, _ = run(capsys, "contract", "-")
    assert code == 0
    assert out.split() == ["16", "-32"]


def test_oracle_command(capsys):
    assert run(capsys, "oracle", "a2 a1 a2")[1].strip() == "-2 * a1"


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "contract", "tr(a1 a2")
    assert code == 2
    assert "line 1" in err
    assert run(capsys, "contract", "tr(a1 a1 a1)")[0] == 2


def test_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["no-such-command"])
    assert info.value.code == 2


def test_sumcheck(capsys):
    code, out, _ = run(capsys, "sumcheck", "--all", "n=2")
    data = json.loads(out)
    assert code == 0 and data["lhs"] == "24"
    assert set(data) >= {"n", "k", "lhs", "rhs", "count", "equal", "ms"}
    assert json.loads(run(capsys, "sumcheck", "--all", "n=1")[1])["lhs"] == "-8"


def test_sumcheck_partial(capsys, tmp_path):
    code, out, _ = run(capsys, "sumcheck", "n=3,1", "k=1,2")
    assert code == 0
    assert [json.loads(line)["equal"] for line in out.splitlines()] == [True, True]
    path = tmp_path / "d0.json"
    path.write_text(json.dumps({"bases": [6], "chords": [[1, 4]]}))
    code, out, _ = run(capsys, "sumcheck", "--d0", str(path), "k=1")
    assert code == 0 and json.loads(out)["equal"]


def test_sumcheck_missing_args(capsys):
    assert run(capsys, "sumcheck")[0] == 2


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "n=3", "--count")
    assert code == 0 and json.loads(out)["count"] == 15
    code, out, _ = run(capsys, "enumerate", "n=2")
    rows = [json.loads(line) for line in out.splitlines()]
    assert len(rows) == 3
    assert all({"c2", "c3", "s"} <= set(r) for r in rows)


def test_bench_empty(capsys):
    code, out, _ = run(capsys, "bench", "--sizes", "")
    assert code == 0 and out == ""


def test_bench_small(capsys):
    code, out, _ = run(capsys, "bench", "--sizes", "6", "--per-size", "2", "--seed", "1", "--json")
    assert code == 0
    assert json.loads(out.splitlines()[0])


@pytest.fixture
def vacpol_files(tmp_path):
    graph = tmp_path / "graph.json"
    graph.write_text(json.dumps(VACPOL_GRAPH.to_dict()))
    qed = tmp_path / "qed.json"
    qed.write_text(VACPOL.to_json())
    return str(graph), str(qed)


def test_conjecture_lhs(capsys, vacpol_files):
    graph, qed = vacpol_files
    code, out, _ = run(capsys, "conjecture-lhs", "--graph", graph, "--qed", qed)
    assert code == 0 and out.strip() == "24"
    code, out, _ = run(capsys, "conjecture-lhs", "--graph", graph, "--qed", qed, "--json")
    data = json.loads(out)
    assert data["divisible"] and data["collapse_psi_divides"]


def test_conjecture_edge_map_inline(capsys, vacpol_files):
    graph, _ = vacpol_files
    code, out, _ = run(capsys, "conjecture-lhs", "n=2", "--graph", graph, "--edge-map", '{"1":1,"2":1,"3":2,"4":2}')
    assert code == 0 and out.strip() == "24"


def test_integrand(capsys, vacpol_files):
    graph, qed = vacpol_files
    code, out, _ = run(capsys, "integrand", "--graph", graph, "--qed", qed)
    assert code == 0
    assert len(out.splitlines()) == 1
    assert run(capsys, "integrand", "n=2", "--graph", graph)[0] == 2


def test_missing_file(capsys):
    assert run(capsys, "conjecture-lhs", "n=1", "--graph", "/nonexistent.json")[0] == 2
