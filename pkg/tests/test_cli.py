import json

from sl2triv import emit
from sl2triv.cli import run
from sl2triv.trivsource import assemble


def test_regime_error_exit_code(capsys):
    # defining characteristic is rejected with a usage/regime error
    assert run(["table", "--q", "9", "--ell", "3", "--group", "sl2"]) == 2
    err = capsys.readouterr().err
    assert "ell odd dividing q-1 or q+1" in err


def test_verify_exit_zero(capsys):
    assert run(["verify", "--q", "5", "--ell", "2", "--group", "sl2",
                "--format", "json"]) == 0
    out = capsys.readouterr().out
    assert json.loads(out)["passed"] is True


def test_table_json_round_trip(tmp_path):
    out = tmp_path / "t.json"
    assert run(["table", "--q", "7", "--ell", "3", "--group", "sl2",
                "--format", "json", "--out", str(out)]) == 0
    parsed = emit.table_from_json(json.loads(out.read_text()))
    assert parsed == assemble(7, 3, "sl2")


def test_byte_identical_runs(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert run(["table", "--q", "13", "--ell", "2", "--group", "psl2",
                    "--format", "json", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
    for path in (a, b):
        assert run(["verify", "--q", "5", "--ell", "3", "--group", "sl2",
                    "--format", "json", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_latex_and_csv_formats(capsys):
    assert run(["table", "--q", "7", "--ell", "3", "--group", "sl2",
                "--format", "latex"]) == 0
    assert r"\begin{array}" in capsys.readouterr().out
    assert run(["table", "--q", "7", "--ell", "3", "--group", "sl2",
                "--format", "csv", "--approx"]) == 0
    capsys.readouterr()


def test_chartab_subcommand(capsys):
    assert run(["chartab", "--q", "7", "--group", "nprime"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["order"] == 16
    assert run(["chartab", "--q", "7", "--group", "sl2",
                "--format", "latex"]) == 0
    capsys.readouterr()


def test_blocks_subcommand(capsys):
    assert run(["blocks", "--q", "7", "--ell", "3", "--group", "sl2"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert len(obj) == 7
    b0 = next(b for b in obj if b["id"] == "B0")
    assert b0["tree"]["vertices"][0] == ["triv", 1]
    assert b0["e"] == 2 and b0["m"] == 1
