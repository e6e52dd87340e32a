import json
import re

import pytest

from chabauty.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_enumerate_hyperbolic_space(capsys):
    code, out, _ = run(capsys, "enumerate", "X(1,3)")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 8
    assert lines[0].startswith("X((1,3))")
    assert any(l.startswith("X((1)(1)(1)(1))") for l in lines)


def test_enumerate_point(capsys):
    code, out, _ = run(capsys, "enumerate", "X(1,0)")
    assert code == 0 and len(out.strip().splitlines()) == 1


def test_enumerate_family_json(capsys):
    code, out, _ = run(capsys, "enumerate", "GLC(2)", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 4
    assert all(r["dim"] == 8 for r in rows)  # dim_R gl(2, C)


def test_poset_dot(capsys):
    code, out, _ = run(capsys, "poset", "X(1,3)", "--format", "dot")
    assert code == 0 and out.startswith("digraph limits {")
    assert len(re.findall(r'^\s*n\d+ \[label=', out, re.M)) == 8
    assert len(re.findall(r"->", out)) == 12


def test_poset_small(capsys):
    code, out, _ = run(capsys, "poset", "X(1,2)", "--format", "json")
    data = json.loads(out)
    assert code == 0 and len(data["nodes"]) == 4


def test_limit_hyperbolic_agrees(capsys):
    code, out, _ = run(capsys, "limit", "O(1,3)", "--weights", "0,0,0,1", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["agree"] is True
    assert data["dims"] == [6, 6]


def test_limit_glc1_negative_weights(capsys):
    code, out, _ = run(capsys, "limit", "GLC(1)", "--weights=-1,1", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["agree"] is True
    lim = {json.dumps(m) for m in data["oracle_limit"]}
    assert lim == {json.dumps([["1", "0"], ["0", "1"]]), json.dumps([["0", "0"], ["1", "0"]])}


def test_zero_weights_echo_input(capsys):
    from chabauty.catalog import parse_family
    code, out, _ = run(capsys, "limit", "Sp(4)", "--weights", "0,0,0,0", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["oracle_limit"] == parse_family("Sp(4)").algebra.to_literal()


@pytest.mark.parametrize("argv", [
    ["limit", "O(1,3)", "--weights", "1,2"],
    ["limit", "O(1,3)", "--weights", "a,b,c,d"],
    ["enumerate", "Q(3)"],
    ["poset", "X(-1,2)"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("chabauty: error:")


def test_regress_exits_zero(capsys):
    code, out, _ = run(capsys, "regress")
    assert code == 0
    assert "FAIL" not in out and out.strip().endswith("passed")


def test_transition(capsys):
    code, out, _ = run(capsys, "transition", "--n", "4")
    assert code == 0 and "equals isom(E^4): true" in out


def test_sweep_small(capsys):
    code, out, _ = run(capsys, "sweep", "--max-n", "3")
    assert code == 0 and "failures: 0" in out


def test_config_merging_and_out(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"format": "dot", "mode": "group"}))
    target = tmp_path / "chart.dot"
    code, out, _ = run(capsys, "poset", "X(2,2)", "--config", str(cfg), "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text().startswith("digraph")
    # flags beat the config file
    code, out, _ = run(capsys, "poset", "X(2,2)", "--config", str(cfg), "--format", "json")
    assert json.loads(out)["mode"] == "group"


def test_bad_config(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"colour": "blue"}))
    code, _, err = run(capsys, "regress", "--config", str(cfg))
    assert code == 2 and "unknown config keys" in err


def test_output_is_deterministic(capsys):
    first = run(capsys, "enumerate", "O(2,2)", "--format", "json")[1]
    second = run(capsys, "enumerate", "O(2,2)", "--format", "json")[1]
    assert first == second
