import json
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings

from convexgames import InputError, SizeError, counterexample_game, gen_random_convex
from convexgames import gamefile
from convexgames.cli import counterexample_battery, main

from conftest import convex_games


def write(tmp_path, doc, name="game.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
    return str(path)


def counterexample_file(tmp_path):
    return write(tmp_path, gamefile.emit_game(counterexample_game()), "cx.json")


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


# -- game files ------------------------------------------------------------------

def test_parse_game_defaults_and_canonical_keys():
    g = gamefile.parse_game({"players": 3, "default": "1/2", "values": {"3,1": "2", "1,2,3": "5"}})
    assert g(0b101) == 2 and g(0b111) == 5 and g(0b010) == Fraction(1, 2) and g(0) == 0


@pytest.mark.parametrize("doc", [
    [],
    {"players": 2, "values": {"1": "1"}},                        # grand coalition missing
    {"players": 2, "values": {"1,2": 1}},                        # number instead of string
    {"players": 2, "values": {"1,2": "0.5"}},
    {"players": 2, "values": {"1,2": "1", "2,1": "1"}},          # duplicate after canonicalizing
    {"players": 2, "values": {"1,3": "1", "1,2": "1"}},
    {"players": 0, "values": {}},
    {"players": True, "values": {"1": "1"}},
    {"players": 2, "values": {"1,2": "1"}, "extra": 1},
    {"players": 2, "default": 0, "values": {"1,2": "1"}},
])
def test_parse_game_rejects(doc):
    with pytest.raises(InputError):
        gamefile.parse_game(doc)


def test_parse_game_size_limit():
    with pytest.raises(SizeError):
        gamefile.parse_game({"players": 30, "values": {}})


def test_load_errors(tmp_path):
    with pytest.raises(InputError):
        gamefile.load_game(tmp_path / "missing.json")
    with pytest.raises(InputError):
        gamefile.load_game(write(tmp_path, "{not json"))


@settings(max_examples=30)
@given(convex_games(min_n=1, max_n=6))
def test_emit_parse_roundtrip(game):
    doc = json.loads(gamefile.dumps(gamefile.emit_game(game)))
    back = gamefile.parse_game(doc)
    assert back.values() == game.values()
    assert gamefile.digest(back) == gamefile.digest(game)


def test_roundtrip_ten_players():
    g = gen_random_convex(10, 4)
    assert gamefile.parse_game(gamefile.emit_game(g)).values() == g.values()


def test_emit_is_sparse_and_ordered():
    doc = gamefile.emit_game(counterexample_game())
    assert list(doc["values"]) == ["1,2", "2,3", "1,2,3", "1,2,4", "2,3,4", "1,2,3,4"]


# -- commands --------------------------------------------------------------------

def test_check_counterexample(tmp_path, capsys):
    code, out, _ = run(["check", counterexample_file(tmp_path)], capsys)
    assert code == 0
    assert "convex: yes" in out


def test_check_nonconvex(tmp_path, capsys):
    path = write(tmp_path, {"players": 2, "values": {"1": "1", "2": "1", "1,2": "1"}})
    code, out, _ = run(["check", path], capsys)
    assert code == 3
    assert "convex: no" in out and "witness i=1, j=2, S={}" in out


def test_check_zero_game(tmp_path, capsys):
    code, out, _ = run(["check", write(tmp_path, {"players": 3, "values": {"1,2,3": "0"}})], capsys)
    assert code == 0 and "convex: yes" in out


def test_check_parse_error(tmp_path, capsys):
    code, _, err = run(["check", write(tmp_path, "{")], capsys)
    assert code == 2 and "error" in err


def test_least_core_json(tmp_path, capsys):
    code, out, _ = run(["least-core", counterexample_file(tmp_path), "--json", "--trace"], capsys)
    assert code == 0
    env = json.loads(out)
    assert env["result"]["epsilon"] == "2"
    assert env["result"]["essential"] == ["3", "1,2,3", "4", "1,2,4"]
    assert env["result"]["dual"]["1,2,3,4"] == "1/2"
    assert len(env["trace"]) <= 2 * 4 - 2
    assert env["input_digest"].startswith("sha256:")
    assert env["timing"]["sfm_evaluations"] > 0


def test_least_core_additive_and_errors(tmp_path, capsys):
    additive = {"players": 2, "values": {"1": "1", "2": "2", "1,2": "3"}}
    code, out, _ = run(["least-core", write(tmp_path, additive)], capsys)
    assert code == 0 and "epsilon: 0" in out
    code, _, _ = run(["least-core", write(tmp_path, {"players": 1, "values": {"1": "4"}})], capsys)
    assert code == 2
    bad = {"players": 2, "values": {"1": "1", "2": "1", "1,2": "1"}}
    code, _, _ = run(["least-core", write(tmp_path, bad)], capsys)
    assert code == 3
    code, _, _ = run(["least-core", counterexample_file(tmp_path), "--s", "9"], capsys)
    assert code == 2


def test_nucleolus_methods(tmp_path, capsys):
    path = counterexample_file(tmp_path)
    for method in ("per-player", "divide-conquer"):
        code, out, _ = run(["nucleolus", path, "--method", method, "--verify", "--json"], capsys)
        assert code == 0
        res = json.loads(out)["result"]
        assert res["nucleolus"] == ["5/2", "7/2", "2", "2"] and res["verified"]


def test_nucleolus_additive(tmp_path, capsys):
    path = write(tmp_path, {"players": 3, "values": {"1": "1", "2": "-2", "3": "3", "1,2": "-1",
                                                     "1,3": "4", "2,3": "1", "1,2,3": "2"}})
    code, out, _ = run(["nucleolus", path], capsys)
    assert code == 0 and '["1", "-2", "3"]' in out


def test_nucleolus_verify_size_limit(tmp_path, capsys):
    path = write(tmp_path, gamefile.emit_game(gen_random_convex(9, 2)))
    code, _, err = run(["nucleolus", path, "--verify"], capsys)
    assert code == 4 and "n <=" in err


def test_nucleolus_verify_mismatch(tmp_path, capsys, monkeypatch):
    import convexgames.cli as cli
    monkeypatch.setattr(cli, "brute_nucleolus", lambda game, max_n: [0] * game.n)
    code, _, err = run(["nucleolus", counterexample_file(tmp_path), "--verify"], capsys)
    assert code == 5 and "oracle" in err


def test_oracle_commands(tmp_path, capsys):
    path = counterexample_file(tmp_path)
    code, out, _ = run(["oracle", "nucleolus", path], capsys)
    assert code == 0 and '["5/2", "7/2", "2", "2"]' in out
    code, out, _ = run(["oracle", "least-core", path], capsys)
    assert code == 0 and "epsilon: 2" in out
    code, out, _ = run(["oracle", "essential", path, "--coalition", "3"], capsys)
    assert code == 0 and "essential {3}: true" in out
    code, _, _ = run(["oracle", "essential", path], capsys)
    assert code == 2
    big = write(tmp_path, gamefile.emit_game(gen_random_convex(9, 1)), "big.json")
    code, _, _ = run(["oracle", "nucleolus", big], capsys)
    assert code == 4
    code, _, _ = run(["oracle", "nucleolus", big, "--max-n", "4"], capsys)
    assert code == 4


def test_gen_bankruptcy(tmp_path, capsys):
    out_path = tmp_path / "b.json"
    code, _, _ = run(["gen", "bankruptcy", "--estate", "100", "--claims", "100,200,300",
                      "--out", str(out_path)], capsys)
    assert code == 0
    doc = json.loads(out_path.read_text())
    assert doc["players"] == 3 and doc["values"]["1,2,3"] == "100"
    code, out, _ = run(["check", str(out_path)], capsys)
    assert code == 0


def test_gen_airport_zero(capsys):
    code, out, _ = run(["gen", "airport", "--costs", "0,0"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["values"] == {"1,2": "0"} and doc["default"] == "0"


def test_gen_random_is_deterministic(capsys):
    _, a, _ = run(["gen", "random-convex", "--n", "5", "--seed", "7"], capsys)
    _, b, _ = run(["gen", "random-convex", "--n", "5", "--seed", "7"], capsys)
    assert a == b
    _, c, _ = run(["--seed", "7", "gen", "random-convex", "--n", "5"], capsys)
    assert c == a


def test_gen_invalid_params(capsys):
    assert run(["gen", "airport"], capsys)[0] == 2
    assert run(["gen", "airport", "--costs", "1,-2"], capsys)[0] == 2
    assert run(["gen", "bankruptcy", "--estate", "x", "--claims", "1"], capsys)[0] == 2
    assert run(["gen", "random-convex"], capsys)[0] == 2
    assert run(["gen", "random-convex", "--n", "3", "--min-weight", "5", "--max-weight", "1"],
               capsys)[0] == 2


def test_unknown_command(capsys):
    assert run(["frobnicate"], capsys)[0] == 2


def test_counterexample_command(capsys):
    code, out, _ = run(["counterexample"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "lhs: 1" and lines[1] == "rhs: 0"
    assert 'nucleolus: ["5/2", "7/2", "2", "2"]' in lines
    assert "essential: {3}, {4}" in lines
    assert "FAIL" not in out


def test_counterexample_battery_all_pass():
    checks = counterexample_battery()
    assert len(checks) >= 9 and all(ok for _, ok, _ in checks)


def test_json_envelope_is_byte_stable(tmp_path, capsys):
    path = counterexample_file(tmp_path)
    _, a, _ = run(["nucleolus", path, "--json", "--trace"], capsys)
    _, b, _ = run(["--json", "nucleolus", path, "--trace"], capsys)
    assert a == b
    _, t, _ = run(["nucleolus", path, "--json", "--timing"], capsys)
    assert "seconds" in json.loads(t)["timing"]


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "convexgames", "counterexample", "--json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["lhs"] == "1"
