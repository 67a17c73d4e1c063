import io
import json
import subprocess
import sys

import pytest

from central_aut.cli import main, make_parser, run


def run_cli(argv):
    args = make_parser().parse_args(argv)
    buf = io.StringIO()
    code = run(args, out=buf)
    return code, buf.getvalue()


def test_construct_text():
    code, out = run_cli(["construct", "--p", "2", "--n", "3"])
    assert code == 0
    assert "x^3 + x + 1" in out
    assert "  1 0 0 1 0 0" in out
    assert "x0^4 = [x0,x1]*[x1,x2]" in out


def test_construct_json():
    code, out = run_cli(["construct", "--output", "json"])
    doc = json.loads(out)
    assert doc["construct"]["f"][0] == [1, 0, 0, 1, 0, 0]
    assert doc["construct"]["presentation"]["q"] == 4
    assert doc["pass"] is True


def test_stabilize_brute():
    code, out = run_cli(["stabilize", "--p", "2", "--n", "3", "--mode", "brute"])
    assert code == 0
    assert "G = {identity}; mode brute; tested 20160" in out


def test_stabilize_json_schema():
    code, out = run_cli(["stabilize", "--p", "3", "--output", "json"])
    res = json.loads(out)["stabilize_structured"]
    assert code == 0
    assert set(res) == {"mode", "space_size", "tested", "elements", "wall_ms"}
    assert res["space_size"] == 22464 and res["elements"] == [[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]]


def test_endo():
    code, out = run_cli(["endo"])
    assert code == 0 and "{0, identity}" in out


def test_verify_lemmas_and_proof_steps():
    assert run_cli(["verify-lemmas", "--p", "3"])[0] == 0
    assert run_cli(["proof-steps", "--p", "3"])[0] == 0


def test_group_stats_p3():
    code, out = run_cli(["group", "--p", "3", "--n", "3", "--stats", "--check-inverse-free", "20", "--output", "json"])
    assert code == 0
    q = json.loads(out)["group"]["structure"]["quantities"]
    assert q["order_P"]["value"] == 59049
    assert q["order_center"]["value"] == 729
    assert q["order_agemo"]["value"] == 81


def test_custom_b_c_poly():
    code, out = run_cli(["construct", "--p", "3", "--b", "0,1,0", "--c", "[0,0,2]", "--poly", "1,2,0,1", "--output", "json"])
    assert code == 0
    assert json.loads(out)["construct"]["f"][0] == [0, 1, 0, 0, 0, 2]


@pytest.mark.parametrize("argv,code", [
    (["construct", "--b", "0,0,0"], 2),
    (["construct", "--n", "2"], 2),
    (["construct", "--p", "4"], 2),
    (["construct", "--poly", "1,1,1,1"], 2),
    (["group", "--p", "2", "--check-inverse-free", "3"], 2),
    (["stabilize", "--p", "3", "--mode", "brute"], 3),
    (["endo", "--p", "3"], 3),
])
def test_error_exit_codes(argv, code, capsys):
    assert main(argv) == code
    assert "error" in capsys.readouterr().err


def test_bad_subcommand_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2


def test_json_output_deterministic():
    argv = ["all", "--p", "2", "--output", "json", "--no-timing", "--seed", "5"]
    first = run_cli(argv)
    second = run_cli(argv)
    assert first == second and first[0] == 0


def test_all_p3_default():
    code, out = run_cli(["all", "--p", "3", "--check-inverse-free", "10"])
    assert code == 0
    assert "[SKIP] brute-force" in out
    assert "stage group: PASS" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "central_aut", "stabilize", "--mode", "brute"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "G = {identity}" in proc.stdout
