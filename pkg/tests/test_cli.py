import json
import subprocess
import sys

import pytest

from greedylab.cli import main


def run(args, capsys):
    code = main(args)
    return code, capsys.readouterr().out


def test_democracy_difference_left(capsys):
    code, out = run(["democracy", "--space", "difference", "--m", "3", "--u", "4",
                     "--side", "left", "--signs", "plus"], capsys)
    assert code == 0
    assert out.splitlines()[1].split(",")[4] == "3.0"


def test_norms_json(capsys):
    code, out = run(["norms", "--space", "summing", "--vectors", "[[1,1],[2,-1],[3,1]]",
                     "--format", "json"], capsys)
    assert code == 0 and json.loads(out)[0]["norm"] == 1.0


def test_errors_columns(capsys):
    code, out = run(["errors", "--space", "lp:2", "--vectors", "[[1,3],[2,2],[3,1]]"], capsys)
    assert out.splitlines()[0] == "space,vector_id,m,sigma,gamma,theta,beta,truncated_flags"
    assert len(out.splitlines()) == 5


def test_weights_output(capsys):
    code, out = run(["weights", "--w", "power:0.5", "--Mmax", "64", "--kmax", "256"], capsys)
    last = out.splitlines()[-1].split(",")
    assert last[0] == "power:0.5" and float(last[4]) == pytest.approx(0.5)


def test_output_is_deterministic(tmp_path):
    outs = []
    for k in range(2):
        path = tmp_path / f"c{k}.csv"
        assert main(["classes", "--space", "summing", "--seed", "3", "--count", "3",
                     "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_verify_subset_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["verify", "--seed", "7", "--only", "1", "3", "11", "--format", "json",
                 "--out", str(a)]) == 0
    main(["verify", "--seed", "7", "--only", "1", "3", "11", "--format", "json", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_failing_experiment_exits_nonzero(capsys):
    code, _ = run(["experiment", "--preset", "kppg", "--jmax", "2"], capsys)
    assert code == 1


def test_unwritable_output():
    assert main(["norms", "--out", "/nonexistent/dir/x.csv"]) == 2


def test_unknown_subcommand():
    with pytest.raises(SystemExit):
        main(["frobnicate"])


def test_console_script_entry():
    res = subprocess.run([sys.executable, "-m", "greedylab.cli", "experiment", "--preset", "casec"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "premise_fails" in res.stdout
