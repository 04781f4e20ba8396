import json
import subprocess
import sys

import pytest

from hopfp3.cli import RunConfig, UsageError, main, parse_scalar


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_verify_member(capsys):
    code, doc = run(["verify", "--type", "A5", "--p", "3", "--beta", "1"], capsys)
    assert code == 0 and doc["schema"] == 1 and doc["ok"]
    assert doc["result"]["axioms"]["ok"] and doc["result"]["dim"] == 27


def test_verify_sampled_mode(capsys):
    code, doc = run(["verify", "--type", "C5", "--p", "2", "--mode", "sampled", "--samples", "200"], capsys)
    assert code == 0 and doc["result"]["associativity"]["mode"].startswith("sampled")


@pytest.mark.parametrize("argv", [
    ["verify", "--type", "C15", "--p", "2"],
    ["verify", "--type", "Q1", "--p", "2"],
    ["verify", "--type", "A1", "--p", "5"],
    ["verify", "--type", "A1", "--p", "13", "--large-p"],
    ["verify", "--type", "C16", "--p", "3", "--lambda", "0,1,1,1,1,1,1"],
    ["verify", "--type", "C16", "--p", "3", "--lambda", "0"],
    ["verify", "--type", "A1", "--p", "2", "--mode", "fast"],
    ["report", "--p", "13"],
    ["iso", "--family", "Z", "--p", "2"],
    ["build", "--p", "2"],
])
def test_usage_errors_exit_2(argv, capsys):
    assert main(argv) == 2
    assert "error" in capsys.readouterr().err


def test_missing_type_is_argparse_error():
    with pytest.raises(SystemExit) as e:
        main(["verify", "--p", "2"])
    assert e.value.code == 2


def test_build_from_file(tmp_path, capsys):
    f = tmp_path / "lie.txt"
    f.write_text("gens x y\ncomm x y = y\npow x = x\npow y = 0\n")
    code, doc = run(["build", "--from-file", str(f), "--p", "3", "--primitive"], capsys)
    assert code == 0 and doc["algebra"]["dim"] == 9 and doc["axioms"]["ok"]


def test_build_from_file_inconsistent(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("gens x y\ncomm x y = y\npow x = 0\npow y = 0\n")
    assert main(["build", "--from-file", str(f), "--p", "3"]) == 1
    f.write_text("gens x y\ncomm x y = \npow x = 0\n")
    assert main(["build", "--from-file", str(f), "--p", "3"]) == 2
    assert main(["build", "--from-file", str(tmp_path / "missing.txt"), "--p", "3"]) == 2


def test_build_catalog_hash_stable(capsys):
    _, a = run(["build", "--type", "B2", "--p", "3"], capsys)
    _, b = run(["build", "--type", "B2", "--p", "3"], capsys)
    assert a == b and a["hopf"]["hash"]


def test_iso_commands(capsys):
    code, doc = run(["iso", "--family", "A", "--p", "2", "--beta-prime", "1", "--beta", "0"], capsys)
    assert code == 0 and doc["valid"]
    code, doc = run(["iso", "--family", "A", "--p", "3", "--beta-prime", "2", "--beta", "1", "--gamma", "1"],
                    capsys)
    assert code == 1 and not doc["valid"]
    code, doc = run(["iso", "--family", "H", "--p", "2", "--alpha-prime", "1", "--alpha", "0"], capsys)
    assert code == 0 and doc["result"]["validating_conditions"] == ["a^(p^2) - a"]


def test_report_is_deterministic(tmp_path):
    outs = []
    for name in ("r1.json", "r2.json"):
        path = tmp_path / name
        assert main(["report", "--p", "2", "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    doc = json.loads(outs[0])
    assert doc["schema"] == 1 and doc["summary"]["members_pass_axioms"]
    skipped = [r["family"] for r in doc["members"] if not r["applicable"]]
    assert sorted(skipped) == ["B3", "C15", "C6"]


def test_parse_scalar():
    assert parse_scalar("4", 3, 12) == 4
    s = parse_scalar("1,2", 3, 12)
    assert s.spec.k == 2 and s.coeffs == [1, 2]
    with pytest.raises(UsageError):
        parse_scalar("1,x", 3, 12)
    with pytest.raises(UsageError):
        parse_scalar("1,1,1", 3, 2)


def test_run_config_validation():
    RunConfig(p=5, allow_large_p=True)
    with pytest.raises(UsageError):
        RunConfig(p=5)
    with pytest.raises(UsageError):
        RunConfig(p=2, max_ext_degree=99)


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "hopfp3", "verify", "--type", "T210-3", "--p", "2"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["ok"]
