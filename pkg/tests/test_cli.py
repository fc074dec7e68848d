import json

import pytest

from ecexponent.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_structure_record(capsys):
    code, out, _ = run_cli(capsys, "structure", "--a", "-1", "--b", "0",
                           "--p", "17")
    assert code == 0
    obj = json.loads(out)
    assert obj == {"p": 17, "a_p": 2, "N": 16, "d_p": 4, "e_p": 4}


def test_structure_bad_reduction(capsys):
    code, out, _ = run_cli(capsys, "structure", "--a", "-1", "--b", "0",
                           "--p", "2")
    assert code == 0
    assert json.loads(out)["e_p"] == 0


def test_constants_c(capsys):
    code, out, _ = run_cli(capsys, "constants", "--which", "c",
                           "--eps", "1e-9")
    assert code == 0
    obj = json.loads(out)
    assert f"{obj['value']:.10f}" == "0.8992282528"
    assert obj["error"] <= 1e-9


def test_constants_variants(capsys):
    for which in ("C", "cm:1", "cE", "cstar"):
        code, out, _ = run_cli(capsys, "constants", "--which", which,
                               "--oracle", "generic", "--truncation", "500")
        assert code == 0
        assert 0 < json.loads(out)["value"] < 1


def test_constants_cE_table_oracle(capsys, tmp_path):
    table = tmp_path / "t.txt"
    table.write_text("2 6\n")
    code, out, _ = run_cli(capsys, "constants", "--which", "cE",
                           "--oracle", f"table:{table}")
    assert code == 0
    obj = json.loads(out)
    assert f"{obj['value']:.10f}" == "0.8992282528"


def test_sweep_csv_to_file(capsys, tmp_path):
    out_path = tmp_path / "sweep.csv"
    code, _, _ = run_cli(capsys, "sweep", "--a", "-1", "--b", "0",
                         "--limit", "50", "--format", "csv",
                         "--out", str(out_path))
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert lines[0] == "p,a_p,N,d_p,e_p"
    assert lines[1] == "5,-2,8,2,4"


def test_sweep_json_stdout(capsys):
    code, out, _ = run_cli(capsys, "sweep", "--a", "1", "--b", "1",
                           "--limit", "100", "--census", "2,3")
    assert code == 0
    obj = json.loads(out)
    assert obj["sum_e"] == obj["sum_check"]
    assert set(obj["census"]) == {"2", "3"}


def test_census_command(capsys):
    code, out, _ = run_cli(capsys, "census", "--a", "-1", "--b", "0",
                           "--limit", "1000", "--k", "2,4")
    assert code == 0
    obj = json.loads(out)
    assert obj["2"]["count"] >= obj["4"]["count"]


def test_missing_arguments_exit_2(capsys):
    code, _, err = run_cli(capsys, "sweep", "--a", "1")
    assert code == 2
    assert "--b" in err and "--limit" in err


def test_invalid_values_exit_2(capsys):
    code, _, _ = run_cli(capsys, "structure", "--a", "0", "--b", "0",
                         "--p", "5")
    assert code == 2
    code, _, _ = run_cli(capsys, "constants", "--which", "nope")
    assert code == 2
    code, _, _ = run_cli(capsys, "constants", "--which", "cm:6")
    assert code == 2
    code, _, _ = run_cli(capsys, "sweep", "--a", "1", "--b", "1",
                         "--limit", "100", "--oracle", "table:/nope/missing")
    assert code == 2


def test_unknown_subcommand_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_config_file_fills_and_flags_win(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("a = -1\nb = 0\nlimit = 50\nformat = csv\n# comment\n")
    code, out, _ = run_cli(capsys, "sweep", "--config", str(cfg))
    assert code == 0
    assert out.splitlines()[0] == "p,a_p,N,d_p,e_p"
    # flags override the config
    code, out, _ = run_cli(capsys, "sweep", "--config", str(cfg),
                           "--format", "json")
    assert code == 0
    assert json.loads(out)["x_limit"] == 50


def test_config_file_malformed(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("just words\n")
    code, _, err = run_cli(capsys, "sweep", "--config", str(cfg))
    assert code == 2
