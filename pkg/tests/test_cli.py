import csv
import io
import json
import math

import pytest
from click.testing import CliRunner

from laplace_kit.cli import cli, parse_complex, parse_range


def run(*args, env=None):
    return CliRunner().invoke(cli, list(args), env=env or {}, catch_exceptions=False)


def rows(output):
    return list(csv.DictReader(io.StringIO(output.split("\n\n")[0])))


@pytest.mark.parametrize("text,value", [("1", 1), ("2.5i", 2.5j), ("1+2i", 1 + 2j), ("1-2i", 1 - 2j),
                                         ("-0.5", -0.5), ("1e-3+4e1i", 0.001 + 40j)])
def test_parse_complex(text, value):
    assert parse_complex(text) == value


@pytest.mark.parametrize("text", ["", "abc", "1+", "i2", "1+2j"])
def test_parse_complex_rejects(text):
    with pytest.raises(ValueError):
        parse_complex(text)


def test_parse_range():
    assert list(parse_range("1:1:1")) == [1.0]
    assert list(parse_range("-2:-1:2")) == [-2.0, -1.0]
    for bad in ("1:2", "1:2:0", "2:1:3", "0:1:1"):
        with pytest.raises(ValueError):
            parse_range(bad)


def test_transform_exp_decay():
    r = run("transform", "--function", "exp-decay", "--points", "1")
    assert r.exit_code == 0
    (row,) = rows(r.output)
    assert list(row) == ["p_re", "p_im", "F_re", "F_im"]
    assert float(row["F_re"]) == pytest.approx(0.5, abs=1e-9) and float(row["F_im"]) == 0


def test_transform_paper_2c():
    r = run("transform", "--function", "paper-2c", "--points", "1")
    assert r.exit_code == 0
    assert float(rows(r.output)[0]["F_re"]) == pytest.approx(0.5, abs=1e-7)


def test_transform_unknown_name():
    r = run("transform", "--function", "nosuch", "--points", "1")
    assert r.exit_code == 2


def test_transform_bad_point():
    assert run("transform", "--function", "exp-decay", "--points", "x").exit_code == 2


def test_transform_left_of_growth():
    assert run("transform", "--function", "heaviside", "--points", "-1").exit_code == 2


def test_transform_signal_file(tmp_path):
    path = tmp_path / "sig.csv"
    lines = ["t,f"] + [f"{k * 0.001},{math.exp(-k * 0.001)}" for k in range(20001)]
    path.write_text("\n".join(lines) + "\n")
    r = run("transform", "--signal", str(path), "--points", "1,2i")
    assert r.exit_code == 0
    out = rows(r.output)
    assert float(out[0]["F_re"]) == pytest.approx(0.5, abs=1e-6)
    assert complex(float(out[1]["F_re"]), float(out[1]["F_im"])) == pytest.approx(1 / (1 + 2j), abs=1e-6)


def test_transform_signal_file_bad(tmp_path):
    path = tmp_path / "sig.csv"
    path.write_text("t,f\n0,1\n0.1,1\n0.3,1\n")
    assert run("transform", "--signal", str(path), "--points", "1").exit_code == 2


def test_invert_positive():
    r = run("invert", "--transform", "exp-decay", "--sigma", "0.5", "--times", "1:1:1")
    assert r.exit_code == 0
    (row,) = rows(r.output)
    assert list(row) == ["t", "f_re", "f_im", "converged"]
    assert float(row["f_re"]) == pytest.approx(0.367879, abs=1e-5)
    assert row["converged"] == "true"


def test_invert_negative_times():
    r = run("invert", "--transform", "exp-decay", "--sigma", "0.5", "--times", "-2:-1:2")
    assert r.exit_code == 0
    assert all(abs(float(x["f_re"])) < 1e-3 for x in rows(r.output))


def test_invert_sigma_below_abscissa():
    assert run("invert", "--transform", "exp-decay", "--sigma", "-1", "--times", "1:1:1").exit_code == 2


def test_invert_bad_range():
    assert run("invert", "--transform", "exp-decay", "--times", "1:2").exit_code == 2


def test_check_theorem1_counterexample():
    r = run("check", "theorem1", "--transform", "counterexample-2e")
    assert r.exit_code == 1
    doc = json.loads(r.output)
    assert doc["verdict"] == "fail" and doc["check_name"] == "theorem1"


def test_check_lemma1_paper_2c_quarter():
    r = run("check", "lemma1", "--transform", "paper-2c", "--b", "1.25")
    assert r.exit_code == 0


def test_check_lemma1_paper_2c_below_quarter():
    assert run("check", "lemma1", "--transform", "paper-2c", "--b", "1.1").exit_code == 0


def test_check_paley_wiener_power_quarter():
    assert run("check", "paley-wiener", "--transform", "power-quarter").exit_code == 1


def test_check_hausdorff_young_and_witness():
    assert run("check", "hausdorff-young", "--transform", "paper-2c", "--ell", "1.5").exit_code == 0
    assert run("check", "hausdorff-young", "--transform", "exp-decay", "--ell", "3").exit_code == 4
    assert run("check", "witness", "--transform", "counterexample-2e", "--ell", "2").exit_code == 0
    assert run("check", "witness", "--transform", "exp-decay", "--ell", "2").exit_code == 1


def test_check_unknown_check_name():
    assert run("check", "nosuch", "--transform", "exp-decay").exit_code == 2


def test_check_lemma1_bad_b():
    assert run("check", "lemma1", "--transform", "exp-decay", "--b", "0.5").exit_code == 2


def test_solve_hypersingular_verify():
    r = run("solve-hypersingular", "--g", "t-exp", "--times", "0.1:5:50", "--verify")
    assert r.exit_code == 0
    table, report = r.output.split("\n\n", 1)
    assert len(rows(table)) == 50
    doc = json.loads(report)
    assert doc["verdict"] == "pass"
    assert max(doc["data"]["residuals"]) <= 1e-3


def test_solve_hypersingular_zero():
    r = run("solve-hypersingular", "--g", "zero", "--times", "0:2:5")
    assert r.exit_code == 0
    assert all(float(x["f_re"]) == 0 and float(x["f_im"]) == 0 for x in rows(r.output))


def test_solve_hypersingular_counterexample():
    assert run("solve-hypersingular", "--g", "counterexample-2e", "--times", "0:1:3").exit_code == 2


def test_json_format():
    r = run("--format", "json", "transform", "--function", "t-exp", "--points", "1,2")
    doc = json.loads(r.output)
    assert doc[0]["F_re"] == pytest.approx(0.25, abs=1e-9) and doc[1]["p_re"] == 2.0


def test_output_file_is_deterministic(tmp_path):
    outs = []
    for k in range(2):
        path = tmp_path / f"out{k}.csv"
        r = run("--output", str(path), "invert", "--transform", "t-exp", "--times", "0.5:2:4")
        assert r.exit_code == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1] and outs[0].startswith(b"t,f_re,f_im,converged\n")


def test_config_file_and_env(tmp_path):
    cfg = tmp_path / "run.toml"
    cfg.write_text('format = "json"\nearly_stop = true\n')
    r = run("--config", str(cfg), "invert", "--transform", "t-exp", "--times", "1:1:1")
    assert r.exit_code == 0 and json.loads(r.output)[0]["t"] == 1.0
    r = run("invert", "--transform", "t-exp", "--times", "1:1:1", env={"LAPLACE_KIT_CONFIG": str(cfg)})
    assert json.loads(r.output)[0]["converged"] == "true"
    # flags win over the file
    r = run("--config", str(cfg), "--format", "csv", "transform", "--function", "t-exp", "--points", "1")
    assert r.output.startswith("p_re,")


def test_config_unknown_key(tmp_path):
    cfg = tmp_path / "run.toml"
    cfg.write_text("abs_tolerance = 1e-3\n")
    r = run("--config", str(cfg), "transform", "--function", "t-exp", "--points", "1")
    assert r.exit_code == 2


def test_config_nested_table_rejected(tmp_path):
    cfg = tmp_path / "run.toml"
    cfg.write_text("[quadrature]\nabs_tol = 1e-3\n")
    assert run("--config", str(cfg), "transform", "--function", "t-exp", "--points", "1").exit_code == 2


def test_config_bad_value(tmp_path):
    cfg = tmp_path / "run.toml"
    cfg.write_text("abs_tol = -1.0\n")
    assert run("--config", str(cfg), "transform", "--function", "t-exp", "--points", "1").exit_code == 2
