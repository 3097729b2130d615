"""Command-line contract: output shapes, exit codes, determinism."""

import json
import math
import shutil
import subprocess

import pytest

from fwstates.cli import main
from fwstates.foxwright import oracle_mittag_leffler

NU_VACUUM_AT_1 = 2.2665345076998488351


@pytest.fixture(scope="module")
def files(tmp_path_factory):
    d = tmp_path_factory.mktemp("params")

    def put(name, obj):
        p = d / name
        p.write_text(json.dumps(obj) + "\n", encoding="utf-8")
        return str(p)

    out = {
        "vacuum": put("vacuum.json", {"upper": [], "lower": []}),
        "shift": put(
            "shift.json", {"upper": [[1.0, 0.0, 1.0]], "lower": [[2.0, 0.0, 1.0]]}
        ),
        "shift_k8": put(
            "shift_k8.json",
            {"upper": [[1.0, 0.0, 1.0]], "lower": [[2.0, 0.0, 1.0]], "K": 8},
        ),
        "disk": put(
            "disk.json", {"upper": [[1.0, 0.0, 2.0]], "lower": [[1.5, 0.0, 1.0]]}
        ),
        "ml": put("ml.json", {"upper": [[1.0, 0.0, 1.0]], "lower": [[1.5, 0.0, 0.7]]}),
        "bc_entire": put(
            "bc_entire.json",
            {
                "upper": [
                    {
                        "value": {"z1": [1.5, 0.0], "z2": [1.5, 0.0]},
                        "weight": {"c1": 1.0, "c2": 1.0},
                    }
                ],
                "lower": [
                    {
                        "value": {"z1": [1.0, 0.0], "z2": [1.0, 0.0]},
                        "weight": {"c1": 1.0, "c2": 1.0},
                    }
                ],
            },
        ),
        "bc_ball": put(
            "bc_ball.json",
            {
                "upper": [
                    {
                        "value": {"z1": [1.5, 0.0], "z2": [1.5, 0.0]},
                        "weight": {"c1": 2.0, "c2": 2.0},
                    }
                ],
                "lower": [
                    {
                        "value": {"z1": [1.0, 0.0], "z2": [1.0, 0.0]},
                        "weight": {"c1": 1.0, "c2": 1.0},
                    }
                ],
            },
        ),
        "bad_syntax": str(d / "bad_syntax.json"),
        "bad_schema": put("bad_schema.json", {"upper": [[1.0, 0.0]], "lower": []}),
    }
    (d / "bad_syntax.json").write_text('{"upper": [\n  nope\n', encoding="utf-8")
    return out


def run_cli(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_fw_eval_empty_params_is_exp(files, capsys):
    code, out, _ = run_cli(capsys, "fw", "eval", "--params", files["vacuum"], "--z", "1")
    assert code == 0
    obj = json.loads(out)
    assert set(obj) == {"value", "terms", "tail_bound"}
    assert obj["value"][0] == pytest.approx(math.e, rel=1e-13)
    assert obj["value"][1] == pytest.approx(0.0, abs=1e-16)


def test_fw_eval_mittag_leffler(files, capsys):
    code, out, _ = run_cli(capsys, "fw", "eval", "--params", files["ml"], "--z", "1")
    assert code == 0
    ref = oracle_mittag_leffler(0.7, 1.5, 1.0).real
    assert json.loads(out)["value"][0] == pytest.approx(ref, rel=1e-12)


def test_fw_eval_outside_radius_exit2(files, capsys):
    code, out, err = run_cli(
        capsys, "fw", "eval", "--params", files["disk"], "--z", "0.5"
    )
    assert code == 2
    assert out == ""
    assert "domain error" in err


def test_fw_eval_overflow_exit3(files, capsys):
    code, out, err = run_cli(
        capsys, "fw", "eval", "--params", files["vacuum"], "--z", "1000"
    )
    assert code == 3
    assert out == ""
    assert "numeric failure" in err


def test_fw_radius_output(files, capsys):
    code, out, _ = run_cli(capsys, "fw", "radius", "--params", files["disk"])
    assert code == 0
    obj = json.loads(out)
    assert obj["radius"] == 0.25
    assert obj["margin"] == 0.0
    code, out, _ = run_cli(capsys, "fw", "radius", "--params", files["vacuum"])
    assert json.loads(out)["radius"] == "inf"


def test_bad_json_syntax_exit1(files, capsys):
    code, out, err = run_cli(capsys, "fw", "radius", "--params", files["bad_syntax"])
    assert code == 1
    assert out == ""
    assert "line 2" in err and "column" in err


def test_bad_schema_exit1(files, capsys):
    code, out, err = run_cli(capsys, "fw", "radius", "--params", files["bad_schema"])
    assert code == 1
    assert "$.upper[0]" in err


def test_usage_errors_exit1(files, capsys):
    assert run_cli(capsys, "fw", "eval", "--params", files["vacuum"])[0] == 1
    assert run_cli(capsys, "fw", "bogus")[0] == 1
    assert run_cli(capsys)[0] == 1
    assert run_cli(capsys, "selftest", "--only", "bogus")[0] == 1


def test_bcfw_classify_output(files, capsys):
    code, out, _ = run_cli(capsys, "bcfw", "classify", "--params", files["bc_entire"])
    assert code == 0
    obj = json.loads(out)
    assert obj["domain"] == "EntireBC"
    assert obj["v_radius"] == ["inf", "inf"]
    code, out, _ = run_cli(capsys, "bcfw", "classify", "--params", files["bc_ball"])
    obj = json.loads(out)
    assert obj["domain"] == "HyperbolicBall"
    assert obj["v_radius"] == [0.25, 0.25]
    assert isinstance(obj["boundary_abs_convergent"], bool)


def test_bcfw_eval_output(files, capsys):
    code, out, _ = run_cli(
        capsys,
        "bcfw",
        "eval",
        "--params",
        files["bc_entire"],
        "--z",
        "0.5,0,0.25,0",
    )
    assert code == 0
    value = json.loads(out)["value"]
    assert set(value) == {"z1", "z2"}
    code, _, _ = run_cli(
        capsys, "bcfw", "eval", "--params", files["bc_ball"], "--z", "0.5,0,0.1,0"
    )
    assert code == 2


def test_bcfw_region_csv(files, capsys):
    code, out, _ = run_cli(
        capsys,
        "bcfw",
        "region",
        "--params",
        files["bc_ball"],
        "--r1-max",
        "0.5",
        "--r2-max",
        "0.5",
        "--n1",
        "5",
        "--n2",
        "5",
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "z1_abs,z2_abs,inside"
    marks = {}
    for line in lines[1:]:
        r1, r2, inside = line.split(",")
        marks[(float(r1), float(r2))] = inside
    assert marks[(0.125, 0.125)] == "true"
    assert marks[(0.375, 0.125)] == "false"
    code, out, _ = run_cli(
        capsys,
        "bcfw",
        "region",
        "--params",
        files["bc_entire"],
        "--r1-max",
        "2.0",
        "--r2-max",
        "2.0",
        "--n1",
        "4",
        "--n2",
        "4",
    )
    assert all(line.endswith("true") for line in out.splitlines()[1:])


def test_cs_coeffs_output_and_k(files, capsys):
    code, out, _ = run_cli(
        capsys, "cs", "coeffs", "--params", files["shift"], "--z", "0.5", "--K", "16"
    )
    assert code == 0
    obj = json.loads(out)
    assert set(obj) == {"z", "coeffs", "tail"}
    assert obj["z"] == [0.5, 0.0]
    assert len(obj["coeffs"]) == 17
    assert obj["tail"] <= 1e-12
    # a K entry in the file wins over the flag default
    code, out, _ = run_cli(
        capsys, "cs", "coeffs", "--params", files["shift_k8"], "--z", "0.5"
    )
    assert len(json.loads(out)["coeffs"]) == 9


def test_cs_overlap_csv(files, capsys):
    code, out, _ = run_cli(
        capsys,
        "cs",
        "overlap",
        "--params",
        files["shift"],
        "--z",
        "0.8,0.1",
        "--zp",
        "0.8,0.1",
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "z_re,z_im,zp_re,zp_im,re,im,abs"
    cells = [float(c) for c in lines[1].split(",")]
    assert cells[4] == pytest.approx(1.0, abs=1e-12)
    assert cells[6] <= 1.0 + 1e-10


def test_cs_verify_pass_and_deterministic(files, capsys):
    args = ("cs", "verify", "--params", files["vacuum"], "--random", "2", "--seed", "7")
    code, out1, _ = run_cli(capsys, *args)
    assert code == 0
    lines = out1.splitlines()
    assert lines[0] == "model,check,worst,tol,pass"
    assert len(lines) == 1 + 4 * 3  # file model + 2 random, 4 checks each
    assert all(line.endswith(",pass") for line in lines[1:])
    _, out2, _ = run_cli(capsys, *args)
    assert out1 == out2


def test_measure_check_table(files, capsys):
    code, out, _ = run_cli(
        capsys, "measure", "check", "--model", files["vacuum"], "--k", "0..6"
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "k,lhs,rhs,rel_err,pass"
    assert len(lines) == 8
    for line in lines[1:]:
        k, lhs, rhs, rel_err, flag = line.split(",")
        assert float(rhs) == pytest.approx(float(math.factorial(int(k))), rel=1e-12)
        assert float(lhs) == pytest.approx(float(rhs), rel=1e-6)
        assert float(rel_err) <= 1e-6
        assert flag == "pass"


def test_measure_check_fail_exit4(files, capsys):
    code, out, _ = run_cli(
        capsys,
        "measure",
        "check",
        "--model",
        files["vacuum"],
        "--k",
        "2",
        "--tol",
        "1e-20",
    )
    assert code == 4
    assert out.splitlines()[1].endswith(",fail")


def test_nu_eval_single(files, capsys):
    code, out, _ = run_cli(
        capsys, "nu", "eval", "--model", files["vacuum"], "--zeta", "1"
    )
    assert code == 0
    obj = json.loads(out)
    assert set(obj) == {"value", "err_est", "scheme"}
    assert obj["scheme"] == "gk"
    assert obj["value"] == pytest.approx(NU_VACUUM_AT_1, rel=1e-9)
    code, out, _ = run_cli(
        capsys, "nu", "eval", "--model", files["vacuum"], "--zeta", "1", "--scheme", "ts"
    )
    assert json.loads(out)["value"] == pytest.approx(NU_VACUUM_AT_1, rel=1e-8)


def test_nu_eval_grid_monotone(files, capsys):
    code, out, _ = run_cli(
        capsys, "nu", "eval", "--model", files["shift"], "--zeta", "0.5,1,2"
    )
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert [r["zeta"] for r in rows] == [0.5, 1.0, 2.0]
    values = [r["value"] for r in rows]
    assert values[0] < values[1] < values[2]


def test_thread_pool_keeps_ordering(files, capsys, monkeypatch):
    args = ("nu", "eval", "--model", files["vacuum"], "--zeta", "0.3,0.7,1.1,2.4,5.0")
    _, serial, _ = run_cli(capsys, *args)
    monkeypatch.setenv("FW_THREADS", "4")
    _, pooled, _ = run_cli(capsys, *args)
    assert pooled == serial
    margs = ("measure", "check", "--model", files["vacuum"], "--k", "0..4")
    monkeypatch.delenv("FW_THREADS")
    _, serial_m, _ = run_cli(capsys, *margs)
    monkeypatch.setenv("FW_THREADS", "4")
    _, pooled_m, _ = run_cli(capsys, *margs)
    assert pooled_m == serial_m


def test_repeat_runs_byte_identical(files, capsys):
    for args in (
        ("fw", "eval", "--params", files["ml"], "--z", "0.7,0.2"),
        ("bcfw", "region", "--params", files["bc_ball"], "--r1-max", "0.4",
         "--r2-max", "0.4", "--n1", "6", "--n2", "3"),
        ("cs", "coeffs", "--params", files["shift"], "--z", "1.1,-0.3"),
    ):
        _, first, _ = run_cli(capsys, *args)
        _, second, _ = run_cli(capsys, *args)
        assert first == second and first.endswith("\n")


def test_print_manifest_on_stderr(files, capsys):
    base = ("fw", "radius", "--params", files["disk"])
    _, plain_out, plain_err = run_cli(capsys, *base)
    code, out, err = run_cli(capsys, "--print-manifest", *base)
    assert code == 0
    assert out == plain_out
    manifest = json.loads(err)
    assert manifest["command"] == "fw radius"
    assert manifest["params_file"] == files["disk"]
    assert manifest["output_format"] == "json"


def test_selftest_subset(capsys):
    code, out, _ = run_cli(
        capsys, "selftest", "--only", "radius-law", "--only", "nine-case-classifier"
    )
    assert code == 0
    lines = out.splitlines()
    assert sum(1 for line in lines if line.startswith("[PASS]")) == 2
    assert lines[-1].startswith("2/2 criteria passed")


def test_console_script_installed(files):
    exe = shutil.which("fwstates")
    assert exe is not None, "console script fwstates not on PATH"
    proc = subprocess.run(
        [exe, "fw", "radius", "--params", files["disk"]],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["radius"] == 0.25
