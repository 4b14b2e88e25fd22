import json
import os
import subprocess
import sys

import pytest

from kwmod.cli import main
from kwmod.sweep import InvalidBound, SweepConfig, run_sweep

from test_pyramid import GOLDEN_DYNKIN, GOLDEN_SHIFTED_NUMBERED, GOLDEN_YOUNG


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_inspect_running_example(capsys):
    code, out, _ = run(capsys, "inspect", "--m", "4", "--n", "3", "--p", "5", "--r", "3,1", "--q", "2,1")
    assert code == 0
    assert "sdim p   = (17, 14)" in out
    assert "sdim p'  = (18, 17)" in out
    assert "kw bound = 5^7·2^7" in out
    assert "fail" not in out


def test_inspect_trivial_and_small(capsys):
    code, out, _ = run(capsys, "inspect", "--m", "1", "--n", "0", "--p", "3", "--r", "1", "--q", "")
    assert code == 0 and "kw bound = 3^0·2^0 = 1" in out
    code, out, _ = run(capsys, "inspect", "--m", "2", "--n", "1", "--p", "3", "--r", "2", "--q", "1")
    assert code == 0 and "kw bound = 3^1·2^1 = 6" in out


def test_inspect_json(capsys, tmp_path):
    path = tmp_path / "rep.json"
    code, _, _ = run(capsys, "inspect", "--p", "5", "--r", "3,1", "--q", "2,1", "--kind", "sl", "--json", "--out", str(path))
    assert code == 0
    data = json.loads(path.read_text(encoding="utf-8"))
    assert data["schema"] == 1
    assert data["instance"]["kind"] == "sl"
    assert data["kw_bound"] == {"p_exp": 7, "two_exp": 7}
    assert all(v == "pass" for v in data["checks"].values())


@pytest.mark.parametrize(
    "argv",
    [
        ["inspect", "--m", "4", "--n", "1", "--p", "3", "--r", "4", "--q", "1", "--kind", "sl"],
        ["inspect", "--m", "3", "--n", "1", "--p", "5", "--r", "3,1", "--q", "1"],
        ["inspect", "--p", "5", "--r", "1,2", "--q", ""],
        ["inspect", "--p", "4", "--r", "1", "--q", ""],
        ["inspect", "--p", "5", "--r", "", "--q", ""],
        ["inspect", "--r", "1"],
        ["levi", "--p", "5", "--s", "0,1"],
        ["levi", "--p", "5", "--s", "0,1|0", "--block", "0:2|1"],
        ["sweep", "--max-size", "0"],
        ["sweep", "--primes", "2"],
    ],
)
def test_input_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_render_golden(capsys):
    pair = ["--r", "3,1", "--q", "2,1"]
    assert run(capsys, "render", *pair, "--which", "dynkin")[1] == GOLDEN_DYNKIN + "\n"
    assert run(capsys, "render", *pair, "--which", "shifted", "--numbers")[1] == GOLDEN_SHIFTED_NUMBERED + "\n"
    assert run(capsys, "render", *pair, "--which", "young")[1] == GOLDEN_YOUNG + "\n"


def test_render_svg(capsys, tmp_path):
    path = tmp_path / "p.svg"
    code, _, _ = run(capsys, "render", "--r", "3,1", "--q", "2,1", "--which", "shifted", "--svg", str(path))
    assert code == 0 and path.read_text(encoding="utf-8").startswith("<svg")


def test_levi(capsys):
    code, out, _ = run(capsys, "levi", "--p", "5", "--s", "0,1|0")
    assert code == 0
    assert "sdim l = (3, 2), sdim u = (1, 1)" in out
    assert "kw bound = 5^1·2^1 = 10" in out
    code, out, _ = run(capsys, "levi", "--p", "5", "--s", "0,0,0,0|0,0,0", "--block", "0:3,1|2,1", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["kw_bound"] == {"p_exp": 7, "two_exp": 7}
    assert data["metadata"]["d_prime"] == [14, 14]


def test_sweep_small(capsys, tmp_path):
    path = tmp_path / "sweep.json"
    code, out, _ = run(capsys, "sweep", "--max-size", "4", "--primes", "3,5", "--levi-random", "3", "--out", str(path))
    assert code == 0
    summary = json.loads(out)
    assert summary["instances"] > 0 and summary["failed"] == 0 and summary["levi_failed"] == 0
    data = json.loads(path.read_text(encoding="utf-8"))
    assert data["schema"] == 1 and data["summary"] == summary


def test_sweep_config_bound():
    with pytest.raises(InvalidBound):
        SweepConfig(max_size=0)


def test_sweep_records_sl_skip():
    report = run_sweep(SweepConfig(max_size=5, primes=(3,), kinds=("sl",)))
    skipped = [r for r in report["instances"] if r["status"] == "skipped"]
    assert any(r["instance"]["m"] == 4 and r["instance"]["n"] == 1 for r in skipped)
    assert all(r["reason"] == "p | m-n" for r in skipped)
    assert all((r["instance"]["m"] - r["instance"]["n"]) % 3 == 0 for r in skipped)
    assert report["summary"]["failed"] == 0


def test_sweep_deterministic():
    cfg = SweepConfig(max_size=3, primes=(3, 5), seed=4, levi_random=5)
    assert run_sweep(cfg) == run_sweep(cfg)


def test_module_entry_and_backend_flag():
    env = dict(os.environ, KWMOD_NO_NUMBA="1")
    code = "from kwmod import _kernels; print(_kernels.active_backend())"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
    res = subprocess.run(
        [sys.executable, "-m", "kwmod", "inspect", "--p", "3", "--r", "2", "--q", "1"],
        env=env,
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0 and "kw bound = 3^1·2^1 = 6" in res.stdout
