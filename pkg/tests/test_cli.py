import csv
import io
import json
import math
from pathlib import Path

import numpy as np
import pytest
from scipy.integrate import trapezoid

from lindblad_osc.cli import main, parse_sweep
from lindblad_osc.errors import ConfigError

DATA = Path(__file__).parent / "data"
THERMAL = "lambda = 0.2\nbath_temperature = 0.91023922662683739\n"


@pytest.fixture
def write(tmp_path):
    def _write(text, name="run.cfg"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_golden_evolve(capsys):
    code, out, _ = run(capsys, "evolve", "--config", str(DATA / "golden.cfg"))
    assert code == 0
    assert out == (DATA / "golden_evolve.csv").read_text(encoding="utf-8")


def test_golden_values_are_physical():
    table = rows((DATA / "golden_evolve.csv").read_text(encoding="utf-8"))
    for row in table:
        t = float(row["t"])
        # symmetric thermal bath: sigma_qq = 1 - exp(-2 lambda t) / 2
        assert float(row["sigma_qq"]) == pytest.approx(1 - 0.5 * math.exp(-0.4 * t), rel=1e-14)
        q = math.exp(-0.2 * t) * (math.sqrt(2) * math.cos(t) + math.sqrt(0.5) * math.sin(t))
        assert float(row["mean_q"]) == pytest.approx(q, rel=1e-13, abs=1e-15)


def test_evolve_is_byte_stable(capsys, write):
    path = write(THERMAL + "t_max = 7\nmu = 0.1\nx20 = -0.3\n")
    first = run(capsys, "evolve", "--config", path)[1]
    second = run(capsys, "evolve", "--config", path)[1]
    assert first == second


def test_evolve_rows(capsys, write):
    code, out, _ = run(capsys, "evolve", "--config", write(THERMAL + "t_max = 50\n"))
    table = rows(out)
    assert code == 0
    assert list(table[0]) == ["t", "mean_q", "mean_p", "sigma_qq", "sigma_pp", "sigma_pq",
                              "delta", "nu", "entropy", "t_eff", "purity"]
    assert len(table) == 501
    first, last = table[0], table[-1]
    assert (float(first["nu"]), float(first["entropy"]), float(first["purity"])) == (0.0, 0.0, 1.0)
    assert float(last["sigma_qq"]) == pytest.approx(1.0, abs=1e-3)
    assert float(last["t_eff"]) == pytest.approx(0.910239, abs=1e-3)
    for row in table:
        assert float(row["delta"]) >= 0.25 - 1e-12
        assert 0 < float(row["purity"]) <= 1 + 1e-12


def test_evolve_json(capsys, write):
    code, out, _ = run(capsys, "evolve", "--config", write(THERMAL + "t_max = 1\noutput_format = json\n"))
    records = json.loads(out)
    assert code == 0 and len(records) == 11 and records[0]["purity"] == 1.0


def test_out_file(capsys, write, tmp_path):
    target = tmp_path / "series.csv"
    code, out, _ = run(capsys, "evolve", "--config", write(THERMAL + "t_max = 1\n"), "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text(encoding="utf-8").startswith("t,mean_q")


def test_validate(capsys, write):
    code, out, _ = run(capsys, "validate", "--config", write(THERMAL + "t_max = 1\n"))
    doc = json.loads(out)
    assert code == 0 and doc["valid"] is True
    code, out, _ = run(capsys, "validate", "--config", write("lambda = 1\nt_max = 1\nd_pp = 0.1\nd_qq = 0.1\n"))
    assert code == 2 and json.loads(out)["valid"] is False


def test_violation_stops_evolve(capsys, write):
    code, out, err = run(capsys, "evolve", "--config", write("lambda = 1\nt_max = 1\nd_pp = 0.1\nd_qq = 0.1\n"))
    assert code == 2 and out == "" and "line 4" in err


def test_config_errors(capsys, write, tmp_path):
    assert run(capsys, "evolve", "--config", write("mu = 1.5\nomega = 1.0\n"))[0] == 1
    assert run(capsys, "evolve", "--config", write(THERMAL + "t_max = 1\nfoo = 2\n"))[0] == 1
    assert run(capsys, "evolve", "--config", str(tmp_path / "missing.cfg"))[0] == 1


def test_asymptote(capsys, write):
    code, out, _ = run(capsys, "asymptote", "--config", write(THERMAL + "t_max = 1\n"))
    doc = json.loads(out)
    assert code == 0
    assert doc["sigma_qq"] == pytest.approx(1.0, rel=1e-12)
    assert doc["s"] == pytest.approx(0.5, rel=1e-12)
    assert doc["entropy"] == pytest.approx(1.5 * math.log(1.5) + 0.5 * math.log(2), rel=1e-12)


def test_wigner(capsys, write):
    code, out, _ = run(capsys, "wigner", "--config", write(THERMAL + "t_max = 3\n"), "--t", "2", "--grid", "41")
    data = np.loadtxt(io.StringIO(out), delimiter=",", skiprows=1)
    assert code == 0 and data.shape == (41 * 41, 3)
    q = np.unique(data[:, 0])
    p = np.unique(data[:, 1])
    w = data[:, 2].reshape(41, 41)
    assert np.all(w > 0)
    assert trapezoid(trapezoid(w, p, axis=1), q) == pytest.approx(1.0, abs=1e-6)


def test_sweep_table(capsys, write):
    code, out, _ = run(capsys, "evolve", "--config", write(THERMAL + "t_max = 1\n"), "--sweep", "x10=0:1:3")
    table = rows(out)
    assert code == 0 and list(table[0])[0] == "x10"
    assert sorted({row["x10"] for row in table}) == ["0", "0.5", "1"]
    assert len(table) == 3 * 11


def test_sweep_json(capsys, write, monkeypatch):
    monkeypatch.setenv("LINDBLAD_OSC_THREADS", "2")
    code, out, _ = run(capsys, "asymptote", "--config", write(THERMAL + "t_max = 1\n"), "--sweep", "lambda=0.2:0.6:3")
    doc = json.loads(out)
    assert code == 0 and [entry["lambda"] for entry in doc] == [0.2, 0.4, 0.6]
    assert all("sigma_qq" in entry["result"] for entry in doc)


def test_sweep_spec():
    assert parse_sweep("t_max=1:2:3") == ("t_max", [1.0, 1.5, 2.0])
    for bad in ("t_max", "t_max=1:2", "t_max=1:2:0"):
        with pytest.raises(ConfigError):
            parse_sweep(bad)


def test_oracle_check_truncation(capsys, write):
    text = THERMAL + "t_max = 5\nx10 = 2\nfock_dim = 10\noracle_fp = false\noracle_moments = false\n"
    code, out, _ = run(capsys, "oracle-check", "--config", write(text))
    assert code == 4
    assert "TRUNCATION" in out and "increase fock_dim" in out


def test_oracle_check_fail(capsys, write, tmp_path):
    # a coarse step that passes step halving but misses the 1e-8 agreement
    text = THERMAL + "t_max = 20\node_dt = 0.07\noracle_fock = false\noracle_fp = false\n"
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "oracle-check", "--config", write(text), "--out", str(target))
    assert code == 3
    doc = json.loads(target.read_text(encoding="utf-8"))
    statuses = {c["name"]: c["status"] for c in doc["checks"]}
    assert statuses["moment_ode_means"] == "FAIL"
    assert statuses["pure_start"] == "PASS"


def test_oracle_check_default_thermal(capsys, write):
    code, out, _ = run(capsys, "oracle-check", "--config", write(THERMAL + "t_max = 50\n"))
    assert code == 0, out
    lines = out.strip().splitlines()
    assert len(lines) >= 15 and all(line.rstrip().endswith("PASS") or "PASS  (" in line for line in lines)


def test_output_path_key(capsys, write, tmp_path):
    target = tmp_path / "from_config.csv"
    code, out, _ = run(capsys, "evolve", "--config", write(THERMAL + f"t_max = 1\noutput_path = {target}\n"))
    assert code == 0 and out == ""
    assert target.read_text(encoding="utf-8").startswith("t,mean_q")


def test_unwritable_output(capsys, write, tmp_path):
    code, _, err = run(capsys, "evolve", "--config", write(THERMAL + "t_max = 1\n"),
                       "--out", str(tmp_path / "no" / "such" / "dir.csv"))
    assert code == 1 and "cannot write" in err
