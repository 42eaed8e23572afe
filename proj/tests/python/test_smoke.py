import csv
import json
import math

import pytest

import qframe

TLS = {
    "name": "py-smoke",
    "device": {"kind": "tls", "omega_q": 0.75, "g": 0.03},
    "kappa": 7.2e-3,
    "drive": {"amplitude": 1.0e-2, "omega_d": 1.0},
    "frame": "q_frame",
    "n_max": 4,
    "integrator": {"t_end": 20.0, "sample_dt": 5.0},
}


def test_version():
    assert qframe.version().startswith("qframe ")


def test_normalize_fills_defaults():
    c = qframe.normalize_config(TLS)
    assert c["integrator"]["rtol"] == 1e-8
    assert c["initial_branch"] == "g"
    assert qframe.normalize_config(c) == c


def test_config_error_names_field():
    bad = dict(TLS, kappa=-1.0)
    with pytest.raises(qframe.ConfigError, match="kappa"):
        qframe.normalize_config(bad)
    with pytest.raises(ValueError, match="drive.bogus"):
        qframe.normalize_config(dict(TLS, drive={"bogus": 1}))


def test_simulate_columns():
    cols = qframe.simulate(TLS)
    assert list(cols)[:2] == ["t", "kappa_t"]
    assert cols["t"] == [0.0, 5.0, 10.0, 15.0, 20.0]
    assert all(v is None for v in cols["transmon_occupation"])
    assert max(abs(v) for v in cols["trace_error"]) < 1e-7


def test_run_writes_artifacts(tmp_path):
    rec = qframe.run(TLS, tmp_path)
    assert rec["status"] == "ok"
    for name in rec["artifacts"]:
        assert (tmp_path / name).exists()
    with open(tmp_path / "trajectory.csv") as f:
        header = next(csv.reader(f))
    assert ",".join(header) == (
        "t,kappa_t,alpha_re,alpha_im,photon_number,real_quadrature,abs_c_u,transmon_occupation,trace_error"
    )


def test_spectrum_summary():
    s = qframe.dispersive_summary(dict(TLS, n_max=40))
    assert abs(s["n_crit"] - 17.36) < 0.01
    assert s["chi"] > 0


def test_unbounded_critical_photon_number():
    s = qframe.dispersive_summary(dict(TLS, device={"kind": "tls", "omega_q": 0.75, "g": 0.0}))
    assert s["n_crit"] == "unbounded"
    assert s["chi"] == 0.0


def test_sweep(tmp_path):
    recs = qframe.sweep(TLS, "n_max", [3, 5], tmp_path)
    assert [r["status"] for r in recs] == ["ok", "ok"]
    index = json.loads((tmp_path / "sweep_index.json").read_text())
    assert [r["value"] for r in index["runs"]] == [3, 5]
    assert qframe.sweep(TLS, "n_max", [], tmp_path / "empty") == []


def test_presets():
    names = qframe.preset_names()
    assert names == ["fig%d" % n for n in range(2, 11)]
    for n in names:
        p = qframe.preset(n)
        assert p["entries"]


def test_p_displacement_limit():
    # resonant drive, long times: |P| -> 2E/kappa
    v = qframe.p_displacement(1e-2, 1.0, 7.2e-3, 5000.0)
    assert math.isclose(abs(v), 2e-2 / 7.2e-3, rel_tol=1e-6)
