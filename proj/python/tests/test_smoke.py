import json
import math

import numpy as np
import pytest

import cns


def test_grid_and_extension():
    g = cns.Grid(16, 8, 17)
    assert g.dz == pytest.approx(1 / 16)
    x1 = np.arange(16) * 2 * math.pi / 16
    eta = np.repeat(np.cos(x1)[:, None], 8, axis=1)
    ext = cns.extend(g, eta)
    assert ext.shape == (16, 8, 17)
    y = g.y()
    profile = np.cosh(y + 1) / np.cosh(1)
    assert np.max(np.abs(ext[:, 0, :] - np.outer(np.cos(x1), profile))) < 1e-12


def test_bad_grid_raises():
    with pytest.raises(cns.CnsError):
        cns.Grid(0, 8, 17)


def test_compatible_data():
    g = cns.Grid(8, 8, 9)
    d = cns.make_compatible_data(g, 7, 0.05)
    assert d["w0"].shape == (8, 8, 9)
    assert d["eta0"].shape == (8, 8)
    ok, residuals = cns.compatibility(g, 7, 0.05)
    assert ok
    assert max(residuals.values()) <= 1e-6
    assert np.all(cns.make_compatible_data(g, 7, 0.0)["h0"] == 0)


def test_fitted_order():
    order, steps, errors = cns.mms_order("stationary", "spatial", [17, 33, 65])
    assert order >= 1.9
    assert len(errors) == 3


def test_run_gen_data_and_simulate(tmp_path):
    cfg = {"grid": {"N1": 8, "N2": 8, "Nz": 9}, "time": {"dt": 0.05, "T": 0.1}}
    assert cns.run(cfg, mode="gen-data", out=tmp_path / "gen") == 0
    g, w0 = cns.read_field(str(tmp_path / "gen" / "w0.cnsf"))
    assert (g.n1, g.n2, g.nz) == (8, 8, 9)
    assert w0.shape == (8, 8, 9)

    assert cns.run(cfg, mode="simulate", out=tmp_path / "sim") == 0
    summary = json.loads((tmp_path / "sim" / "summary.json").read_text())
    assert summary["converged"]


def test_run_reports_config_errors(tmp_path):
    with pytest.raises(cns.CnsError, match="unknown config key"):
        cns.run({"grid": {"N1": 8, "N2": 8, "Nz": 9}, "bogus": {}}, mode="simulate", out=tmp_path)
