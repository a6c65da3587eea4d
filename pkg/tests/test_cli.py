import csv
import io
import json

import pytest

from oisl.cli import EXIT_CONFIG, EXIT_OK, EXIT_VERIFY, main


def rows_from(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_constellations_listing(capsys):
    assert main(["constellations"]) == EXIT_OK
    rows = {r["shell"]: r for r in rows_from(capsys.readouterr().out)}
    assert len(rows) == 13
    b1 = rows["B1"]
    assert (b1["altitude_km"], b1["inclination_deg"], b1["planes"], b1["sats_per_plane"]) == (
        "1200.0", "87.9", "36", "49")
    assert all(int(r["total"]) == int(r["planes"]) * int(r["sats_per_plane"]) for r in rows.values())


def test_user_shells(tmp_path, capsys):
    cfg = tmp_path / "shells.toml"
    cfg.write_text('[shells.X1]\naltitude_km = 600\ninclination_deg = 53\n'
                   'planes = 4\nsats_per_plane = 5\n')
    assert main(["constellations", "--config", str(cfg), "--format", "json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data == [{"shell": "X1", "altitude_km": 600.0, "inclination_deg": 53.0, "planes": 4,
                     "sats_per_plane": 5, "total": 20, "walker": "53: 20/4/0"}]
    cfg.write_text('[shells.X1]\naltitude_km = 600\n')
    assert main(["constellations", "--config", str(cfg)]) == EXIT_CONFIG


def test_feasibility_verify_and_reproducibility(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["feasibility", "--verify", "--out", str(a)]) == EXIT_OK
    assert main(["feasibility", "--out", str(b)]) == EXIT_OK
    ma = json.loads((a / "manifest.json").read_text())
    mb = json.loads((b / "manifest.json").read_text())
    assert ma["files"] == mb["files"] and len(ma["files"]) == 1
    rows = rows_from((a / "feasibility_both.csv").read_text())
    assert len(rows) == 2 * 13 * 3 * 5
    anchor = next(r for r in rows if (r["regime"], r["link"], r["shell"], r["scheme"])
                  == ("shot", "intra", "A1", "100G-QPSK"))
    assert float(anchor["staircase_dB"]) == pytest.approx(6.41, abs=0.05)


def test_feasibility_override_breaks_verification(tmp_path):
    cfg = tmp_path / "o.toml"
    cfg.write_text("[link]\ntx_power_W = 0.5\n")
    assert main(["feasibility", "--regime", "shot", "--shell", "A1", "--verify",
                 "--config", str(cfg), "--out", str(tmp_path / "o")]) == EXIT_VERIFY


@pytest.mark.parametrize("text", ["[link]\nbogus = 1\n", "[receiver]\ngain = 3\n", "x = [\n"])
def test_bad_config(tmp_path, text):
    cfg = tmp_path / "bad.toml"
    cfg.write_text(text)
    assert main(["feasibility", "--config", str(cfg), "--shell", "A1"]) == EXIT_CONFIG


def test_missing_config_and_unknown_shell():
    assert main(["feasibility", "--config", "/nonexistent.toml"]) == EXIT_CONFIG
    assert main(["doppler", "--shell", "Z9"]) == EXIT_CONFIG


def test_doppler_verify_one_shell(tmp_path):
    out = tmp_path / "d"
    assert main(["doppler", "--shell", "A1", "--link", "k-to-k", "--verify", "--series",
                 "--out", str(out), "--workers", "1"]) == EXIT_OK
    rows = rows_from((out / "doppler_extrema.csv").read_text())
    assert rows[0]["phase_factor"] == "2"
    assert float(rows[0]["delta_f_max_GHz"]) == pytest.approx(1.0837, rel=0.01)
    series = rows_from((out / "series_A1_k-to-k.csv").read_text())
    assert len(series) == 2000


def test_dsp_scenario(tmp_path):
    cfg = tmp_path / "s.toml"
    cfg.write_text('[scenario]\nformat = "QPSK"\nn_symbols = 16384\nseed = 4\n'
                   'snr_offsets_db = [0.0, 1.0, 2.0]\n'
                   '[channel]\ndelta_f0_Hz = 2e9\nlinewidth_Hz = 100e3\nrx_bandwidth_Hz = 28e9\n'
                   '[receiver]\narchitecture = "modified"\neq_preamble = 4000\n'
                   '[sweep]\nparameter = "rx_bandwidth_Hz"\nvalues = [26e9]\n')
    out = tmp_path / "o"
    assert main(["dsp", "--config", str(cfg), "--out", str(out), "--workers", "1"]) == EXIT_OK
    res = json.loads((out / "dsp_result.json").read_text())
    assert res["seed"] == 4 and res["runs"][0]["architecture"] == "modified"
    assert (out / "ber_vs_snr_modified.csv").exists()
    assert (out / "penalty_vs_rx_bandwidth_Hz_modified.csv").exists()
    cfg.write_text('[channel]\nwarp = 1\n')
    assert main(["dsp", "--config", str(cfg)]) == EXIT_CONFIG


def test_calibrate_alpha(tmp_path):
    out = tmp_path / "c"
    assert main(["calibrate-alpha", "--out", str(out)]) == EXIT_OK
    sel = json.loads((out / "alpha_selection.json").read_text())
    assert sel["selected_alpha_GHz"] == 17.0
    assert len(rows_from((out / "alpha_calibration.csv").read_text())) == 11 * 11
