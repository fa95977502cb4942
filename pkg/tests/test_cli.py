import csv
import io
import math

import pytest

from ambient_swipt.cli import (
    RunConfig,
    UsageError,
    main,
    parse_config,
    parse_frequency,
    parse_power,
)
from ambient_swipt.montecarlo import CSV_HEADER, DEFAULT_SEED, DEFAULT_TRIALS
from ambient_swipt.rf import SystemParams


def test_dbm_power_flag():
    cfg = parse_config(["power-outage", "--pc", "-18dBm"])
    assert cfg.params.p_c == pytest.approx(1.585e-5, rel=1e-3)
    assert cfg.params.p_c == pytest.approx(10 ** (-4.8), rel=1e-14)


def test_dbm_noise_flag():
    assert parse_config(["power-outage", "--sigma2", "-90dBm"]).params.sigma2 == pytest.approx(1e-12, rel=1e-14)


@pytest.mark.parametrize("text,watts", [
    ("1", 1.0), ("1W", 1.0), ("15.8uW", 15.8e-6), ("15.8µW", 15.8e-6), ("3mW", 3e-3),
    ("-48dBW", 10 ** -4.8), ("0dBm", 1e-3), ("2e-3 W", 2e-3),
])
def test_parse_power(text, watts):
    assert parse_power(text) == pytest.approx(watts, rel=1e-14)


def test_frequency_to_wavelength():
    assert parse_frequency("1800MHz") == 1.8e9
    cfg = parse_config(["expected-harvest", "--freq", "1800MHz"])
    assert cfg.params.wavelength == pytest.approx(0.1666, abs=1e-4)


def test_defaults():
    cfg = parse_config(["expected-harvest"])
    assert cfg.params == SystemParams()
    p = cfg.params
    assert (p.radius, p.epsilon, p.rho, p.eta, p.alpha, p.d_a, p.rate_min, p.xi) == (5, 0.001, 0.1, 0.5, 0, 1, 0, 1)
    assert (p.g_s, p.g_a, p.g_h, p.beta, p.p_s, p.p_a, p.bandwidth) == (1.5, 1.5, 1.5, 0.3, 1, 1, 1e4)
    assert p.sigma2 == p.sigma_sp2 == pytest.approx(1e-12)
    assert p.wavelength == 0.167 and p.p_c == pytest.approx(1.5849e-5, rel=1e-4)
    assert cfg.seed == DEFAULT_SEED and cfg.trials == DEFAULT_TRIALS


def test_every_invalid_field_is_listed():
    with pytest.raises(UsageError) as exc:
        parse_config(["power-outage", "--eta", "2", "--rho", "-1", "--pc", "abc", "--alpha", "0.3"])
    msg = str(exc.value)
    for opt in ("--eta", "--rho", "--pc", "--alpha"):
        assert opt in msg


def test_usage_error_exit_status(capsys):
    assert main(["power-outage", "--eta", "2", "--rho", "-1"]) == 2
    err = capsys.readouterr().err
    assert "--eta" in err and "--rho" in err


def test_unknown_flag_exit_status():
    with pytest.raises(SystemExit) as exc:
        main(["power-outage", "--bogus", "1"])
    assert exc.value.code == 2


def test_malformed_config_file(tmp_path):
    f = tmp_path / "bad.cfg"
    f.write_text("rho 0.1\n")
    assert main(["power-outage", "--config", str(f)]) == 2
    f.write_text("colour = blue\n")
    assert main(["power-outage", "--config", str(f)]) == 2


def test_flags_override_file_override_defaults(tmp_path):
    f = tmp_path / "run.cfg"
    f.write_text("# comment\nrho = 0.3\neta = 0.7  # inline\nsigma_sp2 = -80dBm\n")
    cfg = parse_config(["power-outage", "--config", str(f), "--rho", "0.05"])
    assert cfg.params.rho == 0.05
    assert cfg.params.eta == 0.7
    assert cfg.params.sigma_sp2 == pytest.approx(1e-11)
    assert cfg.params.beta == 0.3


def test_round_trip(tmp_path):
    cfg = parse_config(["sweep", "--axis", "d_A", "--min", "0.5", "--max", "20", "--steps", "7", "--log",
                        "--friis-ha", "--m", "20", "--alpha", "-0.5", "--pc", "-17.3dBm", "--seed", "99",
                        "--metric", "transmission-outage", "--trials", "1234"])
    f = tmp_path / "cfg.txt"
    f.write_text(cfg.to_config_text())
    again = parse_config(["sweep", "--config", str(f)])
    assert again == cfg


def test_grid_values():
    assert RunConfig("sweep", min=1, max=100, steps=3, log=True).grid_values() == pytest.approx([1, 10, 100])
    assert RunConfig("sweep", min=0, max=1, steps=3).grid_values() == pytest.approx([0, 0.5, 1])
    assert RunConfig("sweep", grid="0.1,0.2").grid_values() == [0.1, 0.2]


def _read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_sweep_command_writes_csv(tmp_path, capsys):
    out = tmp_path / "fig3.csv"
    status = main(["sweep", "--axis", "rho", "--min", "0.01", "--max", "1", "--steps", "20", "--log",
                   "--metric", "expected-harvest", "--trials", "200", "-o", str(out)])
    assert status == 0
    rows = _read_csv(out)
    assert rows[0] == CSV_HEADER
    assert len(rows) == 21
    assert all(r[9] == "closed_form" for r in rows[1:])
    assert "rho=" in capsys.readouterr().out


def test_point_query_single_row(tmp_path):
    out = tmp_path / "po.csv"
    assert main(["power-outage", "--alpha", "-1", "--eta", "1", "--rho", "0.2", "--regime", "worst-case",
                 "--trials", "4096", "-o", str(out)]) == 0
    rows = _read_csv(out)
    assert len(rows) == 2
    rec = dict(zip(rows[0], rows[1]))
    # with the access point at 1 m it alone covers P_C
    assert rec["regime"] == "worst_case" and rec["case_label"] == "zero_by_theorem"
    assert float(rec["mean"]) == 0.0 == float(rec["bound_value"])
    assert main(["power-outage", "--alpha", "-1", "--eta", "1", "--rho", "0.2", "--regime", "worst-case",
                 "--da", "10", "--trials", "4096", "-o", str(out)]) == 0
    rec = dict(zip(*_read_csv(out)))
    assert rec["case_label"] == "product_bound"
    assert 0 <= float(rec["mean"]) <= 1 and 0 < float(rec["bound_value"]) < 1e-5


def test_point_query_to_stdout(capsys):
    assert main(["expected-harvest", "--trials", "50"]) == 0
    captured = capsys.readouterr()
    assert captured.out.splitlines()[0] == ",".join(CSV_HEADER)
    assert "closed form" in captured.err


def test_sample_command(tmp_path):
    out = tmp_path / "pts.csv"
    assert main(["sample", "--trials", "3", "--rho", "0.1", "-o", str(out)]) == 0
    rows = _read_csv(out)
    assert rows[0] == ["trial", "x", "y"]
    trials = {int(r[0]) for r in rows[1:]}
    assert trials <= {0, 1, 2}
    assert all(math.hypot(float(r[1]), float(r[2])) <= 5.0 for r in rows[1:])


def test_sample_is_reproducible(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        main(["sample", "--trials", "2", "--alpha", "-0.5", "--seed", "5", "-o", str(path)])
    assert a.read_bytes() == b.read_bytes()


def test_domain_error_exit_status(capsys):
    assert main(["transmission-outage", "--eta", "1", "--m", "20", "--trials", "10"]) == 4
    assert "eta" in capsys.readouterr().err


def test_io_error_exit_status(tmp_path):
    target = tmp_path / "missing" / "out.csv"
    assert main(["expected-harvest", "--trials", "10", "-o", str(target)]) == 3


def test_sweep_csv_byte_stable(tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for path, workers in zip(paths, ("1", "4")):
        main(["sweep", "--axis", "eta", "--grid", "0.2,0.5,0.8", "--metric", "power-outage", "--da", "10",
              "--trials", "5000", "--workers", workers, "-o", str(path)])
    assert paths[0].read_bytes() == paths[1].read_bytes()
