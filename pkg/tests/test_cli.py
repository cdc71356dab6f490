import json

import pytest

from breather_bench.cli import main


def write_config(tmp_path, payload, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


SMALL_VERIFY = {
    "grid": {"L": 30.0, "N": 1024},
    "verify": {"pairs": [[1.0, 1.0]], "times": [0.0]},
}

SMALL_STABILITY = {
    "grid": {"L": 30.0, "N": 1024},
    "evolution": {"dt": 5e-4, "t_end": 0.25, "output_stride": 100},
    "stability": {"eta": 1e-3, "seed": 2, "k_max": 8},
}


class TestUsage:
    def test_unknown_subcommand(self, capsys):
        assert main(["frobnicate", "--out", "x"]) == 2

    def test_missing_out(self):
        assert main(["verify"]) == 2

    def test_help_exits_zero(self):
        assert main(["--help"]) == 0

    def test_bad_config_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{nope")
        assert main(["verify", "--config", str(path), "--out", str(tmp_path)]) == 2

    def test_unknown_tolerance_key(self, tmp_path):
        cfg = write_config(tmp_path, {"tolerances": {"no_such": 1.0}})
        assert main(["verify", "--config", cfg, "--out", str(tmp_path)]) == 2


class TestVerify:
    def test_small_verify_passes(self, tmp_path):
        cfg = write_config(tmp_path, SMALL_VERIFY)
        out = tmp_path / "out"
        assert main(["verify", "--config", cfg, "--out", str(out)]) == 0
        report = json.loads((out / "report.json").read_text())
        assert report["ok"]
        names = {c["name"] for c in report["checks"]}
        assert {"mass", "energy", "elliptic", "xt_identity", "kernel_x1"} <= names

    def test_thresholds_carry_provenance(self, tmp_path):
        payload = dict(SMALL_VERIFY)
        payload["tolerances"] = {"mass": 1e-9}
        cfg = write_config(tmp_path, payload)
        out = tmp_path / "out"
        assert main(["verify", "--config", cfg, "--out", str(out)]) == 0
        report = json.loads((out / "report.json").read_text())
        assert report["thresholds"]["mass"] == {"value": 1e-9, "source": "config"}
        assert report["thresholds"]["energy"]["source"] == "default"

    def test_failing_tolerance_exits_one(self, tmp_path):
        payload = dict(SMALL_VERIFY)
        payload["tolerances"] = {"mass": 1e-16}
        cfg = write_config(tmp_path, payload)
        out = tmp_path / "out"
        assert main(["verify", "--config", cfg, "--out", str(out)]) == 1
        report = json.loads((out / "report.json").read_text())
        assert not report["ok"]


class TestSpectrum:
    def test_spectrum_run(self, tmp_path):
        cfg = write_config(
            tmp_path, {"grid": {"L": 30.0, "N": 1024},
                       "spectrum": {"n_points": 1024, "k": 8, "time": 0.0}}
        )
        out = tmp_path / "out"
        assert main(["spectrum", "--config", cfg, "--out", str(out)]) == 0
        lines = (out / "eigenvalues.csv").read_text().splitlines()
        assert lines[0] == "index,lambda"
        assert len(lines) == 9
        report = json.loads((out / "report.json").read_text())
        assert report["results"]["n_negative"] == 1
        assert report["results"]["kernel_count"] == 2
        assert report["results"]["essential_edge_theory"] == 4.0


class TestEvolve:
    def test_short_evolve(self, tmp_path):
        cfg = write_config(
            tmp_path,
            {
                "grid": {"L": 30.0, "N": 1024},
                "evolution": {"dt": 2e-4, "t_end": 0.1, "output_stride": 250},
            },
        )
        out = tmp_path / "out"
        assert main(["evolve", "--config", cfg, "--out", str(out)]) == 0
        series = (out / "error_series.csv").read_text().splitlines()
        assert series[0] == "t,z_h2,x1,x2,M,E,F,H"
        assert len(series) == 4  # header + 3 outputs (t = 0, 0.05, 0.1)
        snapshots = (out / "snapshots.csv").read_text().splitlines()
        assert snapshots[0] == "t,x,u"


class TestStability:
    def test_eta_cap_is_config_error(self, tmp_path):
        payload = dict(SMALL_STABILITY)
        payload["stability"] = dict(payload["stability"], eta=0.2)
        cfg = write_config(tmp_path, payload)
        assert main(["stability", "--config", cfg, "--out", str(tmp_path)]) == 2

    def test_short_stability_run(self, tmp_path):
        cfg = write_config(tmp_path, SMALL_STABILITY)
        out = tmp_path / "out"
        assert main(["stability", "--config", cfg, "--out", str(out)]) == 0
        report = json.loads((out / "report.json").read_text())
        assert report["ok"]
        assert report["results"]["sup_ratio"] is not None
        series = (out / "error_series.csv").read_text().splitlines()
        assert series[0] == "t,z_h2,x1,x2,M,E,F,H"
        for line in series[1:]:
            for cell in line.split(","):
                float(cell)  # every cell is a plain parseable number

    def test_numerical_fault_exits_three(self, tmp_path):
        payload = {
            "grid": {"L": 30.0, "N": 1024},
            "evolution": {"dt": 0.5, "t_end": 10.0, "output_stride": 1},
            "stability": {"eta": 0.05, "seed": 1, "k_max": 200},
        }
        cfg = write_config(tmp_path, payload)
        assert main(["stability", "--config", cfg, "--out", str(tmp_path)]) == 3

    def test_reports_are_deterministic(self, tmp_path):
        cfg = write_config(tmp_path, SMALL_STABILITY)
        out1, out2 = tmp_path / "a", tmp_path / "b"
        assert main(["stability", "--config", cfg, "--out", str(out1)]) == 0
        assert main(["stability", "--config", cfg, "--out", str(out2)]) == 0
        for name in ("report.json", "error_series.csv", "snapshots.csv"):
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


class TestSoliton:
    def test_soliton_suite(self, tmp_path):
        cfg = write_config(tmp_path, {"soliton": {"speeds": [1.0]}})
        out = tmp_path / "out"
        assert main(["soliton", "--config", cfg, "--out", str(out)]) == 0
        report = json.loads((out / "report.json").read_text())
        assert report["ok"]
        assert report["results"]["expansion_slope"] == pytest.approx(3.0, abs=0.2)
