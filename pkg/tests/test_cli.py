import json
import math

import pytest

from rashba_contact.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestQfunc:
    def test_classical_point(self, capsys):
        code, out, _ = run(capsys, "qfunc", "--alpha", "0", "--beta", "0",
                           "--z-re", "-2")
        assert code == 0
        data = json.loads(out)
        assert data["q_pp_re"] == pytest.approx(-1.0, abs=1e-12)
        assert data["q_pp_im"] == 0.0
        assert data["q_mm_re"] == pytest.approx(-1.0, abs=1e-12)

    def test_unit_imaginary(self, capsys):
        code, out, _ = run(capsys, "qfunc", "--alpha", "1", "--beta", "0.5",
                           "--z-re", "0", "--z-im", "1")
        data = json.loads(out)
        assert data["q_pp_re"] == pytest.approx(0.0, abs=1e-10)
        assert data["q_pp_im"] == pytest.approx(1.0, abs=1e-10)

    def test_det_with_coupling(self, capsys, tmp_path):
        gf = tmp_path / "g.json"
        gf.write_text('{"pp": 0.5, "mm": 0.5, "pm_re": 0.0, "pm_im": 0.0}')
        code, out, _ = run(capsys, "qfunc", "--alpha", "0", "--beta", "0",
                           "--z-re", "-2", "--gamma-file", str(gf))
        data = json.loads(out)
        assert data["det_re"] == pytest.approx(2.25, abs=1e-10)

    def test_missing_alpha_exits_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["qfunc", "--beta", "0", "--z-re", "-2"])
        assert exc.value.code == 2

    def test_band_point_exits_2(self, capsys):
        code, _, err = run(capsys, "qfunc", "--alpha", "0", "--beta", "0.5",
                           "--z-re", "-0.2")
        assert code == 2
        assert "continuous band" in err


class TestSolve:
    def test_two_channel_pair_json(self, capsys, tmp_path):
        gf = tmp_path / "g.json"
        gf.write_text('{"pp": 0.17850, "mm": 0.17850, "pm_re": 0.0, "pm_im": 0.0}')
        code, out, _ = run(capsys, "solve", "--alpha", "2", "--beta", "0.5",
                           "--gamma-file", str(gf))
        assert code == 0
        data = json.loads(out)
        es = sorted(row["E"] for row in data["discrete"])
        assert es == pytest.approx([-1.60313, -1.37956], abs=1e-3)
        assert data["sigma"] == pytest.approx(1.0625)

    def test_free_symmetric_root(self, capsys, tmp_path):
        # Gamma = v*I with omega = (v-1)/sqrt(2) = -1
        v = 1.0 - math.sqrt(2.0)
        gf = tmp_path / "g.json"
        gf.write_text(json.dumps({"pp": v, "mm": v, "pm_re": 0.0, "pm_im": 0.0}))
        code, out, _ = run(capsys, "solve", "--alpha", "0", "--beta", "0",
                           "--gamma-file", str(gf))
        data = json.loads(out)
        assert len(data["discrete"]) == 1
        assert data["discrete"][0]["E"] == pytest.approx(-1.0, abs=1e-9)

    def test_distinguished_extensions(self, capsys):
        for flag in ("--trivial", "--friedrichs"):
            code, out, _ = run(capsys, "solve", "--alpha", "1", "--beta", "0.5",
                               flag)
            assert code == 0
            data = json.loads(out)
            assert data["discrete"] == [] and data["embedded"] == []
            assert data["sigma"] == pytest.approx(0.5)

    def test_empty_spectrum_exit_zero(self, capsys, tmp_path):
        gf = tmp_path / "g.json"
        gf.write_text('{"pp": 3.0, "mm": 3.0, "pm_re": 0.0, "pm_im": 0.0}')
        code, out, _ = run(capsys, "solve", "--alpha", "0", "--beta", "0",
                           "--gamma-file", str(gf))
        assert code == 0
        assert json.loads(out)["discrete"] == []

    def test_coupling_required(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["solve", "--alpha", "0", "--beta", "0"])
        assert exc.value.code == 2

    def test_csv_round_trip(self, capsys, tmp_path):
        gf = tmp_path / "g.json"
        gf.write_text('{"pp": 0.17850, "mm": 0.17850, "pm_re": 0.0, "pm_im": 0.0}')
        code, out_json, _ = run(capsys, "solve", "--alpha", "2", "--beta", "0.5",
                                "--gamma-file", str(gf))
        code, out_csv, _ = run(capsys, "solve", "--alpha", "2", "--beta", "0.5",
                               "--gamma-file", str(gf), "--format", "csv")
        assert code == 0
        lines = out_csv.strip().splitlines()
        assert lines[0] == "regime,sigma,kind,E,residual,label"
        es_csv = sorted(float(l.split(",")[3]) for l in lines[1:]
                        if l.split(",")[2] == "discrete")
        es_json = sorted(r["E"] for r in json.loads(out_json)["discrete"])
        assert es_csv == pytest.approx(es_json, abs=0.0)

    def test_deterministic_output(self, capsys, tmp_path):
        gf = tmp_path / "g.json"
        gf.write_text('{"pp": 0.2, "mm": -0.4, "pm_re": 0.1, "pm_im": 0.05}')
        argv = ("solve", "--alpha", "0.4", "--beta", "0.5", "--gamma-file", str(gf))
        _, out1, _ = run(capsys, *argv)
        _, out2, _ = run(capsys, *argv)
        assert out1 == out2


class TestSweep:
    def test_minimal_two_rows(self, capsys):
        code, out, _ = run(capsys, "sweep", "--alpha", "0", "--beta", "0",
                           "--r", "0.0", "--c-from", "0.5", "--c-to", "1.0",
                           "--steps", "2")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("c")
        assert len(lines) == 3

    def test_zero_c_requires_allow_free(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["sweep", "--alpha", "0", "--beta", "0", "--r", "0.0",
                  "--c-from", "-1", "--c-to", "1", "--steps", "3"])
        assert exc.value.code == 2
        code, out, _ = run(capsys, "sweep", "--alpha", "0", "--beta", "0",
                           "--r", "0.0", "--c-from", "-1", "--c-to", "1",
                           "--steps", "3", "--allow-free")
        assert code == 0
        row = out.strip().splitlines()[2]   # the c = 0 row
        assert row.split(",")[0] == "0"
        assert all(cell == "" for cell in row.split(",")[1:])

    def test_large_coupling_limit(self, capsys):
        # beta defaults to the near-zero stand-in; E(c) -> -1.43923 as |c| grows
        code, out, _ = run(capsys, "sweep", "--alpha", "2", "--r", "-0.17850",
                           "--c-from=-1e3", "--c-to=-1e6", "--steps", "3",
                           "--log")
        assert code == 0
        last = out.strip().splitlines()[-1].split(",")
        energies = [float(x) for x in last[1:] if x]
        assert energies
        for e in energies:
            assert e == pytest.approx(-1.43923, abs=1e-3)

    def test_log_grid_sign_check(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["sweep", "--alpha", "0", "--beta", "0", "--r", "0.0",
                  "--c-from", "-1", "--c-to", "1", "--steps", "3", "--log"])
        assert exc.value.code == 2


class TestExpand:
    def test_diagonal_example(self, capsys, tmp_path):
        from rashba_contact import SystemParams, gamma_for_couplings
        gm = gamma_for_couplings(SystemParams(0.0, 0.5), 0.8, -0.4, 0.0)
        gf = tmp_path / "g.json"
        gf.write_text(json.dumps(gm.to_json_dict()))
        code, out, _ = run(capsys, "expand", "--alpha", "0.2", "--beta", "0.5",
                           "--gamma-file", str(gf))
        assert code == 0
        data = json.loads(out)
        assert data["roots"][0]["branch"] == "DiagonalMinus"
        assert data["roots"][0]["e0"] == pytest.approx(-0.66, abs=1e-9)
        assert not data["threshold_persists"]
        assert "gamma0" in data["coefficients"]

    def test_regime_gate(self, capsys, tmp_path):
        gf = tmp_path / "g.json"
        gf.write_text('{"pp": 0.1, "mm": 0.1, "pm_re": 0.0, "pm_im": 0.0}')
        code, _, err = run(capsys, "expand", "--alpha", "1.2", "--beta", "0.5",
                           "--gamma-file", str(gf))
        assert code == 2
        assert "regime" in err or "requires" in err


class TestVerify:
    def test_unknown_suite_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--suite", "bogus"])
        assert exc.value.code == 2

    def test_paper_suite_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "paper")
        assert code == 0
        assert "FAIL" not in out
        assert "x_nu1-at-nu-1" in out
