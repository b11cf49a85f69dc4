import json

import numpy as np
import pytest

from ghdense.cli import main

from conftest import circle_space


@pytest.fixture
def two_point_files(tmp_path):
    x = tmp_path / "x.csv"
    y = tmp_path / "y.csv"
    x.write_text("0,1\n1,0\n")
    y.write_text("0,2\n2,0\n")
    return str(x), str(y)


@pytest.fixture
def circle_files(tmp_path):
    ang = 2.0 * np.pi * np.arange(64) / 64
    pts = tmp_path / "circle.csv"
    pts.write_text("".join(f"{float(np.cos(a))!r},{float(np.sin(a))!r}\n" for a in ang))
    target = tmp_path / "target.csv"
    target.write_text("".join(f"{k},{float(np.sin(a))!r}\n" for k, a in enumerate(ang)))
    return str(pts), str(target)


class TestValidate:
    def test_valid_matrix(self, tmp_path, capsys):
        path = tmp_path / "m.csv"
        path.write_text("0,1\n1,0\n")
        assert main(["validate", str(path)]) == 0
        assert "ok: 2 points" in capsys.readouterr().out

    def test_asymmetric_matrix_exit_2(self, tmp_path, capsys):
        path = tmp_path / "m.csv"
        path.write_text("0,1\n2,0\n")
        assert main(["validate", str(path)]) == 2
        err = capsys.readouterr().err
        assert "Asymmetric(0,1)" in err


class TestGh:
    def test_two_point_spaces(self, two_point_files, capsys):
        x, y = two_point_files
        assert main(["gh", x, y]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0] == "value 1.0"
        assert out[1] == "forward 0,1"
        assert out[2] == "backward 0,1"

    def test_bnb_matches(self, two_point_files, capsys):
        x, y = two_point_files
        assert main(["gh", x, y, "--method", "bnb"]) == 0
        assert capsys.readouterr().out.splitlines()[0] == "value 1.0"

    def test_json_output(self, two_point_files, tmp_path, capsys):
        x, y = two_point_files
        out_file = tmp_path / "gh.json"
        assert main(["gh", x, y, "--json", str(out_file)]) == 0
        capsys.readouterr()
        doc = json.loads(out_file.read_text())
        assert doc["value"] == 1.0


class TestGh0:
    def test_certificate_output(self, two_point_files, tmp_path, capsys):
        x, y = two_point_files
        fx = tmp_path / "fx.csv"
        fx.write_text("0,0.0\n1,0.0\n")
        gy = tmp_path / "gy.csv"
        gy.write_text("0,0.5\n1,0.5\n")
        assert main(["gh0", x, str(fx), y, str(gy)]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["value"] == max(
            1.0, 0.5
        )  # metric gap 1 dominates the value offset

    def test_malformed_function_exit_2(self, two_point_files, tmp_path, capsys):
        x, y = two_point_files
        fx = tmp_path / "fx.csv"
        fx.write_text("0,0.0\n")  # missing index 1
        gy = tmp_path / "gy.csv"
        gy.write_text("0,0.5\n1,0.5\n")
        assert main(["gh0", x, str(fx), y, str(gy)]) == 2
        assert "missing value" in capsys.readouterr().err


class TestNetFit:
    def test_exact_mode(self, tmp_path, capsys):
        m = tmp_path / "m.csv"
        grid = np.linspace(0.0, 1.0, 12)
        rows = [",".join(repr(float(abs(a - b))) for b in grid) for a in grid]
        m.write_text("\n".join(rows) + "\n")
        t = tmp_path / "t.csv"
        t.write_text("".join(f"{k},{float(np.sin(5 * v))!r}\n" for k, v in enumerate(grid)))
        net_json = tmp_path / "net.json"
        assert main(["net-fit", str(m), str(t), "--json", str(net_json)]) == 0
        out = capsys.readouterr().out
        assert "units 12" in out
        sup_error = float(out.split("sup_error ")[1])
        assert sup_error <= 1e-6
        doc = json.loads(net_json.read_text())
        assert len(doc["units"]) == 12

    def test_lsq_mode_deterministic(self, tmp_path, capsys):
        m = tmp_path / "m.csv"
        grid = np.linspace(0.0, 1.0, 10)
        rows = [",".join(repr(float(abs(a - b))) for b in grid) for a in grid]
        m.write_text("\n".join(rows) + "\n")
        t = tmp_path / "t.csv"
        t.write_text("".join(f"{k},{float(v)!r}\n" for k, v in enumerate(grid)))
        assert main(["net-fit", str(m), str(t), "--mode", "lsq", "--units", "5", "--seed", "7"]) == 0
        first = capsys.readouterr().out
        assert main(["net-fit", str(m), str(t), "--mode", "lsq", "--units", "5", "--seed", "7"]) == 0
        assert capsys.readouterr().out == first


class TestDensity:
    def test_circle_certificate_passes(self, circle_files, tmp_path, capsys):
        pts, target = circle_files
        cert_file = tmp_path / "cert.json"
        code = main(
            ["density", pts, target, "--epsilon", "0.25", "--json", str(cert_file)]
        )
        assert code == 0
        doc = json.loads(cert_file.read_text())
        assert doc["pass"] is True
        assert doc["bound"] < 0.25
        printed = json.loads(capsys.readouterr().out)
        assert printed == doc

    def test_malformed_points_exit_2(self, tmp_path, capsys):
        pts = tmp_path / "pts.csv"
        pts.write_text("0,0\n0,zebra\n")
        target = tmp_path / "t.csv"
        target.write_text("0,0\n1,0\n")
        assert main(["density", str(pts), str(target), "--epsilon", "0.5"]) == 2
        assert "pts.csv:2" in capsys.readouterr().err


class TestStudy:
    def test_three_epsilons(self, circle_files, tmp_path, capsys):
        pts, target = circle_files
        out_csv = tmp_path / "study.csv"
        code = main(
            [
                "study",
                pts,
                target,
                "--epsilons",
                "0.5,0.25",
                "--csv",
                str(out_csv),
            ]
        )
        assert code == 0
        text = out_csv.read_text()
        lines = text.strip().splitlines()
        assert lines[0] == "epsilon,net_size,fit_error,bound,pass,millis"
        assert len(lines) == 3
        assert all(",true," in ln for ln in lines[1:])


class TestProperties:
    def test_small_run_passes(self, capsys):
        assert main(["properties", "--cases", "5", "--seed", "1"]) == 0
        out = capsys.readouterr().out
        assert out.count("ok ") == 11
        assert "FAIL" not in out


class TestDeterminism:
    def test_gh0_output_byte_identical(self, two_point_files, tmp_path, capsys):
        x, y = two_point_files
        fx = tmp_path / "fx.csv"
        fx.write_text("0,0.125\n1,-0.25\n")
        gy = tmp_path / "gy.csv"
        gy.write_text("0,0.5\n1,0.75\n")
        main(["gh0", x, str(fx), y, str(gy)])
        first = capsys.readouterr().out
        main(["gh0", x, str(fx), y, str(gy)])
        assert capsys.readouterr().out == first
