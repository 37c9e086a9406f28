import json
from fractions import Fraction as F

import pytest

from shiftcert.cli import main
from shiftcert.lubin import mu_m_cap_n, xi_a
from shiftcert.measures import dump_measure, measure_to_dict, moment1


@pytest.fixture()
def xi_a_file(tmp_path):
    path = tmp_path / "xi_a.json"
    dump_measure(xi_a(), path)
    return str(path)


@pytest.fixture()
def weights_file(tmp_path):
    path = tmp_path / "weights.json"
    path.write_text(
        json.dumps({"kind": "measure", "measure": measure_to_dict(xi_a())})
    )
    return str(path)


@pytest.fixture()
def bad_weights_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(
        json.dumps(
            {
                "kind": "prefix",
                "squared_weights": ["2", "1/2"],
                "tail": "repeat_last",
                "norm_bound_sq": "2",
            }
        )
    )
    return str(path)


class TestMoments:
    def test_csv_output(self, xi_a_file, capsys):
        assert main(["moments", xi_a_file, "--n-max", "3"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "n,gamma_n"
        assert lines[1] == "0,1"
        assert lines[2] == "1,1/11"
        assert lines[4] == "3,1/32"

    def test_json_output(self, xi_a_file, capsys):
        assert main(["moments", xi_a_file, "--format", "json", "--n-max", "2"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data[2] == {"n": 2, "gamma": "1/22"}

    def test_out_file(self, xi_a_file, tmp_path):
        out = tmp_path / "m.csv"
        assert main(["moments", xi_a_file, "--out", str(out)]) == 0
        assert out.read_text().startswith("n,gamma_n")

    def test_planar_measure_rejected(self, tmp_path, capsys):
        path = tmp_path / "mu.json"
        dump_measure(mu_m_cap_n(), path)
        assert main(["moments", str(path)]) == 2

    def test_missing_file(self):
        assert main(["moments", "/nonexistent.json"]) == 2


class TestFit:
    def test_round_trip(self, xi_a_file, tmp_path, capsys):
        csv = tmp_path / "m.csv"
        assert main(["moments", xi_a_file, "--n-max", "8", "--out", str(csv)]) == 0
        assert main(["fit", str(csv), "--max-atoms", "4"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data == measure_to_dict(xi_a())

    def test_too_few_moments_is_usage_error(self, tmp_path):
        csv = tmp_path / "m.csv"
        csv.write_text("n,gamma_n\n0,1\n1,1/2\n")
        assert main(["fit", str(csv), "--max-atoms", "2"]) == 2

    def test_unfittable_moments_is_math_failure(self, tmp_path, capsys):
        csv = tmp_path / "fib.csv"
        csv.write_text("0,1\n1,1\n2,2\n3,3\n4,5\n")
        assert main(["fit", str(csv), "--max-atoms", "2"]) == 1
        data = json.loads(capsys.readouterr().out)
        assert data["error"] == "NoRationalAtomsError"

    def test_non_contiguous_indices_rejected(self, tmp_path):
        csv = tmp_path / "m.csv"
        csv.write_text("0,1\n2,1/2\n3,1/4\n")
        assert main(["fit", str(csv), "--max-atoms", "1"]) == 2


class TestCheck1D:
    def test_measure_weights_pass(self, weights_file, capsys):
        assert main(["check1d", weights_file, "--order", "3"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert all(c["verdict"] == "pass" for c in data["checks"])

    def test_bad_weights_fail(self, bad_weights_file, capsys):
        assert main(["check1d", bad_weights_file, "--order", "2"]) == 1
        data = json.loads(capsys.readouterr().out)
        names = {c["check"]: c["verdict"] for c in data["checks"]}
        assert names["subnormal_necessary"] == "fail"
        assert names["agler_sums_1d"] == "fail"

    def test_backward_extension_flags(self, weights_file, tmp_path, capsys):
        level1 = tmp_path / "level1.json"
        from shiftcert.lubin import xi_a_level1

        dump_measure(xi_a_level1(), level1)
        code = main(
            [
                "check1d",
                weights_file,
                "--backext-alpha0",
                "1/11",
                "--backext-measure",
                str(level1),
            ]
        )
        assert code == 0
        data = json.loads(capsys.readouterr().out)
        assert any(c["check"] == "backward_extension_1d" for c in data["checks"])

    def test_backext_flags_must_pair(self, weights_file):
        assert main(["check1d", weights_file, "--backext-alpha0", "1/11"]) == 2

    def test_unknown_weight_kind(self, tmp_path):
        path = tmp_path / "w.json"
        path.write_text(json.dumps({"kind": "spectral"}))
        assert main(["check1d", str(path)]) == 2


class TestCheck2D:
    def test_family_commutes(self, capsys):
        assert main(["check2d", "--x", "1/5", "--window", "6x6"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["checks"][0]["check"] == "commutativity_check"

    def test_restricted_berger(self, tmp_path, capsys):
        mu = tmp_path / "mu.json"
        dump_measure(mu_m_cap_n(), mu)
        code = main(
            ["check2d", "--x", "1/5", "--restrict", "1,1", "--berger", str(mu), "--window", "5x5"]
        )
        assert code == 0

    def test_wrong_berger_fails(self, xi_a_file, tmp_path, capsys):
        mu = tmp_path / "mu.json"
        dump_measure(mu_m_cap_n(), mu)
        assert main(["check2d", "--x", "1/5", "--berger", str(mu)]) == 1

    def test_path_and_hyponormality(self, capsys):
        code = main(
            ["check2d", "--x", "1/5", "--window", "4x4", "--path", "3,2", "--hyponormal"]
        )
        assert code == 0
        data = json.loads(capsys.readouterr().out)
        checks = {c["check"] for c in data["checks"]}
        assert "path_independence_check" in checks
        assert "joint_hyponormality_window" in checks

    def test_hyponormality_fails_at_one_half(self, capsys):
        assert main(["check2d", "--x", "1/2", "--window", "3x3", "--hyponormal"]) == 1

    def test_dump_writes_weights(self, tmp_path, capsys):
        out = tmp_path / "diagram.csv"
        code = main(["check2d", "--x", "1/5", "--window", "3x3", "--dump", str(out)])
        assert code == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "k1,k2,alpha_sq,beta_sq"
        assert lines[1] == "0,0,1/11,1/5"
        assert len(lines) == 10

    def test_bad_window(self):
        assert main(["check2d", "--x", "1/5", "--window", "six"]) == 2

    def test_bad_parameter(self):
        assert main(["check2d", "--x", "0.2"]) == 2


class TestLubinCertify:
    def test_counterexample_at_one_fifth(self, capsys):
        code = main(["lubin", "certify", "--x", "1/5"])
        assert code == 1  # the pair check fails, by design
        data = json.loads(capsys.readouterr().out)
        assert data["verdicts"] == {
            "t1_subnormal": True,
            "t2_subnormal": True,
            "pair_subnormal": False,
            "sum_subnormal_certified": True,
        }
        assert data["counterexample"] is True
        assert F(data["sum_certificate"]["epsilon"]) > 0

    def test_all_green_at_the_joint_threshold(self, capsys):
        code = main(["lubin", "certify", "--x", "2/11"])
        assert code == 0
        data = json.loads(capsys.readouterr().out)
        assert all(data["verdicts"].values())
        assert data["counterexample"] is False

    def test_nonpositive_parameter(self):
        assert main(["lubin", "certify", "--x", "0"]) == 2

    def test_out_file(self, tmp_path):
        out = tmp_path / "cert.json"
        main(["lubin", "certify", "--x", "1/5", "--out", str(out)])
        assert json.loads(out.read_text())["counterexample"] is True


class TestSweep:
    def test_grid_values(self, capsys):
        code = main(
            ["sweep", "--x-min", "1/10", "--x-max", "1/5", "--x-step", "1/10", "--n-max", "1", "--k-max", "0"]
        )
        assert code == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "x,n,k,p_n"
        assert lines[1].startswith("1/10,1,0,")
        assert lines[2].startswith("1/5,1,0,")
        assert len(lines) == 3

    def test_empty_range_gives_header_only(self, capsys):
        code = main(["sweep", "--x-min", "1/2", "--x-max", "1/4", "--x-step", "1/10"])
        assert code == 0
        assert capsys.readouterr().out.strip() == "x,n,k,p_n"

    def test_bad_step(self):
        assert main(["sweep", "--x-min", "1/10", "--x-max", "1/5", "--x-step", "0"]) == 2


class TestEpsilon:
    def test_reports_the_certified_gap(self, capsys):
        assert main(["epsilon"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["strictly_positive"] is True
        assert data["pair_threshold"] == "2/11"
        assert data["n_tail"] == 101
        assert F(data["certified_x_max"]) > F(2, 11)


class TestParser:
    def test_no_command_is_usage_error(self):
        with pytest.raises(SystemExit) as info:
            main([])
        assert info.value.code == 2

    def test_unknown_command_is_usage_error(self):
        with pytest.raises(SystemExit) as info:
            main(["frobnicate"])
        assert info.value.code == 2


class TestGammaGolden:
    def test_cli_moments_agree_with_the_library(self, xi_a_file, capsys):
        main(["moments", xi_a_file, "--n-max", "6"])
        lines = capsys.readouterr().out.strip().splitlines()[1:]
        for line in lines:
            n_text, g_text = line.split(",")
            assert F(g_text) == moment1(xi_a(), int(n_text))
