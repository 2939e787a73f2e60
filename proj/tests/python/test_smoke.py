import math
import os
import subprocess

import numpy as np
import pytest

import blowup_lab as bl


def test_admissibility_examples():
    assert bl.validate_assumptions(3, 2.0, 0.0, 1.0)["theorem_applies"]
    r = bl.validate_assumptions(3, 4.0, 0.0, 1.0)
    assert r["strict_required"] and r["theorem_applies"]
    assert not bl.validate_assumptions(1, 1.0, 0.0, 1.0)["theorem_applies"]
    assert not bl.validate_assumptions(4, 2.0, 1.0, 0.5)["theorem_applies"]
    assert bl.power_case(4.0, 3) == "HighPower"
    assert bl.condition_A2(1, 100.0)


def test_exponents_match_closed_form():
    t = bl.exponent_table(3, 2.0, 40.0)
    assert t["mu1"] == pytest.approx(1 - 0.5 - 1 / 80)
    assert t["mu2"] == pytest.approx(-0.28125)
    assert bl.exponent_table(3, 2.0)["mu1"] == pytest.approx(0.5)
    assert bl.min_admissible_k(1, 2.0, [2.0, 4.0, math.inf]) == 6.0


def test_profile_values():
    assert bl.profile_value(1, 2.0, 0.0, 1.0, 4.0, -1.0, 0.0) == pytest.approx(2 ** -0.5)
    u = bl.profile_value(1, 2.0, 1.0, 1.0, 4.0, -1.0, 0.0)
    assert abs(u) == pytest.approx(2 ** -0.5)
    assert np.angle(u) == pytest.approx(0.5 * math.log(2))
    with pytest.raises(ValueError):
        bl.profile_value(1, 2.0, 0.0, 1.0, 4.0, 0.5, 0.0)


def test_scaling_fit():
    times = [-(10 ** (-i / 7)) for i in range(8)]
    fit = bl.verify_scaling(1, 2.0, 0.0, 1.0, 6.0, "lp", times)
    assert fit["fitted_slope"] == pytest.approx(fit["predicted_slope"], rel=1e-3)


def test_gaussian_norm_and_power_diff():
    n = bl.gaussian_norms("cartesian", 1, 513, 10.0)
    assert n["l2"] == pytest.approx((math.pi / 2) ** 0.25, rel=1e-11)
    b = bl.power_diff_bound(2 + 0j, 1 + 0j, 2.0, 0)
    assert b["lhs"] == pytest.approx(3.0)
    assert b["holder"] is None


def test_evolve_conserves_mass_for_real_lambda():
    out = bl.evolve_gaussian(1, 2.0, 1.0, 0.0, "cartesian", 256, 20.0, 0.5, 1e-3, 0.1, True)
    assert isinstance(out["final"], np.ndarray)
    assert out["final"].dtype == np.complex128
    assert max(out["l2"]) - min(out["l2"]) < 1e-12
    assert out["report"]["relative_l2_drift"] < 1e-12


def test_backward_evolve_only():
    with pytest.raises(ValueError):
        bl.evolve_gaussian(1, 2.0, 0.0, 1.0, "cartesian", 256, 20.0, 0.5, 1e-3, 0.1)


def test_config_round_trip_and_errors():
    text = "# c\n[params]\n N=1\nalpha = 2 # a\nlambda_re = 0\nlambda_im = 1\n"
    assert bl.serialize_config(text) == bl.normalize_config_text(text)
    assert bl.read_params(text)["lambda_im"] == 1.0
    with pytest.raises(bl.ConfigError):
        bl.read_params("[params]\nN = 1\nalpha = 2\nlambda_re = 0\n")


@pytest.mark.skipif("BLOWUP_LAB_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_exit_codes(tmp_path):
    cli = os.environ["BLOWUP_LAB_CLI"]
    good = tmp_path / "good.toml"
    good.write_text("[params]\nN = 1\nalpha = 2\nlambda_re = 0\nlambda_im = 1\n")
    bad = tmp_path / "bad.toml"
    bad.write_text("[params]\nN = 1\nalpha = 2\nlambda_re = 0\n")
    assert subprocess.run([cli, "check-params", "--config", str(good)], capture_output=True).returncode == 0
    r = subprocess.run([cli, "check-params", "--config", str(bad)], capture_output=True, text=True)
    assert r.returncode == 2
    assert "lambda_im" in r.stderr
