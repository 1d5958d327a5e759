"""Command-line surface: payloads, determinism, exit codes, custom bases."""

import json
import math

import pytest

from conetorsion import cli
from conetorsion.basemanifold import circle, torus2
from conetorsion.errors import ConvergenceError, ValidationError
from conetorsion.torsion import ConeOverS1Config, theorem_main

import oracles


def run_json(argv):
    text, code = cli.run(argv)
    assert code == 0, text
    return json.loads(text)


def exit_code(argv):
    """Exit code as the console script would report it (stderr captured)."""
    return cli.main(argv)


# ---------------------------------------------------------------------------
# torsion disc / cone.
# ---------------------------------------------------------------------------

def test_disc_command_value():
    payload = run_json(["torsion", "disc", "--nu", "1", "--radius", "1"])
    want = 0.5 * (-math.log(math.pi) - 1.0)
    assert payload["log_torsion"] == pytest.approx(want, abs=1e-15)
    assert payload["source"] == "closed-form"
    assert payload["nu"] == 1.0 and payload["radius"] == 1.0


def test_cone_s1_matches_disc():
    cone = run_json(["torsion", "cone", "--base", "s1", "--scale", "2"])
    disc = run_json(["torsion", "disc", "--nu", "2", "--radius", "1"])
    assert abs(cone["log_torsion"] - disc["log_torsion"]) <= 1e-10
    assert cone["parity"] == "even"
    assert cone["base_id"].startswith("circle")
    assert set(cone["per_degree"].keys()) == {"0"}
    assert cone["error_estimate"] >= 0.0


def test_cone_torus_payload():
    payload = run_json(["torsion", "cone", "--base", "torus2", "--scale", "2"])
    assert payload["parity"] == "odd"
    assert payload["harmonic_term"] == pytest.approx(-0.5 * math.log(3.0),
                                                     abs=1e-15)
    assert payload["error_estimate"] <= 1e-8
    # odd-parity sum runs over k = 0 .. n/2 - 1 = {0} for the torus
    assert set(payload["per_degree"].keys()) == {"0"}


def test_cone_rejects_sub_unit_scale():
    with pytest.raises(ValidationError, match="scaling"):
        cli.run(["torsion", "cone", "--base", "s1", "--scale", "0.5"])
    assert exit_code(["torsion", "cone", "--base", "s1", "--scale", "0.5"]) == 2


def test_cone_lattice_flag():
    square = run_json(["torsion", "cone", "--base", "torus2", "--scale", "2"])
    explicit = run_json(["torsion", "cone", "--base", "torus2", "--scale", "2",
                         "--lattice",
                         "6.283185307179586,0,0,6.283185307179586"])
    assert explicit["log_torsion"] == pytest.approx(square["log_torsion"],
                                                    abs=1e-12)
    # lattice is a torus-only flag
    assert exit_code(["torsion", "cone", "--base", "s1", "--scale", "2",
                      "--lattice", "1,0,0,1"]) == 2


# ---------------------------------------------------------------------------
# zeros.
# ---------------------------------------------------------------------------

def test_zeros_dirichlet():
    payload = run_json(["zeros", "--kind", "j", "--nu", "1", "--count", "5"])
    assert payload["kind"] == "j"
    assert len(payload["zeros"]) == 5
    assert payload["zeros"][0] == pytest.approx(oracles.j_zero(1.0, 1), rel=1e-13)
    assert payload["max_residual"] <= 1e-10
    assert "alpha" not in payload


def test_zeros_mixed_echoes_alpha():
    payload = run_json(["zeros", "--kind", "mixed", "--nu", "2", "--alpha", "1",
                        "--count", "3"])
    assert payload["alpha"] == 1.0
    refined = oracles.mixed_zero_refine(2.0, 1.0, payload["zeros"][0])
    assert payload["zeros"][0] == pytest.approx(refined, rel=1e-12)


def test_zeros_alpha_misuse_is_validation_error():
    assert exit_code(["zeros", "--kind", "j", "--nu", "1", "--alpha", "0.5",
                      "--count", "3"]) == 2


# ---------------------------------------------------------------------------
# zeta.
# ---------------------------------------------------------------------------

def test_zeta_exact_circle():
    payload = run_json(["zeta", "--base", "s1", "--scale", "2", "--degree", "0"])
    assert payload["source"] == "closed-form"
    assert payload["deriv0"] == pytest.approx(
        2.0 * (0.5 * math.log(2.0) - 0.5 * math.log(2.0 * math.pi)), abs=1e-14)
    assert payload["zeta0"] == -1.0
    assert payload["residues"]["1"] == pytest.approx(1.0, abs=1e-15)
    assert payload["alpha"] == 0.0
    assert payload["error_estimate"] == 0.0


def test_zeta_exact_circle_with_shift():
    payload = run_json(["zeta", "--base", "s1", "--scale", "2", "--degree", "0",
                        "--shift", "0.5"])
    want = 2.0 * (math.log(2.0) * 0.75 + oracles.hurwitz_zeta_prime0(1.25))
    assert payload["shift"]["deriv0_shifted"] == pytest.approx(want, abs=1e-13)
    assert payload["shift"]["error_estimate"] == 0.0


def test_zeta_numeric_torus_with_shift():
    payload = run_json(["zeta", "--base", "torus2", "--scale", "2",
                        "--degree", "0", "--shift", "0.5"])
    assert payload["source"] == "numeric"
    assert payload["alpha"] == 0.5
    assert payload["error_estimate"] <= 1e-8
    assert payload["shift"]["error_estimate"] <= 1e-8
    # frequency-side residues: Res(1) = 0 and Res(2) = pi/2 for the flat
    # square torus at scale 2 (twice the q-side residue at half the index)
    assert payload["residues"]["1"] == pytest.approx(0.0, abs=1e-9)
    assert payload["residues"]["2"] == pytest.approx(math.pi / 2.0, abs=1e-9)


# ---------------------------------------------------------------------------
# olver.
# ---------------------------------------------------------------------------

def test_olver_order_two_exact_payload():
    payload = run_json(["olver", "--order", "2"])
    assert payload["order"] == 2 and payload["max_order"] == 12
    d = {row["t_power"]: row["coefficient"] for row in payload["D"]}
    assert d == {2: "1/16", 4: "-3/8", 6: "5/16"}
    m = {row["t_power"]: row["alpha_coefficients"] for row in payload["M"]}
    assert m == {2: ["-3/16", "1/2", "-1/2"],
                 4: ["5/8", "-1/2"],
                 6: ["-7/16"]}


def test_olver_order_limit():
    assert exit_code(["olver", "--order", "13"]) == 2
    assert exit_code(["olver", "--order", "0"]) == 2


# ---------------------------------------------------------------------------
# modeldet.
# ---------------------------------------------------------------------------

def test_modeldet_closed_only():
    payload = run_json(["modeldet", "--nu", "0.5", "--alpha", "inf"])
    assert payload["log_det"] == pytest.approx(math.log(2.0), abs=1e-14)
    assert payload["alpha"] == "inf"
    assert payload["source"] == "closed-form"
    assert "log_det_numeric" not in payload


def test_modeldet_numeric_dual_route():
    payload = run_json(["modeldet", "--nu", "1.5", "--alpha", "0", "--numeric"])
    assert payload["source"] == "closed-form+numeric"
    assert abs(payload["difference"]) <= 1e-7
    assert abs(payload["difference"]) <= payload["error_estimate"] + 1e-10


def test_modeldet_singular_and_invalid():
    assert exit_code(["modeldet", "--nu", "2", "--alpha", "-2"]) == 2
    assert exit_code(["modeldet", "--nu", "2", "--alpha", "5"]) == 2


# ---------------------------------------------------------------------------
# Output formats and determinism.
# ---------------------------------------------------------------------------

def test_json_output_is_byte_deterministic():
    a, _ = cli.run(["torsion", "cone", "--base", "torus2", "--scale", "2"])
    b, _ = cli.run(["torsion", "cone", "--base", "torus2", "--scale", "2"])
    assert a == b
    c, _ = cli.run(["zeros", "--kind", "j", "--nu", "2.7", "--count", "64"])
    d, _ = cli.run(["zeros", "--kind", "j", "--nu", "2.7", "--count", "64"])
    assert c == d


def test_json_floats_round_trip():
    text, code = cli.run(["torsion", "disc", "--nu", "3", "--radius", "2"])
    assert code == 0
    payload = json.loads(text)
    direct = theorem_main(ConeOverS1Config(radius=2.0, nu_angle=3.0))
    # '%.17g' serialization is lossless for doubles
    assert payload["log_torsion"] == direct


def test_json_keys_are_sorted():
    text, _ = cli.run(["torsion", "cone", "--base", "s1", "--scale", "2"])
    payload = json.loads(text)
    assert list(payload.keys()) == sorted(payload.keys())


def test_table_format():
    text, code = cli.run(["torsion", "disc", "--nu", "1", "--radius", "1",
                          "--format", "table"])
    assert code == 0
    assert "log_torsion" in text
    with pytest.raises(json.JSONDecodeError):
        json.loads(text)
    text2, code2 = cli.run(["torsion", "cone", "--base", "torus2", "--scale",
                            "2", "--format", "table"])
    assert code2 == 0
    assert "per_degree.0" in text2


def test_tolerance_flag_validation():
    assert exit_code(["torsion", "disc", "--nu", "1", "--radius", "1",
                      "--tolerance", "1e-13"]) == 2
    assert exit_code(["torsion", "disc", "--nu", "1", "--radius", "1",
                      "--tolerance", "1e-3"]) == 2


def test_tight_tolerance_on_numeric_route_exits_3():
    # the torus assembly carries a ~5e-12 error estimate: demanding 1e-12
    # must fail loudly with the convergence exit code
    with pytest.raises(ConvergenceError):
        cli.run(["torsion", "cone", "--base", "torus2", "--scale", "2",
                 "--tolerance", "1e-12"])
    assert exit_code(["torsion", "cone", "--base", "torus2", "--scale", "2",
                      "--tolerance", "1e-12"]) == 3


def test_command_config_validation():
    with pytest.raises(ValidationError):
        cli.CommandConfig(subcommand="zeta", flags={}, tolerance=1e-13)
    with pytest.raises(ValidationError):
        cli.CommandConfig(subcommand="zeta", flags={}, output_format="yaml")
    cfg = cli.CommandConfig(subcommand="zeta", flags={})
    assert cfg.tolerance == 1e-8 and cfg.deterministic


# ---------------------------------------------------------------------------
# Custom bases through the CLI.
# ---------------------------------------------------------------------------

def test_custom_base_round_trip(tmp_path):
    blob = circle(2.0).as_custom_mapping()
    path = tmp_path / "circle_listing.json"
    path.write_text(json.dumps(blob))
    payload = run_json(["torsion", "cone", "--base", f"custom:{path}"])
    closed = theorem_main(ConeOverS1Config(radius=1.0, nu_angle=2.0))
    assert payload["error_estimate"] <= 1e-8
    assert abs(payload["log_torsion"] - closed) <= 1e-7
    assert abs(payload["log_torsion"] - closed) <= payload["error_estimate"] + 1e-10


def test_custom_base_rejects_scale_flag(tmp_path):
    blob = circle(2.0).as_custom_mapping()
    path = tmp_path / "circle_listing.json"
    path.write_text(json.dumps(blob))
    assert exit_code(["torsion", "cone", "--base", f"custom:{path}",
                      "--scale", "2"]) == 2


def test_sparse_custom_listing_fails_honestly(tmp_path):
    # a short torus listing cannot support the continuation: convergence error
    blob = torus2(2.0).as_custom_mapping()
    path = tmp_path / "torus_listing.json"
    path.write_text(json.dumps(blob))
    assert exit_code(["torsion", "cone", "--base", f"custom:{path}"]) == 3


# ---------------------------------------------------------------------------
# main() wrapper.
# ---------------------------------------------------------------------------

def test_main_exit_codes_and_streams(capsys):
    assert cli.main(["torsion", "disc", "--nu", "1", "--radius", "1"]) == 0
    out = capsys.readouterr()
    json.loads(out.out)
    assert out.err == ""

    assert cli.main(["modeldet", "--nu", "2", "--alpha", "-2"]) == 2
    out = capsys.readouterr()
    assert out.out == ""
    assert out.err.startswith("error: ")


def test_selftest_tol_validation():
    assert exit_code(["selftest", "--tol", "1e-3"]) == 2
