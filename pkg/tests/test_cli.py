import json
import math

import pytest

from conic_envelope.cli import main, parse_complex


@pytest.mark.parametrize(
    "text, value",
    [
        ("0.618", 0.618),
        ("0", 0),
        ("0.7+1i", 0.7 + 1j),
        ("1.5-0.8i", 1.5 - 0.8j),
        ("0.3-0.3I", 0.3 - 0.3j),
        ("-0.3i", -0.3j),
        ("+2i", 2j),
        ("1e-3-2.5e1i", 0.001 - 25j),
        (" 0.3 − 0.3I ", 0.3 - 0.3j),
    ],
)
def test_parse_complex(text, value):
    assert parse_complex(text) == value


@pytest.mark.parametrize("text", ["", "i", "0.7+i", "1+2j", "abc", "1..2", "1+2i+3"])
def test_parse_complex_rejects(text):
    with pytest.raises(ValueError, match="invalid complex literal"):
        parse_complex(text)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_inside(capsys):
    code, out, _ = run(capsys, "solve", "--a", "0", "--b", "0.618", "--theta", "0")
    assert code == 0
    data = json.loads(out)
    assert data["good"] is True
    assert any(abs(r["re"] - 1) < 1e-12 and abs(r["im"]) < 1e-12 for r in data["roots"])


def test_solve_equilateral(capsys):
    code, out, _ = run(capsys, "solve", "--a", "0", "--b", "0", "--theta", "0")
    assert code == 0
    assert json.loads(out)["weights"] == pytest.approx([1 / 3] * 3, abs=1e-14)


def test_solve_lambda_degrees(capsys):
    code, out, _ = run(capsys, "solve", "--a", "0", "--b", "0", "--lambda-deg", "90")
    assert code == 0
    assert json.loads(out)["theta"] == pytest.approx(math.pi / 2)


def test_solve_focus_on_circle(capsys):
    code, _, err = run(capsys, "solve", "--a", "1", "--b", "0.5", "--theta", "0")
    assert code == 1
    assert "unit circle" in err


def test_solve_bad_lambda(capsys):
    code, out, _ = run(capsys, "solve", "--a", "0.7+1i", "--b=1.5-0.8i", "--theta", "0")
    assert code == 2
    data = json.loads(out)
    assert data == {"good": False, "reason": "off_circle", "theta": 0.0}


def test_parse_error_exit_code(capsys):
    code = None
    with pytest.raises(SystemExit) as info:
        main(["conic", "--a", "zz", "--b", "0"])
    assert info.value.code == 1
    assert "'zz'" in capsys.readouterr().err


def test_conic_commands(capsys):
    code, out, _ = run(capsys, "conic", "--a", "0", "--b", "0.618")
    data = json.loads(out)
    assert code == 0 and data["kind"] == "ellipse"
    assert data["s"] == pytest.approx(1.0) and data["eccentricity"] == pytest.approx(0.618)
    _, out, _ = run(capsys, "conic", "--a", "0", "--b", "0")
    data = json.loads(out)
    assert data["kind"] == "circle" and data["eccentricity"] == 0
    _, out, _ = run(capsys, "conic", "--a", "0.3-0.3I", "--b", "1.2+0.2i")
    data = json.loads(out)
    assert data["kind"] == "hyperbola" and data["eccentricity"] > 1
    assert list(data) == sorted(data)


def test_good_lambda_full_circle(capsys):
    for b in ("0.618", "0"):
        code, out, _ = run(capsys, "good-lambda", "--a", "0", "--b", b)
        assert code == 0
        assert json.loads(out) == [{"theta_hi": pytest.approx(2 * math.pi), "theta_lo": 0.0}]


def test_good_lambda_outside(capsys):
    code, out, _ = run(capsys, "good-lambda", "--a", "0.7+1i", "--b=1.5-0.8i")
    assert code == 0
    (arc,) = json.loads(out)
    assert arc["theta_lo"] == pytest.approx(2.937023271869, abs=1e-8)
    assert arc["theta_hi"] == pytest.approx(4.305993775019, abs=1e-8)
    assert set(arc["boundary_lo"]) == {"theta_star", "double_root", "separation", "simple_root"}


def test_envelope_writes_files(capsys, tmp_path):
    out = tmp_path / "fig2b.svg"
    code, stdout, _ = run(capsys, "envelope", "--a", "0.3-0.3i", "--b", "1.2+0.2i", "--count", "40", "--out", str(out))
    assert code == 0
    assert out.read_text().count("<polyline") == 2
    assert len((tmp_path / "fig2b.csv").read_text().splitlines()) == 41


def test_envelope_io_error(capsys, tmp_path):
    code, _, err = run(capsys, "envelope", "--a", "0", "--b", "0.618", "--count", "3", "--out", str(tmp_path / "missing" / "x.svg"))
    assert code == 1


def test_envelope_count_check(capsys, tmp_path):
    code, _, _ = run(capsys, "envelope", "--a", "0", "--b", "0.618", "--count", "0", "--out", str(tmp_path / "x.svg"))
    assert code == 1


def test_verify_fixed_foci(capsys):
    code, out, _ = run(capsys, "verify", "--a", "0", "--b", "0.618", "--samples", "360")
    assert code == 0
    assert "FAIL" not in out


def test_verify_hyperbola_sign_line(capsys):
    code, out, _ = run(capsys, "verify", "--a", "0.3-0.3i", "--b", "1.2+0.2i", "--samples", "100")
    assert code == 0
    assert "sign(m1m2m3) = −1: 100/100" in out


def test_verify_random(capsys):
    code, out, _ = run(capsys, "verify", "--samples", "200", "--seed", "42")
    assert code == 0, out


def test_config_file_accepted(capsys, tmp_path):
    cfg = tmp_path / "tol.cfg"
    cfg.write_text("# defaults, spelled out\ncircle = 1e-9\nnewton_max_iter = 50\n")
    code, _, _ = run(capsys, "--config", str(cfg), "verify", "--a", "0", "--b", "0.618", "--samples", "5")
    assert code == 0


def test_verify_reports_violation(capsys, monkeypatch):
    import conic_envelope.verify as verify
    from conic_envelope.envelope import conic_descriptor
    from conic_envelope.inversive import FociPair

    wrong = conic_descriptor(FociPair(0, 0.5))
    monkeypatch.setattr(verify, "conic_descriptor", lambda foci: wrong)
    code, out, _ = run(capsys, "verify", "--a", "0", "--b", "0.618", "--samples", "5")
    assert code == 3
    assert "[FAIL] conic membership" in out
    assert "violation in conic membership of zeta: a=0j b=(0.618+0j) theta=" in out


def test_verify_needs_both_foci(capsys):
    code, _, _ = run(capsys, "verify", "--a", "0")
    assert code == 1


def test_bad_config(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("no_such_key = 1\n")
    code, _, err = run(capsys, "--config", str(cfg), "conic", "--a", "0", "--b", "0")
    assert code == 1 and "no_such_key" in err
