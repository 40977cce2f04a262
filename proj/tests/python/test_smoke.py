import json
import math
import os
import pathlib

import pytest

import gacalc

SOURCE = pathlib.Path(os.environ.get("GACALC_SOURCE_DIR", pathlib.Path(__file__).resolve().parents[2]))


def test_evaluate_product():
    assert gacalc.evaluate("(1+2*e12)*(5-e12)", sig=(2, 0, 0)) == "( 7 )*e0+( 9 )*e12"


def test_evaluate_rational_inverse():
    out = gacalc.evaluate("inv(0.5-0.5*e1+0.5*e2+0.5*e12)", sig=(0, 2, 0), scalars="rational")
    assert "( 1/2 )*e0" in out


def test_errors_map_to_python_types():
    with pytest.raises(ValueError):
        gacalc.evaluate("a/b", sig=(2, 0, 0))
    with pytest.raises(ArithmeticError):
        gacalc.evaluate("inv(1+e1)", sig=(2, 0, 0), scalars="rational")


def test_multivector_arithmetic():
    e1 = gacalc.Multivector((2, 0, 0), [0, 1, 0, 0])
    e2 = gacalc.Multivector((2, 0, 0), [0, 0, 1, 0])
    assert (e1 * e1).coeffs == [1, 0, 0, 0]
    assert (e1 ^ e2).coeffs == [0, 0, 0, 1]
    assert (e1 | e2).coeffs == [0, 0, 0, 0]
    b = e1 ^ e2
    r = (b * (-math.pi / 4)).exp()
    assert r.coeffs[0] == pytest.approx(math.cos(math.pi / 4))
    assert r.coeffs[3] == pytest.approx(-math.sin(math.pi / 4))


def test_fk3r_against_closed_form():
    l, t = (1.0, 2.0, 0.5), (0.3, -0.2, 0.7)
    x, y, phi = gacalc.fk3r(l, t)
    a1, a2, a3 = t[0], t[0] + t[1], t[0] + t[1] + t[2]
    assert x == pytest.approx(l[0] * math.cos(a1) + l[1] * math.cos(a2) + l[2] * math.cos(a3))
    assert y == pytest.approx(l[0] * math.sin(a1) + l[1] * math.sin(a2) + l[2] * math.sin(a3))
    assert phi == pytest.approx(a3)


def test_ik6r_listing_case():
    sols = gacalc.ik6r(480, 425, 425, (561.8479, 262.7685, 455.0104))
    assert len(sols) == 2
    assert any(s[1] == pytest.approx(0.8590, abs=1e-4) and s[2] == pytest.approx(1.5040, abs=1e-4) for s in sols)
    for s in sols:
        assert s[0] == pytest.approx(0.4375, abs=1e-4)


def test_power_report_rounded_config():
    text = (SOURCE / "data" / "power_network_rounded.json").read_text()
    report = gacalc.power_report(text)
    assert "Dv2e0 = 16*s^4+2592*s^3+136080*s^2+2552384*s+15052095" in report


def test_bench_row():
    row = gacalc.bench((4, 1, 0))
    assert row["correct"]
    assert row["residual"] < 1e-9
